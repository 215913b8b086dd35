#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modroots/numeric.hpp"

namespace modroots {

using IntVec = std::vector<std::int64_t>;

// Moduli and coordinates in this module are kept below 2^31 so that every
// intermediate product fits in 128 bits.
inline constexpr std::uint64_t kLatticeModulusCap = std::uint64_t{1} << 31;

// { n in Z^d : a_1 n_1 + ... + a_d n_d == 0 (mod q) }, d in {2, 3}.
class CongruenceLattice {
 public:
  // Throws InvalidParameter on bad dimension or gcd(a_i, q) != 1.
  static CongruenceLattice make(IntVec coeffs, std::uint64_t q);

  unsigned dimension() const { return static_cast<unsigned>(coeffs_.size()); }
  const IntVec& coeffs() const { return coeffs_; }  // reduced into [0, q)
  std::uint64_t modulus() const { return q_; }

  bool contains(std::span<const std::int64_t> n) const;

  // Rows (q, 0, 0), (c_2, 1, 0), (c_3, 0, 1) with c_i = -a_i / a_1 mod q.
  std::vector<IntVec> basis() const;

 private:
  CongruenceLattice(IntVec coeffs, std::uint64_t q) : coeffs_(std::move(coeffs)), q_(q) {}
  IntVec coeffs_;
  std::uint64_t q_;
};

// { x : |x_i| <= w_i }.
struct BoxBody {
  std::vector<Rational> half_widths;

  unsigned dimension() const { return static_cast<unsigned>(half_widths.size()); }
  Rational volume() const;
  bool degenerate() const;  // some w_i == 0
  bool contains(std::span<const std::int64_t> x) const;
};

struct LatticeOptions {
  // Limit on enumerated coefficient vectors per pass; rows for counting.
  std::uint64_t work_budget = 200'000'000;
};

// #(L ∩ B), origin included.
BigInt count_points(const CongruenceLattice& L, const BoxBody& B, const LatticeOptions& options = {});

struct MinimaResult {
  bool degenerate = false;  // body has an empty interior; minima undefined
  std::vector<Rational> lambdas;
  std::vector<IntVec> witnesses;  // first nonzero coordinate positive
};

// Minima of L with respect to B under the norm max_i |v_i| / w_i.
MinimaResult successive_minima(const CongruenceLattice& L, const BoxBody& B,
                               const LatticeOptions& options = {});

// L* = { m / q : m == lambda * a (mod q) for some integer lambda }. Points
// are handled through their numerators m.
class DualLattice {
 public:
  explicit DualLattice(const CongruenceLattice& L);

  std::uint64_t denominator() const { return q_; }
  // Balanced numerators of lambda * a.
  IntVec generator(std::int64_t lambda) const;
  bool contains_numerators(std::span<const std::int64_t> m) const;
  bool contains(std::span<const Rational> x) const;
  // Rows (1, a_2/a_1, a_3/a_1), (0, q, 0), (0, 0, q).
  std::vector<IntVec> basis() const;

 private:
  IntVec coeffs_;
  std::uint64_t q_;
};

// Minima of L* with respect to B* = { x : sum w_i |x_i| <= 1 }. Witnesses
// are numerator vectors.
MinimaResult dual_minima(const CongruenceLattice& L, const BoxBody& B,
                         const LatticeOptions& options = {});

struct GeometryReport {
  MinimaResult primal;
  MinimaResult dual;
  BigInt points;

  bool ordered = true;
  // 1 / (lambda_1 ... lambda_d) <= (d! / 2^d) Vol(B) / q
  Rational minkowski_lhs, minkowski_rhs;
  bool minkowski = true;
  // #(L ∩ B) <= prod (2j / lambda_j + 1)
  Rational counting_rhs;
  bool counting = true;
  // lambda_j lambda*_{d-j+1} for j = 1..d, each <= d!
  std::vector<Rational> transference;
  bool transference_ok = true;

  bool degenerate() const { return primal.degenerate; }
  bool holds() const { return degenerate() || (ordered && minkowski && counting && transference_ok); }
  // Smallest rhs / lhs over the inequalities.
  double slack() const;
};

GeometryReport verify_geometry(const CongruenceLattice& L, const BoxBody& B,
                               const LatticeOptions& options = {});

struct TrichotomyWitness {
  std::int64_t lambda;
  std::int64_t l, m, n;
};

struct TrichotomyResult {
  BigInt K;
  MinimaResult minima;
  bool degenerate = false;
  bool case_i = false;
  bool case_ii = false;
  bool case_iii = false;
  std::optional<TrichotomyWitness> witness;

  bool any() const { return case_i || case_ii || case_iii; }
  std::string cases() const {  // e.g. "i+iii", or "none"
    std::string s;
    for (auto [on, name] : {std::pair{case_i, "i"}, std::pair{case_ii, "ii"}, std::pair{case_iii, "iii"}})
      if (on) s += (s.empty() ? "" : "+") + std::string(name);
    return s.empty() ? "none" : s;
  }
};

// Lattice a l + b m + c n == 0 (mod q) against the box |l| <= N, |m| <= M,
// |n| <= L. Any of L, M, N equal to zero gives a degenerate result with
// case (ii) false.
TrichotomyResult trichotomy_check(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::int64_t L,
                                  std::int64_t M, std::int64_t N, std::uint64_t q,
                                  const LatticeOptions& options = {});

}  // namespace modroots
