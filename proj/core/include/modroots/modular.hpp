#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "modroots/indicator_set.hpp"
#include "modroots/numeric.hpp"

namespace modroots {

// ---------------------------------------------------------------------------
// Word-size modular arithmetic. All inputs must already be reduced mod m.

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  const std::uint64_t s = a + b;
  return (s >= m || s < a) ? s - m : s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m);

// Inverse of a mod m; throws InvalidParameter when gcd(a, m) != 1.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

// Reduces a signed integer into [0, m).
inline std::uint64_t reduce_signed(std::int64_t a, std::uint64_t m) {
  const __int128 r = static_cast<__int128>(a) % static_cast<__int128>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

// Representative of a in (-m/2, m/2].
inline std::int64_t balanced_lift(std::uint64_t a, std::uint64_t m) {
  return a > m / 2 ? static_cast<std::int64_t>(a) - static_cast<std::int64_t>(m)
                   : static_cast<std::int64_t>(a);
}

// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::uint64_t n);

// Distinct prime factors of n in ascending order (trial division).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// Smallest generator of F_q^*.
std::uint64_t primitive_root(std::uint64_t q);

// ---------------------------------------------------------------------------

class PrimeModulus {
 public:
  // Throws InvalidParameter unless q is prime.
  static PrimeModulus make(std::uint64_t q);

  std::uint64_t value() const { return q_; }
  bool certified() const { return certified_; }
  bool odd() const { return q_ != 2; }

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  PrimeModulus(std::uint64_t q, bool certified) : q_(q), certified_(certified) {}
  std::uint64_t q_;
  bool certified_;
};

// Upper limit on hi for primes_in; sieving primes stay below 2^20.
inline constexpr std::uint64_t kSieveCapacity = std::uint64_t{1} << 40;
// Widest [lo, hi] window primes_in will materialise.
inline constexpr std::uint64_t kSieveWindowCapacity = std::uint64_t{1} << 32;

// Primes in the closed range [lo, hi], ascending. Segmented sieve.
std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi);

inline constexpr std::uint64_t kDefaultRootTableCap = std::uint64_t{1} << 26;

// For every v in Z_q, the x in Z_q with j * x^k == v (mod q). Stored in
// compressed buckets; each x appears in exactly one bucket.
class ResidueMap {
 public:
  ResidueMap(Residue j, unsigned k, const PrimeModulus& q,
             std::uint64_t table_cap = kDefaultRootTableCap);

  std::span<const std::uint32_t> bucket(Residue v) const {
    return {xs_.data() + offsets_[v], xs_.data() + offsets_[v + 1]};
  }
  std::size_t bucket_size(Residue v) const { return offsets_[v + 1] - offsets_[v]; }

  Residue j() const { return j_; }
  unsigned k() const { return k_; }
  const PrimeModulus& modulus() const { return q_; }

 private:
  Residue j_;
  unsigned k_;
  PrimeModulus q_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> xs_;
};

// Both square roots of a mod q (or {0}, or empty), ascending. Tonelli-Shanks.
std::vector<Residue> sqrt_mod(Residue a, const PrimeModulus& q);

// { x in Z_q : x^k == a }, ascending. Exhaustive table scan below
// table_cap; above it only k = 2 is supported (via sqrt_mod).
std::vector<Residue> kth_roots(Residue a, unsigned k, const PrimeModulus& q,
                               std::uint64_t table_cap = kDefaultRootTableCap);

// { x in F_q^* : j x^k mod q in {1, ..., N} }. For N >= q every nonzero
// residue is in the interval's image.
IndicatorSet preimage_set(Residue j, unsigned k, std::uint64_t N, const PrimeModulus& q);

// ---------------------------------------------------------------------------
// Characters of F_q for odd prime q.

inline constexpr double kComplexTolerance = 1e-9;

class CharacterTable {
 public:
  explicit CharacterTable(const PrimeModulus& q);

  const PrimeModulus& modulus() const { return q_; }
  // Legendre symbol; chi(0) = 0.
  int chi(Residue a) const { return chi_[a % q_.value()]; }
  // 1 for q = 1 mod 4, i for q = 3 mod 4.
  std::complex<double> eps() const { return eps_; }
  // exp(2 pi i x / q).
  std::complex<double> e(Residue x) const;

 private:
  PrimeModulus q_;
  std::vector<signed char> chi_;
  std::vector<std::complex<double>> roots_;
  std::complex<double> eps_;
};

struct GaussSum {
  std::complex<double> value;   // closed form
  std::complex<double> direct;  // term-by-term summation
  bool closed_form = false;     // the two agree within kComplexTolerance
};

// sum_{x in F_q} e_q(b x^2 + h x) for odd prime q and b != 0.
GaussSum gauss_sum(Residue b, Residue h, const CharacterTable& table);
GaussSum gauss_sum(Residue b, Residue h, const PrimeModulus& q);

}  // namespace modroots
