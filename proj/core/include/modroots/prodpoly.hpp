#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "modroots/numeric.hpp"

namespace modroots {

// Coefficients of the k-th cyclotomic polynomial, constant term first.
std::vector<BigInt> cyclotomic_polynomial(unsigned k);

// Element of Z[x] / Phi_k(x), x standing for a primitive k-th root of unity.
class CycInt {
 public:
  explicit CycInt(unsigned k);
  // Reduces sum_e c_e x^e (any length) modulo Phi_k.
  static CycInt reduce(unsigned k, const std::vector<BigInt>& coeffs);
  static CycInt root_power(unsigned k, std::uint64_t e);

  unsigned order() const { return k_; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  bool is_integer() const;
  bool is_zero() const;

  CycInt operator+(const CycInt& other) const;
  CycInt operator-(const CycInt& other) const;
  CycInt operator*(const CycInt& other) const;
  bool operator==(const CycInt& other) const = default;

 private:
  unsigned k_;
  std::vector<BigInt> coeffs_;  // length deg Phi_k
};

using Exponent4 = std::array<unsigned, 4>;

struct CycPoly {
  unsigned k = 0;
  std::map<Exponent4, CycInt> terms;  // nonzero coefficients only
};

struct IntPoly {
  std::map<Exponent4, BigInt> terms;  // nonzero coefficients only

  static IntPoly variable(unsigned index);
  static IntPoly constant(const BigInt& c);

  // -1 for the zero polynomial.
  long degree() const;
  bool homogeneous() const;

  IntPoly operator+(const IntPoly& other) const;
  IntPoly operator-(const IntPoly& other) const;
  IntPoly operator-() const;
  IntPoly operator*(const IntPoly& other) const;
  bool operator==(const IntPoly& other) const = default;

  BigInt evaluate(const std::array<BigInt, 4>& x) const;
  std::uint64_t evaluate_mod(const std::array<std::uint64_t, 4>& x, std::uint64_t m) const;

  // "e1 e2 e3 e4 coefficient" per line, exponents ascending lexicographically.
  std::string to_text() const;
  static IntPoly from_text(const std::string& text);
};

enum class ProductRoute { Grouped, Full };

struct ProdPolyOptions {
  unsigned max_k = 5;
  // Also expand the k^3 linear factors and require agreement.
  unsigned cross_check_max_k = 3;
};

// G_k = prod over (w1, w2, w3) in U_k^3 of (w1 X1 + w2 X2 - w3 X3 - X4).
CycPoly expand_Gk(unsigned k, ProductRoute route, const ProdPolyOptions& options = {});

// F_k with G_k(X) = F_k(X1^k, X2^k, X3^k, X4^k).
IntPoly construct_Fk(unsigned k, const ProdPolyOptions& options = {});

BigInt evaluate_Fk(const IntPoly& F, const std::array<BigInt, 4>& n);
BigInt evaluate_Fk(const IntPoly& F, const std::array<BigInt, 4>& n, const BigInt& m);  // result in [0, m)

struct ZeroCountOptions {
  std::uint64_t work_budget = 20'000'000;  // N^4 evaluations
  unsigned threads = 1;
};

// T_k(N) = #{ n in [1, N]^4 : F_k(n) = 0 }.
BigInt count_Tk_zeros(unsigned k, std::uint64_t N, const ZeroCountOptions& options = {});
BigInt count_zeros(const IntPoly& F, std::uint64_t N, const ZeroCountOptions& options = {});

// T(1), ..., T(Nmax) from a single pass.
std::vector<BigInt> zero_count_profile(const IntPoly& F, std::uint64_t Nmax,
                                       const ZeroCountOptions& options = {});

}  // namespace modroots
