#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "modroots/modular.hpp"
#include "modroots/numeric.hpp"

namespace modroots {

// Multiset of rationals in [0, 1).
class PointMultiset {
 public:
  PointMultiset() = default;
  // Throws InvalidParameter for points outside [0, 1).
  explicit PointMultiset(std::vector<Rational> points);

  void add(const Rational& p);
  std::size_t size() const { return points_.size(); }
  // Sorted ascending.
  const std::vector<Rational>& points() const;

  // "numerator denominator multiplicity" per distinct point, ascending.
  std::string to_text() const;

 private:
  mutable std::vector<Rational> points_;
  mutable bool sorted_ = true;
};

// The interval [alpha, beta) at which the supremum is attained. Limit
// configurations are flagged: alpha_plus means alpha -> alpha+ (so alpha
// itself is excluded), beta_plus means beta -> beta+ (beta included).
struct DiscrepancyWitness {
  Rational alpha = 0;
  Rational beta = 1;
  bool alpha_plus = false;
  bool beta_plus = false;
  bool excess = false;  // count above expectation
};

struct DiscrepancyResult {
  Rational value = 0;
  DiscrepancyWitness witness;
};

// sup over 0 <= alpha < beta <= 1 of |#{p in [alpha, beta)} - (beta - alpha) #P|.
DiscrepancyResult discrepancy(const PointMultiset& P);

struct GammaResult {
  PointMultiset points;  // x / q
  // (x, p) with x^2 == p (mod q), one per point, ascending by (x, p).
  std::vector<std::pair<Residue, std::uint64_t>> certificates;
  DiscrepancyResult discrepancy;
};

// { x / q : x^2 == p (mod q), p prime <= P }, with multiplicity.
GammaResult gamma_qP(const PrimeModulus& q, std::uint64_t P);

// Gamma_q(P) / gamma_bound(q, P).
double gamma_ratio(const PrimeModulus& q, std::uint64_t P);

}  // namespace modroots
