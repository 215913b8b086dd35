#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "modroots/indicator_set.hpp"
#include "modroots/numeric.hpp"

namespace modroots {

struct ShiftSystem {
  std::vector<Residue> shifts;
  IndicatorSet members;  // A ∩ (A - s_1) ∩ ... ∩ (A - s_l)
};

ShiftSystem shift_intersection(const IndicatorSet& A, std::span<const Residue> shifts);

struct GowersOptions {
  unsigned max_order = 4;
  // Limit on q^{k-1} * #A elementary set operations.
  std::uint64_t work_budget = 1'000'000'000;
  unsigned threads = 1;
};

struct GowersEvaluation {
  BigInt via_recursion;   // sum over s in A - A of ||A_s||_{U^{k-1}}, U^2 by sum counts
  BigInt via_square_sum;  // sum over s_1..s_{k-1} of (#A_{pi(s)})^2
};

// Non-normalised ||A||_{U^k}, k >= 1. Both routes are evaluated; a
// mismatch raises InternalConsistencyError.
BigInt gowers_norm(const IndicatorSet& A, unsigned k, const GowersOptions& options = {});
GowersEvaluation gowers_norm_both(const IndicatorSet& A, unsigned k,
                                  const GowersOptions& options = {});

// sum_{s in A - A} #A_s; always (#A)^2.
BigInt shift_mass(const IndicatorSet& A);

struct LemmaCheck {
  bool applicable = false;
  bool holds = true;
  // Integer-power forms of the two sides, compared exactly.
  Rational lhs;
  Rational rhs;
  // lhs / rhs with fractional exponents restored.
  double ratio = 0.0;
};

struct CharLemmaReport {
  unsigned k = 0;
  bool vacuous = false;  // empty set: nothing to compare
  // ||A||_{U^{k+1}}^{k-1} ||A||_{U^{k-1}}^{2k} >= ||A||_{U^k}^{3k-2}
  LemmaCheck norm_growth;
  // ||A||_{U^k} >= E(A)^{2^k-k-1} (#A)^{-(3 * 2^k - 4k - 4)}
  LemmaCheck energy_lower_bound;

  bool holds() const { return vacuous || (norm_growth.holds && energy_lower_bound.holds); }
};

CharLemmaReport check_char_lemmas(const IndicatorSet& A, unsigned k,
                                  const GowersOptions& options = {});

}  // namespace modroots
