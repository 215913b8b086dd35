#pragma once

#include <cstdint>
#include <vector>

#include "modroots/indicator_set.hpp"
#include "modroots/numeric.hpp"
#include "modroots/rng.hpp"

namespace modroots {

struct DoublingInstance {
  IndicatorSet set;
  std::uint64_t size = 0;
  std::uint64_t sumset_size = 0;  // #(S + S) in Z_q
  Rational doubling;              // sumset_size / size
};

// #(S + S) computed in Z_q.
std::uint64_t sumset_size(const IndicatorSet& S);

// { start + sum_i t_i steps_i : 0 <= t_i < lengths_i } inside [0, q). Every
// element and every pairwise sum must stay below q as an integer, and the
// elements must be distinct; otherwise InvalidParameter ("wraparound").
DoublingInstance progression_instance(std::uint64_t q, std::uint64_t start, const std::vector<std::uint64_t>& steps,
                                      const std::vector<std::uint64_t>& lengths);

DoublingInstance arithmetic_progression(std::uint64_t q, std::uint64_t start, std::uint64_t step,
                                        std::uint64_t length);

// Uniform random subset of Z_q of the given size.
DoublingInstance random_instance(std::uint64_t q, std::uint64_t size, SplitMix64& rng);

}  // namespace modroots
