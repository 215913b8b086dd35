#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "modroots/numeric.hpp"

namespace modroots {

// A subset of Z_q as a membership vector over residues 0..q-1.
class IndicatorSet {
 public:
  IndicatorSet() = default;
  explicit IndicatorSet(std::uint64_t q) : q_(q), members_(q, 0) {}
  IndicatorSet(std::uint64_t q, std::initializer_list<Residue> elements);
  IndicatorSet(std::uint64_t q, std::span<const Residue> elements);

  static IndicatorSet full(std::uint64_t q);

  std::uint64_t modulus() const { return q_; }
  bool contains(Residue x) const { return members_[x % q_] != 0; }
  void insert(Residue x);
  void erase(Residue x);

  std::uint64_t cardinality() const { return cardinality_; }
  bool empty() const { return cardinality_ == 0; }

  // Members in ascending order.
  std::vector<Residue> elements() const;
  std::span<const std::uint8_t> membership() const { return members_; }

  // Exact 0/1 vector suitable for convolution.
  std::vector<BigInt> as_counts() const;

  friend bool operator==(const IndicatorSet&, const IndicatorSet&) = default;

 private:
  std::uint64_t q_ = 0;
  std::vector<std::uint8_t> members_;
  std::uint64_t cardinality_ = 0;
};

}  // namespace modroots
