#include "modroots/indicator_set.hpp"

#include "modroots/errors.hpp"

namespace modroots {

IndicatorSet::IndicatorSet(std::uint64_t q, std::initializer_list<Residue> elements)
    : IndicatorSet(q, std::span<const Residue>(elements.begin(), elements.size())) {}

IndicatorSet::IndicatorSet(std::uint64_t q, std::span<const Residue> elements)
    : IndicatorSet(q) {
  if (q == 0) throw InvalidParameter("IndicatorSet: modulus must be positive");
  for (Residue x : elements) insert(x);
}

IndicatorSet IndicatorSet::full(std::uint64_t q) {
  IndicatorSet out(q);
  std::fill(out.members_.begin(), out.members_.end(), std::uint8_t{1});
  out.cardinality_ = q;
  return out;
}

void IndicatorSet::insert(Residue x) {
  auto& slot = members_[x % q_];
  if (!slot) {
    slot = 1;
    ++cardinality_;
  }
}

void IndicatorSet::erase(Residue x) {
  auto& slot = members_[x % q_];
  if (slot) {
    slot = 0;
    --cardinality_;
  }
}

std::vector<Residue> IndicatorSet::elements() const {
  std::vector<Residue> out;
  out.reserve(cardinality_);
  for (std::uint64_t x = 0; x < q_; ++x)
    if (members_[x]) out.push_back(x);
  return out;
}

std::vector<BigInt> IndicatorSet::as_counts() const {
  std::vector<BigInt> out(q_);
  for (std::uint64_t x = 0; x < q_; ++x)
    if (members_[x]) out[x] = 1;
  return out;
}

}  // namespace modroots
