#include "modroots/doubling.hpp"

#include <algorithm>
#include <string>

#include "modroots/errors.hpp"

namespace modroots {

namespace {

DoublingInstance finish(IndicatorSet set) {
  DoublingInstance out;
  out.size = set.cardinality();
  out.sumset_size = sumset_size(set);
  out.doubling = out.size ? make_rational(from_u64(out.sumset_size), from_u64(out.size)) : Rational(0);
  out.set = std::move(set);
  return out;
}

}  // namespace

std::uint64_t sumset_size(const IndicatorSet& S) {
  const std::uint64_t q = S.modulus();
  const auto elems = S.elements();
  std::vector<std::uint8_t> hit(q, 0);
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i; j < elems.size(); ++j) {
      const std::uint64_t s = (elems[i] + elems[j]) % q;
      if (!hit[s]) {
        hit[s] = 1;
        ++count;
      }
    }
  }
  return count;
}

DoublingInstance progression_instance(std::uint64_t q, std::uint64_t start, const std::vector<std::uint64_t>& steps,
                                      const std::vector<std::uint64_t>& lengths) {
  if (steps.size() != lengths.size() || steps.empty())
    throw InvalidParameter("progression_instance: steps and lengths must be nonempty and of equal size");
  std::vector<std::uint64_t> elems{start};
  for (std::size_t d = 0; d < steps.size(); ++d) {
    if (lengths[d] == 0) throw InvalidParameter("progression_instance: zero length");
    std::vector<std::uint64_t> next;
    for (const auto e : elems)
      for (std::uint64_t t = 0; t < lengths[d]; ++t) next.push_back(e + t * steps[d]);
    elems = std::move(next);
  }
  const std::uint64_t top = *std::max_element(elems.begin(), elems.end());
  if (top >= q || 2 * top >= q) {
    throw InvalidParameter("progression_instance: wraparound (largest sum " + std::to_string(2 * top) +
                           " not below q = " + std::to_string(q) + ")");
  }
  IndicatorSet set(q);
  for (const auto e : elems) {
    if (set.contains(e)) throw InvalidParameter("progression_instance: wraparound (repeated element)");
    set.insert(e);
  }
  return finish(std::move(set));
}

DoublingInstance arithmetic_progression(std::uint64_t q, std::uint64_t start, std::uint64_t step,
                                        std::uint64_t length) {
  return progression_instance(q, start, {step}, {length});
}

DoublingInstance random_instance(std::uint64_t q, std::uint64_t size, SplitMix64& rng) {
  if (size > q) throw InvalidParameter("random_instance: size exceeds q");
  // Partial Fisher-Yates over Z_q.
  std::vector<std::uint64_t> pool(q);
  for (std::uint64_t i = 0; i < q; ++i) pool[i] = i;
  IndicatorSet set(q);
  for (std::uint64_t i = 0; i < size; ++i) {
    const std::uint64_t j = rng.uniform(i, q - 1);
    std::swap(pool[i], pool[j]);
    set.insert(pool[i]);
  }
  return finish(std::move(set));
}

}  // namespace modroots
