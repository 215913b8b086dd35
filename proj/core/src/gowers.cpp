#include "modroots/gowers.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "modroots/concurrency.hpp"
#include "modroots/errors.hpp"

namespace modroots {

namespace {

// Subset of Z_q packed into words. Stored twice over (bits [q, 2q) mirror
// [0, q)) so that a cyclic rotation is a plain window extraction.
class CyclicBitset {
 public:
  explicit CyclicBitset(std::uint64_t q) : q_(q), words_((q + 63) / 64, 0) {}

  static CyclicBitset from(const IndicatorSet& A) {
    CyclicBitset out(A.modulus());
    for (std::uint64_t x = 0; x < A.modulus(); ++x)
      if (A.contains(x)) out.set(x);
    return out;
  }

  void set(std::uint64_t x) { words_[x / 64] |= std::uint64_t{1} << (x % 64); }
  bool test(std::uint64_t x) const { return (words_[x / 64] >> (x % 64)) & 1; }

  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  // out[y] = this[(y + t) mod q]
  void rotate_into(std::uint64_t t, CyclicBitset& out) const {
    const std::size_t n = words_.size();
    for (std::size_t i = 0; i < n; ++i) out.words_[i] = window(t + 64 * i);
    out.mask_tail();
  }

  // this ∩ rotate(this, t)
  void intersect_shift_into(std::uint64_t t, CyclicBitset& out) const {
    const std::size_t n = words_.size();
    for (std::size_t i = 0; i < n; ++i) out.words_[i] = words_[i] & window(t + 64 * i);
    out.mask_tail();
  }

  std::uint64_t and_count(const CyclicBitset& other) const {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += static_cast<std::uint64_t>(std::popcount(words_[i] & other.words_[i]));
    return c;
  }

  IndicatorSet to_set() const {
    IndicatorSet out(q_);
    for (std::uint64_t x = 0; x < q_; ++x)
      if (test(x)) out.insert(x);
    return out;
  }

  std::uint64_t modulus() const { return q_; }

 private:
  // 64 bits starting at cyclic position pos.
  std::uint64_t window(std::uint64_t pos) const {
    std::uint64_t w = 0;
    pos %= q_;
    std::uint64_t filled = 0;
    while (filled < 64) {
      const std::uint64_t word = pos / 64, offset = pos % 64;
      std::uint64_t chunk = words_[word] >> offset;
      // bits available before the word ends or the set wraps
      std::uint64_t avail = std::min<std::uint64_t>(64 - offset, q_ - pos);
      avail = std::min<std::uint64_t>(avail, 64 - filled);
      if (avail < 64) chunk &= (std::uint64_t{1} << avail) - 1;
      w |= chunk << filled;
      filled += avail;
      pos += avail;
      if (pos == q_) pos = 0;
    }
    return w;
  }

  void mask_tail() {
    const std::uint64_t extra = words_.size() * 64 - q_;
    if (extra) words_.back() &= ~std::uint64_t{0} >> extra;
  }

  std::uint64_t q_;
  std::vector<std::uint64_t> words_;
};

void check_budget(std::uint64_t q, unsigned k, std::uint64_t card, const GowersOptions& options) {
  if (k < 1) throw InvalidParameter("gowers_norm: k must be at least 1");
  if (k > options.max_order) {
    throw CapacityError("gowers_norm: order " + std::to_string(k) + " above cap " +
                        std::to_string(options.max_order));
  }
  long double work = static_cast<long double>(card);
  for (unsigned i = 1; i < k; ++i) work *= static_cast<long double>(q);
  if (work > static_cast<long double>(options.work_budget)) {
    throw BudgetExceeded("gowers_norm: q^{k-1} * #A = " + std::to_string(static_cast<double>(work)) +
                         " exceeds work budget " + std::to_string(options.work_budget));
  }
}

// sum over s_1..s_depth of (#B_{pi(s)})^2
BigInt square_sum(const CyclicBitset& B, unsigned depth) {
  if (depth == 0) {
    const std::uint64_t c = B.count();
    return from_u64(c) * from_u64(c);
  }
  const std::uint64_t q = B.modulus();
  CyclicBitset next(q);
  if (depth == 1) {
    std::uint64_t total = 0;
    for (std::uint64_t s = 0; s < q; ++s) {
      B.intersect_shift_into(s, next);
      const std::uint64_t c = next.count();
      total += c * c;
    }
    return from_u64(total);
  }
  BigInt total = 0;
  for (std::uint64_t s = 0; s < q; ++s) {
    B.intersect_shift_into(s, next);
    if (next.none()) continue;
    total += square_sum(next, depth - 1);
  }
  return total;
}

// sum_x #{(y, z) in B^2 : y + z = x}^2
std::uint64_t sum_count_energy(const CyclicBitset& B) {
  const std::uint64_t q = B.modulus();
  CyclicBitset reflected(q);
  for (std::uint64_t z = 0; z < q; ++z)
    if (B.test((q - z) % q)) reflected.set(z);
  CyclicBitset window(q);
  std::uint64_t energy = 0;
  for (std::uint64_t x = 0; x < q; ++x) {
    reflected.rotate_into((q - x) % q, window);  // window[y] = B[x - y]
    const std::uint64_t s = B.and_count(window);
    energy += s * s;
  }
  return energy;
}

BigInt recursion(const CyclicBitset& B, unsigned k) {
  if (k == 1) {
    const std::uint64_t c = B.count();
    return from_u64(c) * from_u64(c);
  }
  if (k == 2) return from_u64(sum_count_energy(B));
  const std::uint64_t q = B.modulus();
  CyclicBitset next(q);
  BigInt total = 0;
  for (std::uint64_t s = 0; s < q; ++s) {
    B.intersect_shift_into(s, next);
    if (next.none()) continue;  // s outside A - A
    total += recursion(next, k - 1);
  }
  return total;
}

// Outer shift in parallel; partial sums are reduced in residue order.
template <class Inner>
BigInt outer_sum(const CyclicBitset& B, unsigned threads, Inner inner) {
  const std::uint64_t q = B.modulus();
  std::vector<BigInt> partial(q);
  parallel_for(q, threads, [&](std::size_t s) {
    CyclicBitset next(q);
    B.intersect_shift_into(s, next);
    partial[s] = next.none() ? BigInt(0) : inner(next);
  });
  BigInt total = 0;
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace

ShiftSystem shift_intersection(const IndicatorSet& A, std::span<const Residue> shifts) {
  ShiftSystem out;
  out.shifts.assign(shifts.begin(), shifts.end());
  const std::uint64_t q = A.modulus();
  IndicatorSet members(q);
  for (std::uint64_t x = 0; x < q; ++x) {
    bool in = A.contains(x);
    for (std::size_t i = 0; in && i < shifts.size(); ++i) in = A.contains((x + shifts[i] % q) % q);
    if (in) members.insert(x);
  }
  out.members = std::move(members);
  return out;
}

GowersEvaluation gowers_norm_both(const IndicatorSet& A, unsigned k, const GowersOptions& options) {
  check_budget(A.modulus(), k, A.cardinality(), options);
  const auto B = CyclicBitset::from(A);
  GowersEvaluation out;
  if (A.empty()) {
    out.via_recursion = out.via_square_sum = 0;
    return out;
  }
  if (k <= 2) {
    out.via_recursion = recursion(B, k);
    out.via_square_sum = square_sum(B, k - 1);
    return out;
  }
  out.via_recursion = outer_sum(B, options.threads, [k](const CyclicBitset& next) { return recursion(next, k - 1); });
  out.via_square_sum = outer_sum(B, options.threads, [k](const CyclicBitset& next) { return square_sum(next, k - 2); });
  return out;
}

BigInt gowers_norm(const IndicatorSet& A, unsigned k, const GowersOptions& options) {
  auto both = gowers_norm_both(A, k, options);
  if (both.via_recursion != both.via_square_sum) {
    throw InternalConsistencyError("gowers_norm: recursion gives " + both.via_recursion.get_str() +
                                   " but square sum gives " + both.via_square_sum.get_str());
  }
  return both.via_recursion;
}

BigInt shift_mass(const IndicatorSet& A) {
  const auto B = CyclicBitset::from(A);
  const std::uint64_t q = A.modulus();
  CyclicBitset next(q);
  std::uint64_t total = 0;
  for (std::uint64_t s = 0; s < q; ++s) {
    B.intersect_shift_into(s, next);
    total += next.count();
  }
  return from_u64(total);
}

CharLemmaReport check_char_lemmas(const IndicatorSet& A, unsigned k, const GowersOptions& options) {
  if (k < 1) throw InvalidParameter("check_char_lemmas: k must be at least 1");
  CharLemmaReport report;
  report.k = k;
  if (A.empty()) {
    report.vacuous = true;
    return report;
  }

  const BigInt card = from_u64(A.cardinality());
  const BigInt energy = gowers_norm(A, 2, options);
  const BigInt Uk = gowers_norm(A, k, options);

  if (k >= 2 && k + 1 <= options.max_order) {
    const BigInt Ukm1 = gowers_norm(A, k - 1, options);
    const BigInt Ukp1 = gowers_norm(A, k + 1, options);
    auto& lemma = report.norm_growth;
    lemma.applicable = true;
    lemma.lhs = Rational(pow(Ukp1, k - 1) * pow(Ukm1, 2 * k));
    lemma.rhs = Rational(pow(Uk, 3 * k - 2));
    lemma.holds = lemma.lhs >= lemma.rhs;
    lemma.ratio = std::exp((std::log(Ukp1.get_d()) * (k - 1) + std::log(Ukm1.get_d()) * 2.0 * k -
                            std::log(Uk.get_d()) * (3.0 * k - 2)) /
                           (k - 1));
  }

  {
    auto& lemma = report.energy_lower_bound;
    lemma.applicable = true;
    const long exponent = 3L * (1L << k) - 4L * k - 4L;
    const unsigned long energy_power = (1UL << k) - k - 1;
    lemma.lhs = Rational(Uk);
    const BigInt e_pow = pow(energy, energy_power);
    lemma.rhs = exponent >= 0 ? make_rational(e_pow, pow(card, static_cast<unsigned long>(exponent)))
                              : Rational(e_pow * pow(card, static_cast<unsigned long>(-exponent)));
    lemma.holds = lemma.lhs >= lemma.rhs;
    lemma.ratio = std::exp(std::log(Uk.get_d()) - static_cast<double>(energy_power) * std::log(energy.get_d()) +
                           static_cast<double>(exponent) * std::log(card.get_d()));
  }
  return report;
}

}  // namespace modroots
