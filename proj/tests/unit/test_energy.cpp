#include <gtest/gtest.h>

#include "modroots/energy.hpp"
#include "modroots/errors.hpp"
#include "modroots/rng.hpp"
#include "oracles.hpp"

using namespace modroots;

namespace {

std::vector<BigInt> random_vector(std::size_t n, std::uint64_t max, SplitMix64& rng) {
  std::vector<BigInt> v(n);
  for (auto& x : v) x = from_u64(rng.uniform(0, max));
  return v;
}

}  // namespace

TEST(Convolution, DeltaIsIdentity) {
  SplitMix64 rng(5);
  for (std::size_t q : {5u, 97u, 1031u}) {
    std::vector<BigInt> delta(q, 0);
    delta[0] = 1;
    const auto v = random_vector(q, 1000, rng);
    EXPECT_EQ(cyclic_convolve(delta, v), v);
    EXPECT_EQ(cyclic_convolve(delta, v, ConvolutionPath::Ntt), v);
  }
}

TEST(Convolution, AllOnes) {
  const std::vector<BigInt> ones(5, 1);
  EXPECT_EQ(cyclic_convolve(ones, ones), std::vector<BigInt>(5, 5));
  EXPECT_EQ(cyclic_convolve(ones, ones, ConvolutionPath::Ntt), std::vector<BigInt>(5, 5));
}

TEST(Convolution, PathsMatchOracle) {
  SplitMix64 rng(11);
  for (std::size_t q : {1u, 2u, 97u, 600u, 1009u}) {
    const auto u = random_vector(q, 10, rng), v = random_vector(q, 10, rng);
    const auto expect = oracle::convolve(u, v);
    EXPECT_EQ(cyclic_convolve(u, v, ConvolutionPath::Naive), expect) << q;
    EXPECT_EQ(cyclic_convolve(u, v, ConvolutionPath::Ntt), expect) << q;
    EXPECT_EQ(cyclic_convolve(u, v), expect) << q;
  }
}

TEST(Convolution, LargeEntriesNeedCrt) {
  SplitMix64 rng(12);
  const std::size_t q = 257;
  std::vector<BigInt> u(q), v(q);
  for (auto& x : u) x = from_u64(rng.next() >> 2) * from_u64(rng.next());
  for (auto& x : v) x = from_u64(rng.next());
  EXPECT_EQ(cyclic_convolve(u, v, ConvolutionPath::Ntt), oracle::convolve(u, v));
}

TEST(Convolution, RejectsLengthMismatch) {
  const std::vector<BigInt> a(3, 1), b(4, 1);
  EXPECT_THROW(cyclic_convolve(a, b), InvalidParameter);
}

TEST(RepFunctions, DifferenceCounts) {
  const IndicatorSet A(7, {1, 3, 4, 6});
  const auto r = diff_rep(A);
  EXPECT_EQ(r.counts[0], 4);
  EXPECT_EQ(r.total(), 16);
  EXPECT_EQ(r.counts[2], 3);
  for (Residue d = 0; d < 7; ++d) {
    long expect = 0;
    for (auto a : A.elements())
      for (auto b : A.elements()) expect += (a + 7 - b) % 7 == d;
    EXPECT_EQ(r.counts[d], expect);
  }
  const auto empty = diff_rep(IndicatorSet(7));
  EXPECT_EQ(empty.counts, std::vector<BigInt>(7, 0));
}

TEST(RepFunctions, SumAndDifferenceEnergiesAgree) {
  SplitMix64 rng(3);
  for (std::uint64_t q : {7u, 61u, 613u}) {
    IndicatorSet A(q);
    for (std::uint64_t x = 0; x < q; ++x)
      if (rng.unit() < 0.3) A.insert(x);
    EXPECT_EQ(sum_rep(A, 2).sum_of_squares(), diff_rep(A).sum_of_squares());
    EXPECT_EQ(additive_energy(A, 2), oracle::energy_nu(A.elements(), 2, q));
    EXPECT_EQ(additive_energy(A, 3), oracle::energy_nu(A.elements(), 3, q));
    EXPECT_EQ(additive_energy(A, 4), oracle::energy_nu(A.elements(), 4, q));
  }
}

TEST(EnergyT, Anchors) {
  const auto q7 = PrimeModulus::make(7);
  EXPECT_EQ(energy_T({.nu = 2, .k = 2, .N = 3, .j = 1, .q = q7}), 44);
  EXPECT_EQ(oracle::energy_quartic({1, 3, 4, 6}, 7), 44u);
  EXPECT_EQ(energy_T({.nu = 2, .k = 2, .N = 1, .j = 3, .q = q7}), 0);
  EXPECT_EQ(energy_T({.nu = 2, .k = 2, .N = 7, .j = 1, .q = q7}), 186);
  EXPECT_EQ(36 + 6 * 25, 186);
}

TEST(EnergyT, MatchesOracleNuFour) {
  for (std::uint64_t qv : {11u, 53u, 101u}) {
    const auto q = PrimeModulus::make(qv);
    for (std::uint64_t N : {std::uint64_t{1}, std::uint64_t{5}, qv}) {
      const auto A = oracle::preimage(2, 2, N, qv);
      EXPECT_EQ(energy_T({.nu = 4, .k = 2, .N = N, .j = 2, .q = q}), oracle::energy_nu(A, 4, qv));
    }
  }
}

TEST(EnergyT, ValidatesQuery) {
  const auto q = PrimeModulus::make(7);
  EXPECT_THROW(energy_T({.nu = 2, .k = 2, .N = 0, .j = 1, .q = q}), InvalidParameter);
  EXPECT_THROW(energy_T({.nu = 2, .k = 2, .N = 3, .j = 7, .q = q}), InvalidParameter);
  EXPECT_THROW(energy_T({.nu = 0, .k = 2, .N = 3, .j = 1, .q = q}), InvalidParameter);
}

TEST(EnergySet, Examples) {
  const auto q = PrimeModulus::make(7);
  EXPECT_EQ(energy_set(IndicatorSet(7, {1, 2}), 2, q), 44);
  EXPECT_EQ(energy_set(IndicatorSet(7), 2, q), 0);
  EXPECT_EQ(energy_set(IndicatorSet(7, {1, 2}), 1, q), 6);
}

TEST(EnergyMax, CosetRepresentativesMatchFullEnumeration) {
  for (std::uint64_t qv : {31u, 61u, 97u, 109u}) {
    const auto q = PrimeModulus::make(qv);
    for (unsigned k : {2u, 3u, 4u, 6u})
      for (std::uint64_t N : {3u, 10u}) {
        const auto fast = max_energy_over_j(k, N, q);
        const auto full = max_energy_over_j(k, N, q, true);
        EXPECT_EQ(fast.value, full.value) << qv << " " << k << " " << N;
        EXPECT_EQ(energy_T({.nu = 2, .k = k, .N = N, .j = fast.argmax, .q = q}), fast.value);
      }
  }
}

TEST(EnergyAverage, SmallFrozenValue) {
  // Primes 11, 13, 17, 19.
  const auto avg = avg_energy_over_primes(3, 1, 20);
  ASSERT_EQ(avg.primes.size(), 4u);
  BigInt total = 0;
  for (std::uint64_t qv : {11u, 13u, 17u, 19u}) {
    BigInt best = 0;
    for (std::uint64_t j = 1; j < qv; ++j) best = std::max(best, BigInt(oracle::energy_quartic(oracle::preimage(j, 3, 1, qv), qv)));
    total += best;
  }
  EXPECT_EQ(avg.total, total);
  EXPECT_EQ(avg.per_Q, make_rational(total, 20));
  // One cube root for q = 11, 17; three (energy 15) for q = 13, 19.
  EXPECT_EQ(avg.total, 32);
}

TEST(EnergyAverage, CosetShortcut) {
  AverageEnergyOptions full;
  full.full_enumeration = true;
  EXPECT_EQ(avg_energy_over_primes(3, 5, 50).total, avg_energy_over_primes(3, 5, 50, full).total);
}

TEST(EnergyAverage, NoPrimesGivesZero) {
  EXPECT_EQ(avg_energy_over_primes(3, 1, 2).total, 0);
}
