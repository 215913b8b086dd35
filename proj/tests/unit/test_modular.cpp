#include <gtest/gtest.h>

#include "modroots/errors.hpp"
#include "modroots/modular.hpp"
#include "oracles.hpp"

using namespace modroots;

TEST(Modular, PowInvAgreeWithRepeatedMultiplication) {
  for (std::uint64_t q : {7u, 101u, 65537u}) {
    for (std::uint64_t x = 1; x < 50; ++x) {
      if (x % q == 0) continue;
      EXPECT_EQ(pow_mod(x, 13, q), oracle::power(x, 13, q));
      EXPECT_EQ(mul_mod(inv_mod(x % q, q), x % q, q), 1u);
    }
  }
  const std::uint64_t big = (std::uint64_t{1} << 61) - 1;
  EXPECT_EQ(mul_mod(inv_mod(123456789, big), 123456789, big), 1u);
}

TEST(Modular, PrimalityMatchesTrialDivision) {
  for (std::uint64_t n = 0; n < 5000; ++n) EXPECT_EQ(is_prime(n), oracle::prime(n)) << n;
  EXPECT_TRUE(is_prime((std::uint64_t{1} << 61) - 1));
  EXPECT_FALSE(is_prime(std::uint64_t{3215031751}));
}

TEST(Modular, PrimesInRange) {
  EXPECT_EQ(primes_in(1, 10), (std::vector<std::uint64_t>{2, 3, 5, 7}));
  EXPECT_TRUE(primes_in(8, 10).empty());
  EXPECT_EQ(primes_in(1, 1'000'000).size(), 78498u);
  EXPECT_EQ(primes_in(1, 20000), oracle::primes_upto(20000));
  const auto window = primes_in(1'000'000'000, 1'000'001'000);
  for (auto p : window) EXPECT_TRUE(oracle::prime(p));
  EXPECT_EQ(window.size(), 49u);
}

TEST(Modular, PrimeModulusRejectsComposites) {
  EXPECT_THROW(PrimeModulus::make(91), InvalidParameter);
  EXPECT_THROW(PrimeModulus::make(1), InvalidParameter);
  EXPECT_EQ(PrimeModulus::make(97).value(), 97u);
}

TEST(Modular, PrimitiveRootGeneratesGroup) {
  for (std::uint64_t q : oracle::primes_upto(300)) {
    const auto g = primitive_root(q);
    std::vector<bool> seen(q, false);
    std::uint64_t x = 1;
    for (std::uint64_t i = 0; i + 1 < q; ++i, x = x * g % q) seen[x] = true;
    EXPECT_EQ(std::count(seen.begin() + 1, seen.end(), true), static_cast<long>(q - 1)) << q;
  }
}

TEST(Modular, SquareRoots) {
  const auto q7 = PrimeModulus::make(7);
  EXPECT_EQ(sqrt_mod(2, q7), (std::vector<Residue>{3, 4}));
  EXPECT_EQ(sqrt_mod(0, q7), (std::vector<Residue>{0}));
  EXPECT_TRUE(sqrt_mod(3, q7).empty());
  // q = 1 mod 8 exercises the full Tonelli-Shanks loop.
  const auto q = PrimeModulus::make(40961);
  for (Residue a = 0; a < 2000; ++a) {
    auto roots = sqrt_mod(a, q);
    std::vector<Residue> expect;
    for (Residue x = 0; x < q.value(); ++x)
      if (x * x % q.value() == a) expect.push_back(x);
    EXPECT_EQ(roots, expect) << a;
  }
}

TEST(Modular, KthRootsMatchExhaustiveScan) {
  for (std::uint64_t qv : {7u, 31u, 61u, 97u}) {
    const auto q = PrimeModulus::make(qv);
    for (unsigned k = 1; k <= 6; ++k)
      for (Residue a = 0; a < qv; ++a) {
        std::vector<Residue> expect;
        for (Residue x = 0; x < qv; ++x)
          if (oracle::power(x, k, qv) == a) expect.push_back(x);
        EXPECT_EQ(kth_roots(a, k, q), expect) << qv << " " << k << " " << a;
      }
  }
  EXPECT_EQ(kth_roots(0, 5, PrimeModulus::make(11)), (std::vector<Residue>{0}));
}

TEST(Modular, PreimageSets) {
  const auto q = PrimeModulus::make(7);
  EXPECT_EQ(preimage_set(1, 2, 3, q).elements(), (std::vector<Residue>{1, 3, 4, 6}));
  EXPECT_EQ(preimage_set(1, 2, 1, q).elements(), (std::vector<Residue>{1, 6}));
  EXPECT_EQ(preimage_set(1, 1, 6, q).cardinality(), 6u);
  EXPECT_TRUE(preimage_set(3, 2, 1, q).empty());
  for (Residue j : {1u, 2u, 5u})
    for (std::uint64_t N = 1; N <= 7; ++N)
      EXPECT_EQ(preimage_set(j, 3, N, q).elements(), oracle::preimage(j, 3, N, 7));
  EXPECT_THROW(preimage_set(0, 2, 3, q), InvalidParameter);
}

TEST(Modular, CharacterTable) {
  for (std::uint64_t qv : {3u, 5u, 7u, 101u}) {
    const CharacterTable t(PrimeModulus::make(qv));
    for (Residue a = 0; a < qv; ++a) EXPECT_EQ(t.chi(a), oracle::legendre(a, qv));
  }
}

TEST(Modular, GaussSums) {
  const auto g5 = gauss_sum(1, 0, PrimeModulus::make(5));
  EXPECT_NEAR(g5.value.real(), std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(g5.value.imag(), 0.0, 1e-12);
  EXPECT_NEAR(g5.value.real(), 2.23607, 1e-5);
  const auto g7 = gauss_sum(1, 0, PrimeModulus::make(7));
  EXPECT_NEAR(g7.direct.real(), 0.0, 1e-12);
  EXPECT_NEAR(g7.direct.imag(), std::sqrt(7.0), 1e-12);
  const auto q = PrimeModulus::make(13);
  for (Residue b = 1; b < 13; ++b)
    for (Residue h = 0; h < 13; ++h) {
      const auto g = gauss_sum(b, h, q);
      std::complex<double> direct = 0;
      for (std::uint64_t x = 0; x < 13; ++x) direct += oracle::e(static_cast<double>((b * x * x + h * x) % 13) / 13);
      EXPECT_TRUE(g.closed_form);
      EXPECT_NEAR(std::abs(g.value - direct), 0.0, 1e-9);
      EXPECT_NEAR(std::abs(g.direct), std::sqrt(13.0), 1e-9);
    }
  EXPECT_THROW(gauss_sum(0, 1, q), InvalidParameter);
}
