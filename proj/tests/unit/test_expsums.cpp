#include <gtest/gtest.h>

#include "modroots/bounds.hpp"
#include "modroots/errors.hpp"
#include "modroots/expsums.hpp"
#include "modroots/rng.hpp"
#include "oracles.hpp"

using namespace modroots;

namespace {

BilinearQuery query(Residue a, Residue h, std::uint64_t M, std::uint64_t N, std::uint64_t q) {
  return {.a = a, .h = h, .M = M, .N = N, .q = PrimeModulus::make(q), .alpha = unit_weights(M), .beta = unit_weights(N)};
}

// Sum over n outer, m inner, x over all residues.
Complex v_oracle(const BilinearQuery& Q, double Nphi) {
  const std::uint64_t q = Q.q.value();
  const auto rm = dyadic(Q.M);
  const SmoothBump phi(Nphi);
  Complex total = 0;
  for (std::uint64_t n = 1; n < 3 * Nphi; ++n) {
    const double w = phi(static_cast<double>(n));
    if (w == 0) continue;
    for (std::uint64_t m = rm.hi; m-- > rm.lo;)
      for (std::uint64_t x = 0; x < q; ++x)
        if (x * x % q == Q.a * m % q * n % q) total += Q.alpha[m - rm.lo] * w * oracle::e(static_cast<double>(Q.h * x % q) / q);
  }
  return total;
}

}  // namespace

TEST(Dyadic, Ranges) {
  EXPECT_EQ(dyadic(2).lo, 1u);
  EXPECT_EQ(dyadic(2).hi, 2u);
  EXPECT_EQ(dyadic(7).lo, 4u);
  EXPECT_EQ(dyadic(7).size(), 3u);
  EXPECT_EQ(dyadic(1).size(), 0u);
}

TEST(SmoothBump, DerivativesMatchFiniteDifferences) {
  const SmoothBump phi(10);
  EXPECT_EQ(phi(10), 0);
  EXPECT_EQ(phi(20), 0);
  EXPECT_NEAR(phi(15), 1.0, 1e-15);
  for (double x : {11.0, 13.3, 15.0, 17.9}) {
    const double h = 1e-4;
    for (unsigned j = 0; j < 4; ++j) {
      const double fd = (phi.derivative(j, x + h) - phi.derivative(j, x - h)) / (2 * h);
      EXPECT_NEAR(phi.derivative(j + 1, x), fd, 1e-5 * (1 + std::fabs(fd))) << x << " " << j;
    }
  }
  EXPECT_GT(phi.derivative_constant(2), 0);
}

TEST(WSum, Examples) {
  const Complex w = W_sum(query(2, 1, 2, 2, 7));
  EXPECT_NEAR(w.real(), 2 * std::cos(6 * std::numbers::pi / 7), 1e-12);
  EXPECT_NEAR(w.real(), -1.80194, 1e-5);
  EXPECT_NEAR(w.imag(), 0, 1e-12);
  EXPECT_NEAR(std::abs(W_sum(query(1, 0, 2, 2, 7)) - 2.0), 0, 1e-12);
  auto zero = query(3, 2, 16, 16, 499);
  std::fill(zero.alpha.begin(), zero.alpha.end(), 0.0);
  EXPECT_EQ(W_sum(zero), Complex(0));
  EXPECT_EQ(w_ratio(zero), 0);
}

TEST(WSum, MatchesDirectSummation) {
  SplitMix64 rng(51);
  for (int t = 0; t < 10; ++t) {
    auto Q = query(rng.uniform(1, 96), rng.uniform(0, 96), 16, 24, 97);
    for (auto& x : Q.alpha) x = rng.unit() - 0.5;
    for (auto& x : Q.beta) x = Complex(0, rng.unit());
    Complex expect = 0;
    for (std::uint64_t m = 8; m < 16; ++m)
      for (std::uint64_t n = 12; n < 24; ++n)
        for (std::uint64_t x = 0; x < 97; ++x)
          if (x * x % 97 == Q.a * m * n % 97) expect += Q.alpha[m - 8] * Q.beta[n - 12] * oracle::e(static_cast<double>(Q.h * x % 97) / 97);
    EXPECT_NEAR(std::abs(W_sum(Q) - expect), 0, 1e-9);
  }
}

TEST(WSum, RejectsBadWeights) {
  auto Q = query(1, 1, 8, 8, 31);
  Q.alpha.pop_back();
  EXPECT_THROW(W_sum(Q), InvalidParameter);
  auto big = query(1, 1, 8, 8, 31);
  big.alpha[0] = 2.0;
  EXPECT_THROW(w_ratio(big), InvalidParameter);
}

TEST(VSum, MatchesReversedLoopOracle) {
  for (std::uint64_t q : {31u, 101u}) {
    for (std::uint64_t N : {5u, 12u}) {
      auto Q = query(3, 5, 8, N, q);
      EXPECT_NEAR(std::abs(V_sum(Q, SmoothBump(static_cast<double>(N))) - v_oracle(Q, static_cast<double>(N))), 0, 1e-9);
    }
  }
}

TEST(VSum, ZeroCases) {
  auto Q = query(3, 5, 8, 12, 101);
  std::fill(Q.alpha.begin(), Q.alpha.end(), 0.0);
  EXPECT_EQ(V_sum(Q, SmoothBump(12)), Complex(0));
  // q = 7, a = 3 a non-residue, m = 1 and n = 2: 3*1*2 = 6 is a non-residue too, so no roots.
  const auto empty = query(3, 0, 2, 2, 7);
  EXPECT_EQ(V_sum(empty, SmoothBump(1.5)), Complex(0));
}

TEST(FourierCoefficient, ClosedFormAgrees) {
  for (std::uint64_t qv : {7u, 13u, 101u}) {
    const CharacterTable table(PrimeModulus::make(qv));
    for (Residue h : {0u, 1u, 5u})
      for (std::uint64_t m : {1u, 3u})
        for (std::uint64_t n : {1u, 2u, 6u}) {
          const auto f = fourier_coefficient(2, h, m, n, table);
          EXPECT_TRUE(f.agree) << qv << " " << h << " " << m << " " << n;
          EXPECT_NEAR(std::abs(f.direct - f.closed), 0, 1e-9);
        }
  }
}

TEST(SalieMoment, Examples) {
  const auto q101 = PrimeModulus::make(101);
  EXPECT_EQ(salie_moment_check(1, 0, 2, q101).moment, 0);
  const auto s = salie_moment_check(1, 5, 2, q101);
  EXPECT_GT(s.moment, 0);
  EXPECT_LT(s.ratio, 1.0);
  EXPECT_DOUBLE_EQ(s.bound, std::sqrt(101.0) * 625 + 101.0 * 25);
  // r = 1, U0 = q: every window is the complete sum, and the complete sum of
  // chi(y) e(c/y) has modulus sqrt(q) for prime q.
  const auto full = salie_moment_check(3, 101, 1, q101);
  EXPECT_NEAR(full.moment, 101.0 * 101.0, 1e-6);
}

TEST(Bounds, Exponents) {
  EXPECT_EQ(rho_k(3), Rational(1, 19));
  EXPECT_EQ(rho_k(4), Rational(1, 47));
  EXPECT_EQ(rho_k(5), Rational(1, 103));
  EXPECT_EQ(theta_k(3), Rational(32, 19));
  EXPECT_EQ(theta_k(4), Rational(48, 47));
  EXPECT_EQ(theta_k(5), Rational(128, 103));
  EXPECT_THROW(rho_k(2), InvalidParameter);
}

TEST(Bounds, Formulas) {
  EXPECT_DOUBLE_EQ(e2k_average_bound(10, 1000), 100 + 10.0);
  EXPECT_DOUBLE_EQ(t22_bound(4, 100), 28.8);
  EXPECT_GT(t42_bound(8, 101), std::pow(8.0, 5));
  EXPECT_DOUBLE_EQ(salie_bound(5, 101, 2), std::sqrt(101.0) * 625 + 101.0 * 25);
  EXPECT_GT(gamma_bound(1009, 250), 0);
}
