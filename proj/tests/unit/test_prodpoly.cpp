#include <gtest/gtest.h>

#include "modroots/errors.hpp"
#include "modroots/prodpoly.hpp"
#include "modroots/rng.hpp"

using namespace modroots;

namespace {

const IntPoly U = IntPoly::variable(0), V = IntPoly::variable(1), X = IntPoly::variable(2), Y = IntPoly::variable(3);

IntPoly c(long v) { return IntPoly::constant(BigInt(v)); }

std::array<BigInt, 4> powers(const std::array<std::int64_t, 4>& x, unsigned k) {
  std::array<BigInt, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = pow(from_i64(x[i]), k);
  return out;
}

}  // namespace

TEST(Cyclotomic, Polynomials) {
  EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<BigInt>{-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(2), (std::vector<BigInt>{1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(4), (std::vector<BigInt>{1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(6), (std::vector<BigInt>{1, -1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<BigInt>{1, 0, -1, 0, 1}));
}

TEST(CycInt, RootArithmetic) {
  for (unsigned k : {3u, 4u, 5u, 6u}) {
    const auto w = CycInt::root_power(k, 1);
    CycInt p = CycInt::root_power(k, 0);
    for (unsigned i = 0; i < k; ++i) p = p * w;
    EXPECT_EQ(p, CycInt::root_power(k, 0));
    // 1 + w + ... + w^(k-1) = 0 for k > 1.
    CycInt s(k);
    for (unsigned i = 0; i < k; ++i) s = s + CycInt::root_power(k, i);
    EXPECT_TRUE(s.is_zero());
    EXPECT_TRUE(CycInt::root_power(k, 0).is_integer());
    EXPECT_FALSE(w.is_integer());
  }
}

TEST(IntPoly, TextRoundTrip) {
  const IntPoly p = c(3) * U * U * V - c(7) * X * Y * Y * Y + c(1);
  EXPECT_EQ(IntPoly::from_text(p.to_text()), p);
  EXPECT_EQ(p.degree(), 4);
  EXPECT_FALSE(p.homogeneous());
  EXPECT_THROW(IntPoly::from_text("1 2 3\n"), InvalidParameter);
}

TEST(Fk, KTwoClosedForm) {
  const IntPoly inner = c(4) * U * V + c(4) * X * Y - (X + Y - U - V) * (X + Y - U - V);
  const IntPoly expected = -(c(64) * U * V * X * Y - inner * inner);
  EXPECT_EQ(construct_Fk(2), expected);
  EXPECT_EQ(evaluate_Fk(construct_Fk(2), {1, 0, 0, 0}), 1);
}

TEST(Fk, StructuralProperties) {
  for (unsigned k = 2; k <= 4; ++k) {
    const IntPoly F = construct_Fk(k);
    EXPECT_TRUE(F.homogeneous());
    EXPECT_EQ(F.degree(), static_cast<long>(k * k));
    EXPECT_EQ(evaluate_Fk(F, {1, 1, 1, 1}), 0);
  }
  EXPECT_EQ(construct_Fk(3).terms.size(), 220u);
  EXPECT_EQ(evaluate_Fk(construct_Fk(3), {1, 8, 1, 8}), 0);
}

TEST(Fk, RoutesAgree) {
  for (unsigned k = 2; k <= 3; ++k) {
    const auto g = expand_Gk(k, ProductRoute::Grouped);
    const auto f = expand_Gk(k, ProductRoute::Full);
    ASSERT_EQ(g.terms.size(), f.terms.size());
    for (const auto& [e, coef] : g.terms) EXPECT_EQ(f.terms.at(e), coef);
  }
  EXPECT_THROW(construct_Fk(1), InvalidParameter);
  EXPECT_THROW(construct_Fk(6), CapacityError);
}

TEST(Fk, VanishesOnRootRelations) {
  SplitMix64 rng(41);
  for (unsigned k = 2; k <= 4; ++k) {
    const IntPoly F = construct_Fk(k);
    for (int t = 0; t < 100; ++t) {
      std::array<std::int64_t, 4> x;
      for (int i = 0; i < 3; ++i) x[i] = rng.uniform_signed(-500, 500);
      x[3] = x[0] + x[1] - x[2];
      const auto n = powers(x, k);
      EXPECT_EQ(evaluate_Fk(F, n), 0);
      EXPECT_EQ(evaluate_Fk(F, n, BigInt(97)), 0);
    }
  }
}

TEST(Fk, Homogeneity) {
  SplitMix64 rng(42);
  for (unsigned k = 2; k <= 4; ++k) {
    const IntPoly F = construct_Fk(k);
    for (int t = 0; t < 20; ++t) {
      std::array<BigInt, 4> n, jn;
      const BigInt j = from_u64(rng.uniform(1, 30));
      for (int i = 0; i < 4; ++i) {
        n[i] = from_u64(rng.uniform(1, 1000));
        jn[i] = j * n[i];
      }
      EXPECT_EQ(evaluate_Fk(F, jn), pow(j, k * k) * evaluate_Fk(F, n));
    }
  }
}

TEST(Fk, ModularEvaluation) {
  const IntPoly F = construct_Fk(3);
  SplitMix64 rng(43);
  for (int t = 0; t < 50; ++t) {
    std::array<BigInt, 4> n;
    std::array<std::uint64_t, 4> nm;
    const std::uint64_t m = rng.uniform(2, 1'000'000);
    for (int i = 0; i < 4; ++i) {
      nm[i] = rng.uniform(0, 100'000);
      n[i] = from_u64(nm[i]);
    }
    BigInt r = evaluate_Fk(F, n) % from_u64(m);
    if (r < 0) r += m;
    EXPECT_EQ(evaluate_Fk(F, n, from_u64(m)), r);
    EXPECT_EQ(BigInt(from_u64(F.evaluate_mod(nm, m))), r);
  }
}

TEST(ZeroCount, SmallValues) {
  EXPECT_EQ(count_Tk_zeros(3, 1), 1);
  EXPECT_EQ(count_Tk_zeros(3, 2), 6);
  const IntPoly F = construct_Fk(3);
  std::int64_t brute = 0;
  for (std::int64_t a = 1; a <= 6; ++a)
    for (std::int64_t b = 1; b <= 6; ++b)
      for (std::int64_t x = 1; x <= 6; ++x)
        for (std::int64_t y = 1; y <= 6; ++y) brute += evaluate_Fk(F, {a, b, x, y}) == 0;
  EXPECT_EQ(count_Tk_zeros(3, 6), brute);
}

TEST(ZeroCount, ProfileAndDiagonal) {
  const IntPoly F = construct_Fk(3);
  const auto profile = zero_count_profile(F, 20);
  for (std::uint64_t n = 1; n <= 20; ++n) {
    EXPECT_EQ(profile[n], count_zeros(F, n));
    EXPECT_GE(profile[n], BigInt(2 * n * n - n));
  }
  EXPECT_EQ(count_Tk_zeros(2, 10), zero_count_profile(construct_Fk(2), 10)[10]);
  // Sums of two square roots: x + y = u + v among square n gives extra zeros at N = 9.
  EXPECT_GT(count_Tk_zeros(2, 9), BigInt(2 * 81 - 9));
}

TEST(ZeroCount, Budget) {
  ZeroCountOptions tight;
  tight.work_budget = 100;
  EXPECT_THROW(count_Tk_zeros(3, 10, tight), BudgetExceeded);
}
