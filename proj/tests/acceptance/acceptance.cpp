// Acceptance criteria, one per --criterion N. Each prints a single
// "criterion N: PASS|FAIL ..." line and exits nonzero on failure.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>

#include "modroots/energy.hpp"
#include "modroots/equidist.hpp"
#include "modroots/gowers.hpp"
#include "modroots/lattice.hpp"
#include "modroots/modular.hpp"
#include "modroots/prodpoly.hpp"
#include "modroots/report.hpp"
#include "modroots/rng.hpp"
#include "modroots/sweep.hpp"
#include "oracles.hpp"

using namespace modroots;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::size_t cases = 0;

  void expect(bool ok, const std::string& what) {
    ++cases;
    if (!ok && pass) detail = "first failure: " + what;
    pass = pass && ok;
  }
};

constexpr double kGaussTolerance = 1e-9;
constexpr double kRatioCeiling = 1e3;

Outcome energy_anchor() {
  Outcome out;
  const auto q7 = PrimeModulus::make(7);
  const BigInt anchor = energy_T({.nu = 2, .k = 2, .N = 3, .j = 1, .q = q7});
  out.expect(anchor == 44, "T(2,2,3,1,7) = " + anchor.get_str());
  out.expect(oracle::energy_quartic(oracle::preimage(1, 2, 3, 7), 7) == 44, "quartic oracle at the anchor");
  for (std::uint64_t q : oracle::primes_upto(101)) {
    const auto Q = PrimeModulus::make(q);
    std::vector<std::uint64_t> js;
    for (std::uint64_t j : {std::uint64_t{1}, std::uint64_t{2}, q - 1})
      if (j % q != 0 && std::find(js.begin(), js.end(), j) == js.end()) js.push_back(j);
    for (unsigned k = 1; k <= 3; ++k)
      for (std::uint64_t j : js)
        for (std::uint64_t N = 1; N <= q; ++N) {
          const auto A = oracle::preimage(j, k, N, q);
          const BigInt got = energy_T({.nu = 2, .k = k, .N = N, .j = j, .q = Q});
          const BigInt expect = A.size() <= 24 ? BigInt(oracle::energy_quartic(A, q)) : oracle::energy_nu(A, 2, q);
          char buf[96];
          std::snprintf(buf, sizeof buf, "q=%llu k=%u j=%llu N=%llu", static_cast<unsigned long long>(q), k,
                        static_cast<unsigned long long>(j), static_cast<unsigned long long>(N));
          out.expect(got == expect, buf);
        }
  }
  if (out.pass) out.detail = "T(2,2,3,1,7) = 44";
  return out;
}

Outcome convolution() {
  Outcome out;
  SplitMix64 rng(2);
  for (std::size_t q : {97u, 499u, 1009u})
    for (int t = 0; t < 100; ++t) {
      // Entry sizes grow with t so the largest instances need every CRT prime.
      const unsigned bits = 1 + t * 62 / 99;
      std::vector<BigInt> u(q), v(q);
      for (auto& x : u) x = from_u64(rng.next() >> (64 - bits));
      for (auto& x : v) x = from_u64(rng.next() >> (64 - bits));
      out.expect(cyclic_convolve(u, v, ConvolutionPath::Ntt) == oracle::convolve(u, v),
                 "q=" + std::to_string(q) + " trial " + std::to_string(t));
    }
  return out;
}

Outcome polynomial() {
  Outcome out;
  const IntPoly U = IntPoly::variable(0), V = IntPoly::variable(1), X = IntPoly::variable(2), Y = IntPoly::variable(3);
  const auto c = [](long v) { return IntPoly::constant(BigInt(v)); };
  const IntPoly inner = c(4) * U * V + c(4) * X * Y - (X + Y - U - V) * (X + Y - U - V);
  const IntPoly F2 = construct_Fk(2);
  const IntPoly expect = c(-1) * (c(64) * U * V * X * Y - inner * inner);
  out.expect(F2.terms.size() == expect.terms.size(), "F2 term count");
  for (const auto& [e, coef] : expect.terms) {
    auto it = F2.terms.find(e);
    out.expect(it != F2.terms.end() && it->second == coef, "F2 coefficient");
  }
  SplitMix64 rng(3);
  for (unsigned k : {3u, 4u}) {
    const std::string tag = "k=" + std::to_string(k) + " ";
    const auto G = expand_Gk(k, ProductRoute::Grouped);
    for (const auto& [e, coef] : G.terms) {
      out.expect(coef.is_integer(), tag + "integrality");
      out.expect(e[0] % k == 0 && e[1] % k == 0 && e[2] % k == 0 && e[3] % k == 0, tag + "degree divisibility");
    }
    const IntPoly F = construct_Fk(k);
    out.expect(F.homogeneous() && F.degree() == static_cast<long>(k * k), tag + "homogeneous of degree k^2");
    for (int t = 0; t < 20; ++t) {
      std::array<BigInt, 4> n, jn;
      const BigInt j = from_u64(rng.uniform(2, 50));
      for (int i = 0; i < 4; ++i) {
        n[i] = from_u64(rng.uniform(1, 10000));
        jn[i] = j * n[i];
      }
      out.expect(evaluate_Fk(F, jn) == pow(j, k * k) * evaluate_Fk(F, n), tag + "homogeneity");
    }
    for (int t = 0; t < 10000; ++t) {
      std::array<std::int64_t, 4> x;
      for (int i = 0; i < 3; ++i) x[i] = rng.uniform_signed(-1000, 1000);
      x[3] = x[0] + x[1] - x[2];
      std::array<BigInt, 4> n;
      for (int i = 0; i < 4; ++i) n[i] = pow(from_i64(x[i]), k);
      const BigInt m = from_u64(rng.uniform(2, 1'000'000));
      out.expect(evaluate_Fk(F, n) == 0, tag + "vanishing");
      out.expect(evaluate_Fk(F, n, m) == 0, tag + "vanishing mod m");
    }
  }
  return out;
}

// Zero of F_3 iff some r1 + w2 r2 - w3 r3 - w4 r4 vanishes over cube roots.
bool cube_relation(const std::array<std::int64_t, 4>& n) {
  const std::complex<double> w[3] = {1.0, oracle::e(1.0 / 3), oracle::e(2.0 / 3)};
  std::array<double, 4> r;
  for (int i = 0; i < 4; ++i) r[i] = std::cbrt(static_cast<double>(n[i]));
  for (const auto& a : w)
    for (const auto& b : w)
      for (const auto& c : w)
        if (std::abs(r[0] + a * r[1] - b * r[2] - c * r[3]) < 1e-9) return true;
  return false;
}

Outcome tk_growth() {
  Outcome out;
  const IntPoly F = construct_Fk(3);
  const auto T = zero_count_profile(F, 40);
  std::uint64_t brute = 0;
  for (std::int64_t a = 1; a <= 2; ++a)
    for (std::int64_t b = 1; b <= 2; ++b)
      for (std::int64_t c = 1; c <= 2; ++c)
        for (std::int64_t d = 1; d <= 2; ++d) brute += cube_relation({a, b, c, d});
  out.expect(T[2] == 6 && brute == 6, "T_3(2) = " + T[2].get_str() + ", brute force " + std::to_string(brute));
  const Rational C(T[10], 100);
  std::string first;
  for (std::uint64_t N = 1; N <= 40; ++N) {
    const BigInt lower = from_u64(2 * N * N - N);
    out.expect(T[N] >= lower, "lower bound at N=" + std::to_string(N));
    const bool upper = Rational(T[N]) <= C * static_cast<long>(N * N);
    if (!upper && first.empty()) first = std::to_string(N);
    out.expect(upper, "T_3(" + std::to_string(N) + ") = " + T[N].get_str() + " > C N^2 with C = T_3(10)/100 = " +
                          format_rational(C));
  }
  out.detail += " (max T/N^2 = " + format_decimal(T[40].get_d() / 1600) + " at N=40";
  out.detail += first.empty() ? ")" : ", first excess at N=" + first + ")";
  return out;
}

Outcome gowers() {
  Outcome out;
  SplitMix64 rng(5);
  for (std::uint64_t q : {31u, 61u, 97u})
    for (int t = 0; t < 100; ++t) {
      IndicatorSet A(q);
      const double density = rng.unit();
      for (std::uint64_t x = 0; x < q; ++x)
        if (rng.unit() < density) A.insert(x);
      const std::string tag = "q=" + std::to_string(q) + " trial " + std::to_string(t);
      out.expect(gowers_norm(A, 2) == additive_energy(A), tag + " U^2 = E");
      const BigInt n = from_u64(A.cardinality());
      out.expect(shift_mass(A) == n * n, tag + " shift mass");
      for (unsigned k = 1; k <= 3; ++k) {
        const auto both = gowers_norm_both(A, k);
        out.expect(both.via_recursion == both.via_square_sum, tag + " routes k=" + std::to_string(k));
        if (q == 31 && (k < 3 || t < 10)) {
          std::vector<bool> bits(q);
          for (std::uint64_t x = 0; x < q; ++x) bits[x] = A.contains(x);
          out.expect(both.via_recursion == oracle::gowers_cubes(bits, k), tag + " cube oracle k=" + std::to_string(k));
        }
      }
      for (unsigned k = 2; k <= 3; ++k) out.expect(check_char_lemmas(A, k).holds(), tag + " lemmas k=" + std::to_string(k));
    }
  return out;
}

Outcome geometry() {
  Outcome out;
  SplitMix64 rng(6);
  for (int t = 0; t < 10000; ++t) {
    const unsigned d = 2 + t % 2;
    const std::uint64_t q = rng.uniform(1, 10000);
    IntVec a(d);
    for (auto& x : a)
      do x = static_cast<std::int64_t>(rng.uniform(0, q - 1));
      while (std::gcd<std::uint64_t>(x, q) != 1);
    BoxBody B;
    for (unsigned i = 0; i < d; ++i) {
      const long den = static_cast<long>(rng.uniform(1, 10));
      B.half_widths.emplace_back(static_cast<long>(rng.uniform(1, 1000 * den)), den);
      B.half_widths.back().canonicalize();
    }
    const auto L = CongruenceLattice::make(a, q);
    const auto g = verify_geometry(L, B);
    const std::string tag = "lattice trial " + std::to_string(t);
    out.expect(g.ordered, tag + " ordering");
    out.expect(g.minkowski, tag + " Minkowski");
    out.expect(g.counting, tag + " counting bound");
    out.expect(g.transference_ok, tag + " transference");
    const DualLattice D(L);
    for (const auto& m : g.dual.witnesses) {
      out.expect(D.contains_numerators(m), tag + " dual witness");
      for (const auto& n : g.primal.witnesses) {
        __int128 s = 0;
        for (unsigned i = 0; i < d; ++i) s += static_cast<__int128>(m[i]) * n[i];
        out.expect(s % static_cast<__int128>(q) == 0, tag + " pairing");
      }
    }
  }
  const auto primes = oracle::primes_upto(5000);
  std::size_t held[3] = {0, 0, 0};
  for (int t = 0; t < 1000; ++t) {
    const std::uint64_t q = primes[rng.uniform(2, primes.size() - 1)];
    std::uint64_t a = rng.uniform(1, q - 1), b = rng.uniform(1, q - 1), c = rng.uniform(1, q - 1);
    if (t % 2) {
      // (a, b, c) = lambda (l, m, n) with small l, m, n puts a short vector in the dual.
      const std::uint64_t lambda = rng.uniform(1, q - 1);
      const auto small = [&] {
        std::int64_t v;
        do v = rng.uniform_signed(-3, 3);
        while (v == 0);
        return mul_mod(lambda, reduce_signed(v, q), q);
      };
      a = small(), b = small(), c = small();
    }
    // Side ranges from well below the (i) threshold to far above it.
    const std::uint64_t caps[4] = {std::max<std::uint64_t>(2, static_cast<std::uint64_t>(4 * std::cbrt(static_cast<double>(q)))),
                                   q / 400 + 2, 200, 30};
    const auto side = [&] { return static_cast<std::int64_t>(rng.uniform(1, caps[t % 4])); };
    const std::int64_t Lw = side(), Mw = side(), Nw = side();
    const auto r = trichotomy_check(a, b, c, Lw, Mw, Nw, q);
    held[0] += r.case_i;
    held[1] += r.case_ii;
    held[2] += r.case_iii;
    char buf[128];
    std::snprintf(buf, sizeof buf, "trichotomy q=%llu a=%llu b=%llu c=%llu L=%lld M=%lld N=%lld",
                  static_cast<unsigned long long>(q), static_cast<unsigned long long>(a), static_cast<unsigned long long>(b),
                  static_cast<unsigned long long>(c), static_cast<long long>(Lw), static_cast<long long>(Mw),
                  static_cast<long long>(Nw));
    out.expect(r.any(), buf);
  }
  if (out.pass) {
    out.detail = "trichotomy cases held (i) " + std::to_string(held[0]) + ", (ii) " + std::to_string(held[1]) + ", (iii) " +
                 std::to_string(held[2]);
  }
  return out;
}

Outcome gauss() {
  Outcome out;
  double worst = 0;
  for (std::uint64_t q : oracle::primes_upto(500)) {
    if (q == 2) continue;
    const auto Q = PrimeModulus::make(q);
    const CharacterTable table(Q);
    std::vector<std::complex<double>> root(q);
    for (std::uint64_t x = 0; x < q; ++x) root[x] = oracle::e(static_cast<double>(x) / static_cast<double>(q));
    const double target = std::sqrt(static_cast<double>(q));
    for (std::uint64_t b = 1; b < q; ++b)
      for (std::uint64_t h = 0; h < q; ++h) {
        std::complex<double> direct = 0;
        for (std::uint64_t x = 0; x < q; ++x) direct += root[(b * x * x + h * x) % q];
        const auto g = gauss_sum(b, h, table);
        const double err = std::abs(direct - g.value);
        worst = std::max(worst, err);
        out.expect(err <= kGaussTolerance, "closed form q=" + std::to_string(q));
        out.expect(std::abs(std::abs(direct) - target) <= kGaussTolerance, "modulus q=" + std::to_string(q));
      }
  }
  if (out.pass) out.detail = "max |direct - closed| = " + format_decimal(worst);
  return out;
}

Outcome discrepancy_anchors() {
  Outcome out;
  const auto r = discrepancy(PointMultiset({Rational(3, 7), Rational(4, 7)}));
  out.expect(r.value == Rational(12, 7), "discrepancy {3/7, 4/7} = " + format_rational(r.value));
  const auto g = gamma_qP(PrimeModulus::make(7), 5);
  out.expect(g.discrepancy.value == Rational(12, 7), "Gamma_7(5) = " + format_rational(g.discrepancy.value));
  SplitMix64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const std::uint64_t n = rng.uniform(1, 20), D = rng.uniform(1, 30);
    std::vector<Rational> pts;
    for (std::uint64_t i = 0; i < n; ++i) {
      pts.emplace_back(static_cast<long>(rng.uniform(0, D - 1)), static_cast<long>(D));
      pts.back().canonicalize();
    }
    out.expect(discrepancy(PointMultiset(pts)).value == oracle::discrepancy_grid(pts, D), "trial " + std::to_string(t));
  }
  return out;
}

Outcome ratios() {
  Outcome out;
  struct Sweep {
    const char* check;
    std::map<std::string, std::vector<std::string>> grid;
  };
  const std::vector<Sweep> sweeps = {
      {"t22-bound", {{"q", {"primes:5:2000"}}, {"N", {"4", "8", "16", "32", "64", "128", "256", "512", "1024"}}, {"trials", {"2"}}}},
      {"t42-bound", {{"q", {"primes:5:1000:2"}}, {"N", {"2", "4", "8", "16", "32", "64", "128"}}}},
      {"e2k-average", {{"k", {"3"}}, {"N", {"1", "2", "3", "5", "10", "20", "30"}}, {"Q", {"100", "250", "500", "1000", "2000"}}}},
      {"e2k-set-doubling", {{"k", {"3"}}, {"q", {"1009", "4001", "10007"}}, {"kind", {"ap"}}, {"size", {"4", "8", "16", "32", "64"}}, {"trials", {"4"}}}},
      {"w-ratio", {{"q", {"101", "499", "997", "2003"}}, {"M", {"4", "16", "64", "256"}}, {"N", {"4", "16", "64", "256"}}, {"trials", {"2"}}}},
      {"v-ratio", {{"q", {"499", "997", "2003"}}, {"M", {"2", "4", "8", "16"}}, {"N", {"8", "16", "32", "64"}}, {"r", {"2"}}, {"trials", {"2"}}}},
      {"gamma-ratio", {{"q", {"primes:3:5000:25"}}, {"exponent", {"0.8"}}}},
  };
  std::string summary;
  for (const auto& s : sweeps) {
    SweepConfig c;
    c.check = s.check;
    c.grid = s.grid;
    c.seed = 9;
    c.ratio_ceiling = kRatioCeiling;
    const auto r = run_sweep(c);
    const auto& m = r.manifest;
    std::filesystem::create_directories("acceptance_manifests");
    write_file("acceptance_manifests/" + std::string(s.check) + ".json", manifest_to_json(m));
    const bool ok = m.max_ratio && std::isfinite(*m.max_ratio) && m.below_ceiling;
    out.expect(ok, std::string(s.check) + " max ratio " + (m.max_ratio ? format_decimal(*m.max_ratio) : "none"));
    summary += std::string(summary.empty() ? "" : ", ") + s.check + "=" + (m.max_ratio ? format_decimal(*m.max_ratio) : "none");
  }
  if (out.pass) out.detail = "max ratios: " + summary;
  return out;
}

Outcome dilation() {
  Outcome out;
  SplitMix64 rng(10);
  const auto primes = oracle::primes_upto(2000);
  for (int t = 0; t < 100; ++t) {
    const std::uint64_t q = primes[rng.uniform(2, primes.size() - 1)];
    const auto Q = PrimeModulus::make(q);
    const unsigned k = static_cast<unsigned>(rng.uniform(1, 6));
    const std::uint64_t j = rng.uniform(1, q - 1), u = rng.uniform(1, q - 1), N = rng.uniform(1, q);
    const std::uint64_t ju = mul_mod(j, pow_mod(u, k, q), q);
    out.expect(energy_T({.nu = 2, .k = k, .N = N, .j = ju, .q = Q}) == energy_T({.nu = 2, .k = k, .N = N, .j = j, .q = Q}),
               "dilation q=" + std::to_string(q));
  }
  for (int t = 0; t < 20; ++t) {
    const std::uint64_t q = primes[rng.uniform(10, 120)];
    const auto Q = PrimeModulus::make(q);
    const unsigned k = static_cast<unsigned>(rng.uniform(2, 6));
    const std::uint64_t N = rng.uniform(1, q / 2);
    out.expect(max_energy_over_j(k, N, Q).value == max_energy_over_j(k, N, Q, true).value,
               "max over j q=" + std::to_string(q) + " k=" + std::to_string(k));
  }
  return out;
}

Outcome determinism() {
  Outcome out;
  const std::vector<std::pair<std::string, std::map<std::string, std::vector<std::string>>>> configs = {
      {"gowers-lemmas", {{"q", {"31", "61"}}, {"trials", {"10"}}}},
      {"t22-bound", {{"q", {"primes:5:200"}}, {"N", {"4", "16"}}}},
      {"lattice-geometry", {{"trials", {"500"}}}},
      {"trichotomy", {{"trials", {"20"}}}},
      {"prodpoly-vanishing", {{"k", {"2", "3"}}, {"trials", {"20"}}}},
      {"e2k-set-doubling", {{"q", {"1009"}}, {"kind", {"ap", "gap2", "random"}}, {"size", {"9", "16"}}, {"trials", {"3"}}}},
      {"w-ratio", {{"q", {"499"}}, {"trials", {"3"}}}},
      {"salie-moment", {{"q", {"101"}}}},
  };
  for (const auto& [check, grid] : configs) {
    std::string csv, json;
    for (unsigned threads : {1u, 4u, 8u}) {
      SweepConfig c;
      c.check = check;
      c.grid = grid;
      c.seed = 11;
      c.threads = threads;
      const auto r = run_sweep(c);
      const auto a = to_csv(r.rows), b = to_json(r.rows);
      if (threads == 1) {
        csv = a;
        json = b;
        out.expect(!r.rows.empty(), check + " produced rows");
      } else {
        out.expect(a == csv && b == json, check + " differs at " + std::to_string(threads) + " threads");
      }
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int criterion = 0;
  app.add_option("--criterion", criterion, "criterion number, 1-11 (0 runs all)")->check(CLI::Range(0, 11));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"exact energy anchor and oracle equivalence", energy_anchor},
      {"NTT convolution equals naive", convolution},
      {"F_k regression, integrality, homogeneity, vanishing", polynomial},
      {"T_3 growth", tk_growth},
      {"Gowers identities and lemmas", gowers},
      {"geometry of numbers and trichotomy", geometry},
      {"Gauss sums", gauss},
      {"discrepancy anchors", discrepancy_anchors},
      {"bound-ratio stability", ratios},
      {"dilation invariance and coset maximum", dilation},
      {"sweep determinism across thread counts", determinism},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (criterion != 0 && static_cast<std::size_t>(criterion) != i + 1) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu: %s  %s; %zu checks; %.1fs%s%s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.cases,
                secs, o.detail.empty() ? "" : "; ", o.detail.c_str());
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
