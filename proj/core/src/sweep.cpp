#include "modroots/sweep.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>

#include "modroots/bounds.hpp"
#include "modroots/concurrency.hpp"
#include "modroots/doubling.hpp"
#include "modroots/energy.hpp"
#include "modroots/equidist.hpp"
#include "modroots/errors.hpp"
#include "modroots/expsums.hpp"
#include "modroots/gowers.hpp"
#include "modroots/lattice.hpp"
#include "modroots/modular.hpp"
#include "modroots/prodpoly.hpp"
#include "modroots/rng.hpp"

#ifndef MODROOTS_VERSION
#define MODROOTS_VERSION "0.0.0"
#endif

namespace modroots {

namespace {

enum class Kind { Int, Real, Str };

struct ParamDef {
  std::string name;
  Kind kind;
  std::vector<std::string> defaults;
};

struct Value {
  double number = 0;
  std::string text;
  bool operator<(const Value& o) const { return number != o.number ? number < o.number : text < o.text; }
};

struct Cell {
  const std::vector<ParamDef>* defs = nullptr;
  std::vector<Value> values;

  const Value& get(const std::string& name) const {
    for (std::size_t i = 0; i < defs->size(); ++i)
      if ((*defs)[i].name == name) return values[i];
    throw InternalConsistencyError("sweep: cell has no parameter '" + name + "'");
  }
  std::uint64_t u(const std::string& name) const { return static_cast<std::uint64_t>(get(name).number); }
  std::int64_t i(const std::string& name) const { return static_cast<std::int64_t>(get(name).number); }
  double r(const std::string& name) const { return get(name).number; }
  const std::string& s(const std::string& name) const { return get(name).text; }
};

struct Skip {
  std::string reason;
};

struct Context {
  SplitMix64 rng;
  std::uint64_t work_budget;
  ReportRow row;
  double ratio_value = std::nan("");
};

struct CheckDef {
  std::string id;
  bool hard;
  bool randomized;
  std::vector<ParamDef> params;
  std::function<void(const Cell&, Context&)> run;
};

void set_ratio(Context& ctx, double measured, double bound) {
  ctx.row.bound = format_decimal(bound);
  const double ratio = bound > 0 ? measured / bound : 0.0;
  ctx.row.ratio = format_decimal(ratio);
  ctx.ratio_value = ratio;
}

void require(bool ok, const char* reason) {
  if (!ok) throw Skip{reason};
}

PrimeModulus prime_param(const Cell& cell, const char* name = "q") {
  const std::uint64_t q = cell.u(name);
  if (!is_prime(q)) throw Skip{"not-prime"};
  return PrimeModulus::make(q);
}

const IntPoly& cached_Fk(unsigned k) {
  static std::mutex mutex;
  static std::map<unsigned, IntPoly> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, construct_Fk(k)).first;
  return it->second;
}

IndicatorSet random_subset(std::uint64_t q, SplitMix64& rng) {
  IndicatorSet A(q);
  for (std::uint64_t x = 0; x < q; ++x)
    if (rng.next() >> 63) A.insert(x);
  return A;
}

Complex random_sign(SplitMix64& rng) { return (rng.next() >> 63) ? 1.0 : -1.0; }

// --- checks ---------------------------------------------------------------

void energy_bound(const Cell& cell, Context& ctx, unsigned nu) {
  const auto q = prime_param(cell);
  const std::uint64_t N = cell.u("N");
  require(N >= 1 && N <= q.value(), "N-outside-1..q");
  const Residue j = ctx.rng.uniform(1, q.value() - 1);
  ctx.row.params.emplace_back("j", std::to_string(j));
  const BigInt T = energy_T(EnergyQuery{.nu = nu, .k = 2, .N = N, .j = j, .q = q});
  ctx.row.measured = format_integer(T);
  const double bound = nu == 2 ? t22_bound(N, q.value()) : t42_bound(N, q.value());
  set_ratio(ctx, T.get_d(), bound);
}

void e2k_average(const Cell& cell, Context& ctx) {
  const auto k = static_cast<unsigned>(cell.u("k"));
  const std::uint64_t N = cell.u("N"), Q = cell.u("Q");
  require(k >= 1 && N >= 1 && N <= Q, "needs-N<=Q");
  const auto avg = avg_energy_over_primes(k, N, Q);
  ctx.row.measured = format_decimal(avg.value);
  set_ratio(ctx, avg.value, e2k_average_bound(N, Q));
}

void e2k_set_doubling(const Cell& cell, Context& ctx) {
  const auto q = prime_param(cell);
  const auto k = static_cast<unsigned>(cell.u("k"));
  const std::uint64_t size = cell.u("size");
  const std::string& kind = cell.s("kind");
  require(size >= 2 && std::pow(static_cast<double>(size), 1.5) <= static_cast<double>(q.value()), "needs-N<=q^(2/3)");
  DoublingInstance inst;
  try {
    if (kind == "ap") {
      const std::uint64_t start = ctx.rng.uniform(0, q.value() / 8);
      const std::uint64_t room = (q.value() / 2 - 1 - start) / (size - 1);
      require(room >= 1, "wraparound");
      inst = arithmetic_progression(q.value(), start, ctx.rng.uniform(1, room), size);
    } else if (kind == "gap2") {
      const auto side = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(size))));
      require(side >= 2, "size-too-small");
      const std::uint64_t step1 = ctx.rng.uniform(1, 3);
      const std::uint64_t step2 = 2 * side * step1 + ctx.rng.uniform(0, 3);
      inst = progression_instance(q.value(), 0, {step1, step2}, {side, side});
    } else if (kind == "random") {
      inst = random_instance(q.value(), size, ctx.rng);
    } else {
      throw ConfigError("e2k-set-doubling: unknown kind '" + kind + "' (ap, gap2, random)");
    }
  } catch (const InvalidParameter&) {
    throw Skip{"wraparound"};
  }
  ctx.row.params.emplace_back("L", format_rational(inst.doubling));
  const BigInt E = energy_set(inst.set, k, q);
  ctx.row.measured = format_integer(E);
  set_ratio(ctx, E.get_d(), e2k_set_bound(inst.doubling.get_d(), static_cast<double>(inst.size), k));
}

void gowers_lemmas(const Cell& cell, Context& ctx) {
  const auto q = prime_param(cell);
  const auto k = static_cast<unsigned>(cell.u("k"));
  require(k >= 1, "k>=1");
  const IndicatorSet A = random_subset(q.value(), ctx.rng);
  GowersOptions options;
  options.work_budget = ctx.work_budget;
  bool ok = true;
  try {
    const BigInt U2 = gowers_norm(A, 2, options);
    ok = ok && U2 == additive_energy(A);
    ok = ok && shift_mass(A) == from_u64(A.cardinality()) * from_u64(A.cardinality());
    const auto report = check_char_lemmas(A, k, options);
    ok = ok && report.holds();
    ctx.row.measured = format_integer(gowers_norm(A, k, options));
    ctx.row.bound = report.vacuous ? "" : format_rational(report.energy_lower_bound.rhs);
    if (!report.vacuous) {
      ctx.row.ratio = format_decimal(report.energy_lower_bound.ratio);
      ctx.ratio_value = report.energy_lower_bound.ratio;
    }
  } catch (const InternalConsistencyError&) {
    ok = false;
    ctx.row.measured = "error:consistency";
  }
  ctx.row.pass = ok;
}

void lattice_geometry(const Cell& cell, Context& ctx) {
  const auto d = static_cast<unsigned>(cell.u("d"));
  require(d == 2 || d == 3, "d-in-2..3");
  const std::uint64_t q = ctx.rng.uniform(1, cell.u("qmax"));
  IntVec a(d);
  for (auto& x : a) {
    do {
      x = static_cast<std::int64_t>(ctx.rng.uniform(0, q - 1));
    } while (std::gcd(static_cast<std::uint64_t>(x), q) != 1);
  }
  BoxBody B;
  const std::uint64_t wmax = cell.u("wmax");
  for (unsigned i = 0; i < d; ++i) {
    const std::uint64_t den = ctx.rng.uniform(1, 10);
    B.half_widths.push_back(make_rational(from_u64(ctx.rng.uniform(1, wmax * den)), from_u64(den)));
  }
  const auto L = CongruenceLattice::make(a, q);
  std::string desc = std::to_string(a[0]);
  for (unsigned i = 1; i < d; ++i) desc += " " + std::to_string(a[i]);
  ctx.row.params.emplace_back("modulus", std::to_string(q));
  ctx.row.params.emplace_back("a", desc);
  LatticeOptions options;
  options.work_budget = ctx.work_budget;
  const auto report = verify_geometry(L, B, options);
  // Every dual witness pairs integrally with every primal witness.
  bool dual_ok = true;
  const DualLattice dual(L);
  for (const auto& m : report.dual.witnesses) {
    dual_ok = dual_ok && dual.contains_numerators(m);
    for (const auto& n : report.primal.witnesses) {
      __int128 s = 0;
      for (unsigned i = 0; i < d; ++i) s += static_cast<__int128>(m[i]) * n[i];
      dual_ok = dual_ok && s % static_cast<__int128>(q) == 0;
    }
  }
  ctx.row.measured = format_rational(report.primal.lambdas.front());
  ctx.row.bound = format_rational(report.minkowski_rhs);
  ctx.row.ratio = format_decimal(report.slack());
  ctx.row.pass = report.holds() && dual_ok;
}

void trichotomy(const Cell& cell, Context& ctx) {
  const auto q = prime_param(cell);
  const std::uint64_t size = cell.u("size");
  require(size >= 1, "size>=1");
  const std::uint64_t a = ctx.rng.uniform(1, q.value() - 1), b = ctx.rng.uniform(1, q.value() - 1),
                      c = ctx.rng.uniform(1, q.value() - 1);
  const auto L = static_cast<std::int64_t>(ctx.rng.uniform(1, size)), M = static_cast<std::int64_t>(ctx.rng.uniform(1, size)),
             N = static_cast<std::int64_t>(ctx.rng.uniform(1, size));
  ctx.row.params.emplace_back("abc", std::to_string(a) + " " + std::to_string(b) + " " + std::to_string(c));
  ctx.row.params.emplace_back("LMN", std::to_string(L) + " " + std::to_string(M) + " " + std::to_string(N));
  LatticeOptions options;
  options.work_budget = ctx.work_budget;
  const auto t = trichotomy_check(a, b, c, L, M, N, q.value(), options);
  ctx.row.measured = format_integer(t.K);
  ctx.row.bound = format_rational(make_rational(640 * from_i64(L) * from_i64(M) * from_i64(N), from_u64(q.value())));
  ctx.row.ratio = t.cases();
  ctx.row.pass = t.any();
}

void prodpoly_vanishing(const Cell& cell, Context& ctx) {
  const auto k = static_cast<unsigned>(cell.u("k"));
  require(k >= 2, "k>=2");
  const IntPoly& F = cached_Fk(k);
  const auto xmax = cell.i("xmax");
  std::array<std::int64_t, 4> x;
  x[0] = ctx.rng.uniform_signed(-xmax, xmax);
  x[1] = ctx.rng.uniform_signed(-xmax, xmax);
  x[2] = ctx.rng.uniform_signed(-xmax, xmax);
  x[3] = x[0] + x[1] - x[2];
  std::array<BigInt, 4> powers;
  for (unsigned v = 0; v < 4; ++v) powers[v] = pow(from_i64(x[v]), k);
  const BigInt m = from_u64(ctx.rng.uniform(2, cell.u("mmax")));
  const BigInt value = evaluate_Fk(F, powers);
  const BigInt reduced = evaluate_Fk(F, powers, m);
  // Homogeneity at a random point.
  std::array<BigInt, 4> n, scaled;
  const BigInt j = from_u64(ctx.rng.uniform(1, 50));
  for (unsigned v = 0; v < 4; ++v) {
    n[v] = from_u64(ctx.rng.uniform(1, 100));
    scaled[v] = j * n[v];
  }
  const bool homogeneous = evaluate_Fk(F, scaled) == pow(j, k * k) * evaluate_Fk(F, n);
  ctx.row.params.emplace_back("x", std::to_string(x[0]) + " " + std::to_string(x[1]) + " " + std::to_string(x[2]) + " " +
                                       std::to_string(x[3]));
  ctx.row.params.emplace_back("m", m.get_str());
  ctx.row.measured = format_integer(value);
  ctx.row.bound = "0";
  ctx.row.pass = value == 0 && reduced == 0 && homogeneous && F.homogeneous() && F.degree() == static_cast<long>(k * k);
}

void tk_growth(const Cell& cell, Context& ctx) {
  const auto k = static_cast<unsigned>(cell.u("k"));
  const std::uint64_t N = cell.u("N");
  require(k >= 2 && N >= 1, "k>=2,N>=1");
  ZeroCountOptions options;
  options.work_budget = ctx.work_budget;
  const BigInt T = count_zeros(cached_Fk(k), N, options);
  ctx.row.measured = format_integer(T);
  set_ratio(ctx, T.get_d(), static_cast<double>(N) * static_cast<double>(N));
}

BilinearQuery random_bilinear(const Cell& cell, Context& ctx, const PrimeModulus& q) {
  BilinearQuery query{.a = ctx.rng.uniform(1, q.value() - 1),
                      .h = ctx.rng.uniform(0, q.value() - 1),
                      .M = cell.u("M"),
                      .N = cell.u("N"),
                      .q = q,
                      .alpha = {},
                      .beta = {}};
  for (std::uint64_t i = 0; i < dyadic(query.M).size(); ++i) query.alpha.push_back(random_sign(ctx.rng));
  for (std::uint64_t i = 0; i < dyadic(query.N).size(); ++i) query.beta.push_back(random_sign(ctx.rng));
  ctx.row.params.emplace_back("a", std::to_string(query.a));
  ctx.row.params.emplace_back("h", std::to_string(query.h));
  return query;
}

void w_ratio_check(const Cell& cell, Context& ctx) {
  const auto q = prime_param(cell);
  require(q.odd(), "odd-q");
  require(cell.u("M") >= 2 && cell.u("N") >= 2 && 2 * cell.u("M") <= q.value() && 2 * cell.u("N") <= q.value(),
          "needs-M,N<=q/2");
  const auto query = random_bilinear(cell, ctx, q);
  const double W = std::abs(W_sum(query));
  ctx.row.measured = format_decimal(W);
  set_ratio(ctx, W, w_bound(query.M, query.N, q.value()));
}

void v_ratio_check(const Cell& cell, Context& ctx) {
  const auto q = prime_param(cell);
  require(q.odd(), "odd-q");
  const std::uint64_t M = cell.u("M"), N = cell.u("N");
  const auto r = static_cast<unsigned>(cell.u("r"));
  require(M >= 2 && M < N && M * N <= q.value() && r >= 1, "needs-M<N,MN<=q");
  const auto query = random_bilinear(cell, ctx, q);
  const SmoothBump phi(static_cast<double>(N));
  const double V = std::abs(V_sum(query, phi));
  ctx.row.measured = format_decimal(V);
  set_ratio(ctx, V, v_bound(M, N, q.value(), r));
}

void salie_moment(const Cell& cell, Context& ctx) {
  const auto q = prime_param(cell);
  require(q.odd(), "odd-q");
  const std::uint64_t U0 = cell.u("U0");
  const auto r = static_cast<unsigned>(cell.u("r"));
  require(U0 <= q.value() && r >= 1, "needs-U0<=q");
  const Residue c = ctx.rng.uniform(1, q.value() - 1);
  ctx.row.params.emplace_back("c", std::to_string(c));
  const auto s = salie_moment_check(c, U0, r, q);
  ctx.row.measured = format_decimal(s.moment);
  ctx.row.bound = format_decimal(s.bound);
  ctx.row.ratio = format_decimal(s.ratio);
  ctx.ratio_value = s.ratio;
}

void gamma_ratio_check(const Cell& cell, Context& ctx) {
  const auto q = prime_param(cell);
  const auto P = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(q.value()), cell.r("exponent"))));
  ctx.row.params.emplace_back("P", std::to_string(P));
  const auto g = gamma_qP(q, P);
  ctx.row.measured = format_rational(g.discrepancy.value);
  set_ratio(ctx, g.discrepancy.value.get_d(), P >= 2 ? gamma_bound(q.value(), P) : 0.0);
}

const std::vector<CheckDef>& registry() {
  using K = Kind;
  static const std::vector<CheckDef> checks = {
      {"t22-bound", false, true,
       {{"q", K::Int, {"primes:5:503"}}, {"N", K::Int, {"4", "8", "16", "32", "64", "128", "256"}}},
       [](const Cell& c, Context& x) { energy_bound(c, x, 2); }},
      {"t42-bound", false, true,
       {{"q", K::Int, {"primes:5:503"}}, {"N", K::Int, {"2", "4", "8", "16", "32"}}},
       [](const Cell& c, Context& x) { energy_bound(c, x, 4); }},
      {"e2k-average", false, false,
       {{"k", K::Int, {"3"}}, {"N", K::Int, {"1", "2", "5", "10", "20", "30"}}, {"Q", K::Int, {"250", "500", "1000", "2000"}}},
       e2k_average},
      {"e2k-set-doubling", false, true,
       {{"k", K::Int, {"3"}}, {"q", K::Int, {"1009", "2003", "4001"}}, {"kind", K::Str, {"ap"}},
        {"size", K::Int, {"8", "16", "32", "64"}}},
       e2k_set_doubling},
      {"gowers-lemmas", true, true, {{"q", K::Int, {"31", "61"}}, {"k", K::Int, {"2"}}}, gowers_lemmas},
      {"lattice-geometry", true, true,
       {{"d", K::Int, {"2", "3"}}, {"qmax", K::Int, {"10000"}}, {"wmax", K::Int, {"1000"}}},
       lattice_geometry},
      {"trichotomy", true, true, {{"q", K::Int, {"997", "4999"}}, {"size", K::Int, {"10", "100"}}}, trichotomy},
      {"prodpoly-vanishing", true, true,
       {{"k", K::Int, {"2", "3", "4"}}, {"xmax", K::Int, {"1000"}}, {"mmax", K::Int, {"1000000"}}},
       prodpoly_vanishing},
      {"tk-growth", false, false, {{"k", K::Int, {"3"}}, {"N", K::Int, {"1:40:1"}}}, tk_growth},
      {"w-ratio", false, true,
       {{"q", K::Int, {"499", "997"}}, {"M", K::Int, {"4", "8", "16", "32"}}, {"N", K::Int, {"4", "8", "16", "32"}}},
       w_ratio_check},
      {"v-ratio", false, true,
       {{"q", K::Int, {"499", "997"}}, {"M", K::Int, {"2", "4", "8"}}, {"N", K::Int, {"8", "16", "32"}}, {"r", K::Int, {"2"}}},
       v_ratio_check},
      {"salie-moment", false, true,
       {{"q", K::Int, {"101", "211", "401"}}, {"U0", K::Int, {"2", "5", "10"}}, {"r", K::Int, {"1", "2"}}},
       salie_moment},
      {"gamma-ratio", false, false, {{"q", K::Int, {"primes:3:5000:50"}}, {"exponent", K::Real, {"0.8"}}}, gamma_ratio_check},
  };
  return checks;
}

const CheckDef& find_check(const std::string& id) {
  for (const auto& c : registry())
    if (c.id == id) return c;
  throw ConfigError("unknown check '" + id + "'");
}

std::string format_number(double x, Kind kind) {
  if (kind == Kind::Int) return std::to_string(static_cast<long long>(x));
  return format_decimal(x);
}

double parse_number(const std::string& token, Kind kind, const std::string& key) {
  std::size_t pos = 0;
  double x = 0;
  try {
    x = kind == Kind::Int ? static_cast<double>(std::stoll(token, &pos)) : std::stod(token, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != token.size()) throw ConfigError("grid '" + key + "': cannot parse '" + token + "'");
  return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = s.find(sep, start);
    out.push_back(s.substr(start, end - start));
    if (end == std::string::npos) return out;
    start = end + 1;
  }
}

// Expands tokens into sorted, de-duplicated values.
std::vector<Value> expand(const std::string& key, Kind kind, const std::vector<std::string>& tokens) {
  std::vector<Value> out;
  for (const auto& token : tokens) {
    if (kind == Kind::Str) {
      out.push_back({0, token});
      continue;
    }
    const auto parts = split(token, ':');
    if (parts.size() >= 3 && parts[0] == "primes") {
      if (kind != Kind::Int || parts.size() > 4) throw ConfigError("grid '" + key + "': bad primes token '" + token + "'");
      const auto lo = static_cast<std::uint64_t>(parse_number(parts[1], Kind::Int, key));
      const auto hi = static_cast<std::uint64_t>(parse_number(parts[2], Kind::Int, key));
      const auto stride = parts.size() == 4 ? static_cast<std::uint64_t>(parse_number(parts[3], Kind::Int, key)) : 1;
      if (stride == 0) throw ConfigError("grid '" + key + "': zero stride");
      const auto primes = primes_in(lo, hi);
      for (std::size_t i = 0; i < primes.size(); i += stride) out.push_back({static_cast<double>(primes[i]), ""});
    } else if (parts.size() == 3) {
      const double lo = parse_number(parts[0], kind, key), hi = parse_number(parts[1], kind, key),
                   step = parse_number(parts[2], kind, key);
      if (!(step > 0)) throw ConfigError("grid '" + key + "': range step must be positive");
      const auto count = static_cast<std::uint64_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
      if (hi < lo) continue;
      if (count > 10'000'000) throw ConfigError("grid '" + key + "': range too long");
      for (std::uint64_t i = 0; i < count; ++i) out.push_back({lo + static_cast<double>(i) * step, ""});
    } else if (parts.size() == 1) {
      out.push_back({parse_number(token, kind, key), ""});
    } else {
      throw ConfigError("grid '" + key + "': bad token '" + token + "'");
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](const Value& a, const Value& b) { return !(a < b) && !(b < a); }),
            out.end());
  return out;
}

nlohmann::ordered_json token_json(const std::string& token) {
  return token;
}

}  // namespace

std::string library_version() { return MODROOTS_VERSION; }

std::vector<std::string> registered_checks() {
  std::vector<std::string> ids;
  for (const auto& c : registry()) ids.push_back(c.id);
  return ids;
}

std::vector<std::pair<std::string, std::vector<std::string>>> check_schema(const std::string& check) {
  const auto& def = find_check(check);
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  for (const auto& p : def.params) out.emplace_back(p.name, p.defaults);
  if (def.randomized) out.emplace_back("trials", std::vector<std::string>{"1"});
  return out;
}

SweepConfig parse_sweep_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  SweepConfig config;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "check") {
        config.check = value.get<std::string>();
      } else if (key == "seed") {
        config.seed = value.get<std::uint64_t>();
      } else if (key == "threads") {
        config.threads = value.get<unsigned>();
      } else if (key == "budgets") {
        for (const auto& [bk, bv] : value.items()) {
          if (bk != "work") throw ConfigError("config: unknown budget '" + bk + "'");
          config.work_budget = bv.get<std::uint64_t>();
        }
      } else if (key == "timing") {
        config.timing = value.get<bool>();
      } else if (key == "ratio_ceiling") {
        config.ratio_ceiling = value.get<double>();
      } else if (key == "grid") {
        for (const auto& [gk, gv] : value.items()) {
          auto& tokens = config.grid[gk];
          auto push = [&](const nlohmann::json& v) {
            if (v.is_string()) tokens.push_back(v.get<std::string>());
            else if (v.is_number_integer()) tokens.push_back(std::to_string(v.get<long long>()));
            else if (v.is_number()) tokens.push_back(format_decimal(v.get<double>()));
            else throw ConfigError("config: grid '" + gk + "' values must be numbers or strings");
          };
          if (gv.is_array()) {
            for (const auto& v : gv) push(v);
          } else {
            push(gv);
          }
        }
      } else {
        throw ConfigError("config: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return config;
}

std::string config_to_json(const SweepConfig& config) {
  nlohmann::ordered_json j;
  j["check"] = config.check;
  nlohmann::ordered_json grid = nlohmann::ordered_json::object();
  for (const auto& [k, tokens] : config.grid) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& t : tokens) arr.push_back(token_json(t));
    grid[k] = arr;
  }
  j["grid"] = grid;
  j["seed"] = config.seed;
  j["threads"] = config.threads;
  j["budgets"] = {{"work", config.work_budget}};
  j["timing"] = config.timing;
  j["ratio_ceiling"] = config.ratio_ceiling;
  return j.dump(2);
}

std::string manifest_to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["tool"] = "modroots";
  j["version"] = m.version;
  j["config"] = nlohmann::ordered_json::parse(config_to_json(m.config));
  j["totals"] = {{"rows", m.rows}, {"passed", m.passed}, {"failed", m.failed}, {"skipped", m.skipped}, {"reported", m.reported}};
  j["max_ratio"] = m.max_ratio ? nlohmann::ordered_json(format_decimal(*m.max_ratio)) : nlohmann::ordered_json(nullptr);
  j["max_ratio_params"] = m.max_ratio_params;
  j["ratio_ceiling"] = format_decimal(m.config.ratio_ceiling);
  j["below_ceiling"] = m.below_ceiling;
  j["exit_code"] = m.exit_code;
  return j.dump(2) + "\n";
}

SweepResult run_sweep(const SweepConfig& config) {
  const CheckDef& def = find_check(config.check);

  std::vector<ParamDef> axes = def.params;
  std::vector<std::vector<Value>> values;
  for (const auto& [key, tokens] : config.grid) {
    const bool known = key == "trials" ? def.randomized
                                       : std::any_of(axes.begin(), axes.end(), [&](const ParamDef& p) { return p.name == key; });
    if (!known) throw ConfigError("check '" + def.id + "' has no grid parameter '" + key + "'");
  }
  for (const auto& p : axes) {
    auto it = config.grid.find(p.name);
    values.push_back(expand(p.name, p.kind, it == config.grid.end() ? p.defaults : it->second));
  }
  if (def.randomized) {
    std::uint64_t trials = 1;
    if (auto it = config.grid.find("trials"); it != config.grid.end()) {
      if (it->second.size() != 1) throw ConfigError("grid 'trials' takes a single count");
      trials = static_cast<std::uint64_t>(parse_number(it->second[0], Kind::Int, "trials"));
    }
    axes.push_back({"trial", Kind::Int, {}});
    std::vector<Value> t;
    for (std::uint64_t i = 0; i < trials; ++i) t.push_back({static_cast<double>(i), ""});
    values.push_back(std::move(t));
  }

  // Cartesian product in axis order; each axis is sorted, so cells are too.
  std::vector<Cell> cells;
  std::size_t total = 1;
  for (const auto& v : values) total *= v.size();
  cells.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    Cell cell;
    cell.defs = &axes;
    std::size_t rem = idx;
    cell.values.resize(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
      cell.values[a] = values[a][rem % values[a].size()];
      rem /= values[a].size();
    }
    cells.push_back(std::move(cell));
  }

  std::vector<ReportRow> rows(cells.size());
  std::vector<double> ratios(cells.size(), std::nan(""));
  parallel_for(cells.size(), config.threads, [&](std::size_t i) {
    const Cell& cell = cells[i];
    Context ctx{SplitMix64::stream(config.seed, i), config.work_budget, {}, std::nan("")};
    ctx.row.check = def.id;
    for (std::size_t a = 0; a < axes.size(); ++a)
      ctx.row.params.emplace_back(axes[a].name, axes[a].kind == Kind::Str ? cell.values[a].text
                                                                            : format_number(cell.values[a].number, axes[a].kind));
    const auto start = std::chrono::steady_clock::now();
    auto skip = [&](const std::string& reason) {
      ctx.row.measured = "skipped:" + reason;
      ctx.row.bound.clear();
      ctx.row.ratio.clear();
      ctx.row.pass.reset();
      ctx.ratio_value = std::nan("");
    };
    try {
      def.run(cell, ctx);
    } catch (const Skip& s) {
      skip(s.reason);
    } catch (const BudgetExceeded&) {
      skip("budget");
    } catch (const CapacityError&) {
      skip("capacity");
    } catch (const ConfigError&) {
      throw;
    } catch (const InternalConsistencyError&) {
      ctx.row.measured = "error:consistency";
      ctx.row.pass = false;
    } catch (const InvalidParameter&) {
      skip("invalid");
    }
    if (config.timing)
      ctx.row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rows[i] = std::move(ctx.row);
    ratios[i] = ctx.ratio_value;
  });

  SweepResult result;
  auto& m = result.manifest;
  m.version = library_version();
  m.config = config;
  m.rows = rows.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.measured.rfind("skipped:", 0) == 0) ++m.skipped;
    else if (!r.pass) ++m.reported;
    else if (*r.pass) ++m.passed;
    else ++m.failed;
    if (!std::isnan(ratios[i]) && (!m.max_ratio || ratios[i] > *m.max_ratio)) {
      m.max_ratio = ratios[i];
      m.max_ratio_params = r.params_string();
    }
  }
  m.below_ceiling = !m.max_ratio || *m.max_ratio < config.ratio_ceiling;
  m.exit_code = m.failed ? kExitAssertionFailed : kExitOk;
  result.rows = std::move(rows);
  return result;
}

}  // namespace modroots
