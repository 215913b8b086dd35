#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "modroots/energy.hpp"
#include "modroots/equidist.hpp"
#include "modroots/errors.hpp"
#include "modroots/expsums.hpp"
#include "modroots/gowers.hpp"
#include "modroots/lattice.hpp"
#include "modroots/modular.hpp"
#include "modroots/prodpoly.hpp"
#include "modroots/report.hpp"
#include "modroots/rng.hpp"
#include "modroots/sweep.hpp"

using namespace modroots;

namespace {

struct Common {
  std::string config;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
  std::string format = "csv";
  bool timing = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON file with option values (flags override)");
  sub->add_option("--seed", c.seed, "PRNG seed");
  sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out, "output path (default stdout)");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

template <class T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::istringstream one(item);
    T x;
    if (!(one >> x) || !one.eof()) throw ConfigError("cannot parse list item '" + item + "'");
    out.push_back(x);
  }
  return out;
}

std::vector<Rational> parse_rationals(const std::string& text) {
  std::vector<Rational> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    Rational r;
    if (r.set_str(item, 10) != 0) throw ConfigError("cannot parse rational '" + item + "'");
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

std::string vec_text(const IntVec& v) {
  std::vector<std::string> parts;
  for (auto x : v) parts.push_back(std::to_string(x));
  return join(parts);
}

int emit_rows(const std::vector<ReportRow>& rows, const Common& c) {
  emit(rows, parse_format(c.format), c.out);
  for (const auto& r : rows)
    if (r.pass && !*r.pass) return kExitAssertionFailed;
  return kExitOk;
}

// Turns a flat JSON object into "--key value" tokens for the given subcommand.
std::vector<std::string> config_tokens(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  std::vector<std::string> tokens;
  for (const auto& [key, value] : j.items()) {
    if (key == "config") continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back("--" + key);
      continue;
    }
    tokens.push_back("--" + key);
    if (value.is_string()) tokens.push_back(value.get<std::string>());
    else if (value.is_array()) {
      std::vector<std::string> parts;
      for (const auto& v : value) parts.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      tokens.push_back(join(parts, ","));
    } else tokens.push_back(value.dump());
  }
  return tokens;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations and bound checks for roots of congruences"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag("--version", library_version());

  Common common;

  // energy
  auto* energy = app.add_subcommand("energy", "T_{nu,k}(N; j, q), max over j, or the prime average");
  unsigned e_nu = 2, e_k = 2;
  std::uint64_t e_N = 1, e_j = 1, e_q = 0, e_Q = 0;
  bool e_max = false, e_full = false;
  energy->add_option("--nu", e_nu, "tuple half-length (2 or 4 with k=2, else 2)");
  energy->add_option("--k", e_k, "root order");
  energy->add_option("--N", e_N, "interval length");
  energy->add_option("--j", e_j, "dilation");
  energy->add_option("--q", e_q, "prime modulus");
  energy->add_option("--Q", e_Q, "average over primes Q/2 <= q < Q instead");
  energy->add_flag("--max-j", e_max, "maximise E_k over j");
  energy->add_flag("--full-enumeration", e_full, "max over all j rather than coset representatives");
  add_common(energy, common);

  // gowers
  auto* gowers = app.add_subcommand("gowers", "Gowers norms and the two character lemmas");
  std::uint64_t g_q = 0;
  unsigned g_k = 2;
  std::string g_set;
  double g_density = -1;
  gowers->add_option("--q", g_q, "modulus")->required();
  gowers->add_option("--k", g_k, "norm order");
  gowers->add_option("--set", g_set, "comma separated residues");
  gowers->add_option("--density", g_density, "random set with this density (uses --seed)");
  add_common(gowers, common);

  // lattice
  auto* lattice = app.add_subcommand("lattice", "congruence lattice counts, minima and the trichotomy");
  std::uint64_t l_q = 0;
  std::string l_a, l_w, l_tri;
  lattice->add_option("--q", l_q, "modulus")->required();
  lattice->add_option("--a", l_a, "coefficients a1,...,ad");
  lattice->add_option("--w", l_w, "box half widths (rationals) w1,...,wd");
  lattice->add_option("--trichotomy", l_tri, "a,b,c,L,M,N");
  add_common(lattice, common);

  // poly
  auto* poly = app.add_subcommand("poly", "the polynomial F_k and its zero counts");
  unsigned p_k = 2;
  std::uint64_t p_count = 0;
  std::string p_eval, p_poly_out;
  bool p_profile = false;
  poly->add_option("--k", p_k, "order");
  poly->add_option("--count", p_count, "count zeros in [1, N]^4");
  poly->add_flag("--profile", p_profile, "with --count, report T_k(n) for every n <= N");
  poly->add_option("--eval", p_eval, "evaluate at n1,n2,n3,n4");
  poly->add_option("--poly-out", p_poly_out, "write F_k in text form");
  add_common(poly, common);

  // expsum
  auto* expsum = app.add_subcommand("expsum", "Gauss, Salie-type and bilinear sums");
  expsum->set_help_flag("--help", "Print this help message and exit");
  std::string x_kind = "gauss";
  std::uint64_t x_q = 0, x_a = 1, x_h = 0, x_b = 1, x_M = 2, x_N = 2, x_U0 = 1, x_c = 1, x_m = 1, x_n = 1;
  unsigned x_r = 2;
  expsum->add_option("--kind", x_kind, "gauss, w, v, salie or fourier")
      ->check(CLI::IsMember({"gauss", "w", "v", "salie", "fourier"}));
  expsum->add_option("--q", x_q, "prime modulus")->required();
  expsum->add_option("--a", x_a);
  expsum->add_option("--b", x_b);
  expsum->add_option("--h", x_h);
  expsum->add_option("--c", x_c);
  expsum->add_option("--M", x_M);
  expsum->add_option("--N", x_N);
  expsum->add_option("--m", x_m);
  expsum->add_option("--n", x_n);
  expsum->add_option("--U0", x_U0);
  expsum->add_option("--r", x_r);
  add_common(expsum, common);

  // discrepancy
  auto* disc = app.add_subcommand("discrepancy", "extreme discrepancy of a multiset or of Gamma_q(P)");
  std::string d_points;
  std::uint64_t d_q = 0, d_P = 0;
  disc->add_option("--points", d_points, "comma separated rationals in [0, 1)");
  disc->add_option("--q", d_q, "prime modulus for Gamma_q(P)");
  disc->add_option("--P", d_P, "prime bound for Gamma_q(P)");
  add_common(disc, common);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a registered check over a parameter grid");
  std::string s_check, s_manifest;
  std::vector<std::string> s_grid;
  std::uint64_t s_budget = 0;
  double s_ceiling = 0;
  bool s_list = false;
  sweep->add_option("--config", common.config, "sweep config JSON (flags override)");
  sweep->add_option("--check", s_check, "registered check id");
  sweep->add_option("--grid", s_grid, "KEY=v1,v2,lo:hi:step,primes:lo:hi (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  sweep->add_option("--seed", common.seed, "PRNG seed");
  sweep->add_option("--threads", common.threads, "worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--budget", s_budget, "per-cell work budget");
  sweep->add_option("--ratio-ceiling", s_ceiling, "sanity ceiling for the manifest");
  sweep->add_flag("--timing", common.timing, "fill the ms column");
  sweep->add_option("--out", common.out, "report path (default stdout)");
  sweep->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--manifest", s_manifest, "manifest path (default <out>.manifest.json, or stderr)");
  sweep->add_flag("--list", s_list, "list checks and their grid parameters");

  // Config files for the single-operation subcommands are spliced in ahead of the flags.
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (!args.empty() && args[0] != "sweep") {
      for (std::size_t i = 1; i + 1 < args.size(); ++i) {
        if (args[i] == "--config") {
          auto tokens = config_tokens(args[i + 1]);
          args.insert(args.begin() + 1, tokens.begin(), tokens.end());
          break;
        }
      }
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfigError;
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  try {
    if (*energy) {
      ReportRow row;
      if (e_Q) {
        row.check = "energy-average";
        row.params = {{"k", std::to_string(e_k)}, {"N", std::to_string(e_N)}, {"Q", std::to_string(e_Q)}};
        AverageEnergyOptions opt;
        opt.full_enumeration = e_full;
        opt.threads = common.threads;
        const auto avg = avg_energy_over_primes(e_k, e_N, e_Q, opt);
        row.measured = format_integer(avg.total);
        row.bound = format_rational(avg.per_Q);
        row.ratio = format_decimal(avg.value);
      } else {
        const auto q = PrimeModulus::make(e_q);
        if (e_max) {
          row.check = "energy-max";
          row.params = {{"k", std::to_string(e_k)}, {"N", std::to_string(e_N)}, {"q", std::to_string(e_q)}};
          const auto m = max_energy_over_j(e_k, e_N, q, e_full);
          row.measured = format_integer(m.value);
          row.params.emplace_back("argmax", std::to_string(m.argmax));
        } else {
          row.check = "energy";
          row.params = {{"nu", std::to_string(e_nu)},
                        {"k", std::to_string(e_k)},
                        {"N", std::to_string(e_N)},
                        {"j", std::to_string(e_j)},
                        {"q", std::to_string(e_q)}};
          row.measured = format_integer(energy_T(EnergyQuery{.nu = e_nu, .k = e_k, .N = e_N, .j = e_j, .q = q}));
        }
      }
      return emit_rows({row}, common);
    }

    if (*gowers) {
      IndicatorSet A(g_q);
      if (g_density >= 0) {
        SplitMix64 rng(common.seed);
        for (std::uint64_t x = 0; x < g_q; ++x)
          if (rng.unit() < g_density) A.insert(x);
      } else {
        for (auto x : parse_list<std::uint64_t>(g_set)) A.insert(x % g_q);
      }
      GowersOptions opt;
      opt.threads = common.threads;
      const auto both = gowers_norm_both(A, g_k, opt);
      const auto lemmas = check_char_lemmas(A, g_k, opt);
      ReportRow row;
      row.check = "gowers";
      row.params = {{"q", std::to_string(g_q)}, {"k", std::to_string(g_k)}, {"size", std::to_string(A.cardinality())}};
      row.measured = format_integer(both.via_recursion);
      row.bound = format_integer(both.via_square_sum);
      if (!lemmas.vacuous && lemmas.energy_lower_bound.applicable)
        row.ratio = format_decimal(lemmas.energy_lower_bound.ratio);
      row.pass = both.via_recursion == both.via_square_sum && lemmas.holds();
      return emit_rows({row}, common);
    }

    if (*lattice) {
      std::vector<ReportRow> rows;
      if (!l_tri.empty()) {
        const auto v = parse_list<std::int64_t>(l_tri);
        if (v.size() != 6) throw ConfigError("--trichotomy expects a,b,c,L,M,N");
        const auto t = trichotomy_check(v[0], v[1], v[2], v[3], v[4], v[5], l_q);
        ReportRow row;
        row.check = "trichotomy";
        row.params = {{"q", std::to_string(l_q)}, {"abc", l_tri}};
        row.measured = format_integer(t.K);
        row.ratio = t.cases();
        if (t.witness)
          row.bound = "lambda=" + std::to_string(t.witness->lambda) + " lmn=" + std::to_string(t.witness->l) + " " +
                      std::to_string(t.witness->m) + " " + std::to_string(t.witness->n);
        row.pass = t.any();
        rows.push_back(row);
      }
      if (!l_a.empty()) {
        const auto L = CongruenceLattice::make(parse_list<std::int64_t>(l_a), l_q);
        BoxBody B{parse_rationals(l_w)};
        if (B.dimension() != L.dimension()) throw ConfigError("--w must have as many entries as --a");
        const auto g = verify_geometry(L, B);
        auto row_for = [&](const char* name) {
          ReportRow row;
          row.check = name;
          row.params = {{"q", std::to_string(l_q)}, {"a", l_a}, {"w", l_w}};
          return row;
        };
        ReportRow count = row_for("lattice-count");
        count.measured = format_integer(g.points);
        count.bound = format_rational(g.counting_rhs);
        rows.push_back(count);
        for (const auto* which : {&g.primal, &g.dual}) {
          if (which->degenerate) continue;
          for (std::size_t i = 0; i < which->lambdas.size(); ++i) {
            ReportRow row = row_for(which == &g.primal ? "lattice-minimum" : "dual-minimum");
            row.params.emplace_back("j", std::to_string(i + 1));
            row.params.emplace_back("witness", vec_text(which->witnesses[i]));
            row.measured = format_rational(which->lambdas[i]);
            rows.push_back(row);
          }
        }
        ReportRow summary = row_for("lattice-geometry");
        summary.measured = format_rational(g.minkowski_lhs);
        summary.bound = format_rational(g.minkowski_rhs);
        if (!g.degenerate()) summary.ratio = format_decimal(g.slack());
        summary.pass = g.holds();
        rows.push_back(summary);
      }
      if (rows.empty()) throw ConfigError("lattice: give --a/--w or --trichotomy");
      return emit_rows(rows, common);
    }

    if (*poly) {
      const IntPoly F = construct_Fk(p_k);
      if (!p_poly_out.empty()) write_file(p_poly_out, F.to_text());
      std::vector<ReportRow> rows;
      ReportRow info;
      info.check = "poly";
      info.params = {{"k", std::to_string(p_k)}};
      info.measured = std::to_string(F.terms.size());
      info.bound = std::to_string(F.degree());
      info.pass = F.homogeneous() && F.degree() == static_cast<long>(p_k * p_k);
      rows.push_back(info);
      if (!p_eval.empty()) {
        const auto v = parse_list<std::int64_t>(p_eval);
        if (v.size() != 4) throw ConfigError("--eval expects n1,n2,n3,n4");
        ReportRow row;
        row.check = "poly-eval";
        row.params = {{"k", std::to_string(p_k)}, {"n", p_eval}};
        row.measured = format_integer(evaluate_Fk(F, {from_i64(v[0]), from_i64(v[1]), from_i64(v[2]), from_i64(v[3])}));
        rows.push_back(row);
      }
      if (p_count) {
        ZeroCountOptions opt;
        opt.threads = common.threads;
        std::vector<BigInt> counts;
        if (p_profile) {
          counts = zero_count_profile(F, p_count, opt);
        } else {
          counts.assign(p_count + 1, BigInt(0));
          counts[p_count] = count_zeros(F, p_count, opt);
        }
        for (std::uint64_t n = p_profile ? 1 : p_count; n <= p_count; ++n) {
          ReportRow row;
          row.check = "tk-zeros";
          row.params = {{"k", std::to_string(p_k)}, {"N", std::to_string(n)}};
          row.measured = format_integer(counts[n]);
          row.bound = std::to_string(n * n);
          row.ratio = format_decimal(counts[n].get_d() / static_cast<double>(n * n));
          rows.push_back(row);
        }
      }
      return emit_rows(rows, common);
    }

    if (*expsum) {
      const auto q = PrimeModulus::make(x_q);
      ReportRow row;
      row.check = "expsum-" + x_kind;
      row.params = {{"q", std::to_string(x_q)}};
      auto complex_text = [](Complex z) { return format_decimal(z.real()) + (z.imag() < 0 ? "" : "+") + format_decimal(z.imag()) + "i"; };
      if (x_kind == "gauss") {
        const auto g = gauss_sum(x_b, x_h, q);
        row.params.insert(row.params.end(), {{"b", std::to_string(x_b)}, {"h", std::to_string(x_h)}});
        row.measured = complex_text(g.direct);
        row.bound = complex_text(g.value);
        row.ratio = format_decimal(std::abs(g.direct) / std::sqrt(static_cast<double>(x_q)));
        row.pass = g.closed_form;
      } else if (x_kind == "fourier") {
        const CharacterTable table(q);
        const auto f = fourier_coefficient(x_a, x_h, x_m, x_n, table);
        row.params.insert(row.params.end(), {{"a", std::to_string(x_a)}, {"h", std::to_string(x_h)},
                                             {"m", std::to_string(x_m)}, {"n", std::to_string(x_n)}});
        row.measured = complex_text(f.direct);
        row.bound = complex_text(f.closed);
        row.pass = f.agree;
      } else if (x_kind == "salie") {
        const auto s = salie_moment_check(x_c, x_U0, x_r, q);
        row.params.insert(row.params.end(), {{"c", std::to_string(x_c)}, {"U0", std::to_string(x_U0)}, {"r", std::to_string(x_r)}});
        row.measured = format_decimal(s.moment);
        row.bound = format_decimal(s.bound);
        row.ratio = format_decimal(s.ratio);
      } else {
        BilinearQuery query{.a = x_a, .h = x_h, .M = x_M, .N = x_N, .q = q, .alpha = unit_weights(x_M),
                            .beta = unit_weights(x_N), .threads = common.threads};
        row.params.insert(row.params.end(), {{"a", std::to_string(x_a)}, {"h", std::to_string(x_h)},
                                             {"M", std::to_string(x_M)}, {"N", std::to_string(x_N)}});
        if (x_kind == "w") {
          row.measured = complex_text(W_sum(query));
          row.ratio = format_decimal(w_ratio(query));
        } else {
          const SmoothBump phi(static_cast<double>(x_N));
          row.params.emplace_back("r", std::to_string(x_r));
          row.measured = complex_text(V_sum(query, phi));
          row.ratio = format_decimal(v_ratio(query, phi, x_r));
        }
      }
      return emit_rows({row}, common);
    }

    if (*disc) {
      ReportRow row;
      row.check = "discrepancy";
      DiscrepancyResult result;
      if (d_q) {
        const auto q = PrimeModulus::make(d_q);
        const auto g = gamma_qP(q, d_P);
        row.check = "gamma";
        row.params = {{"q", std::to_string(d_q)}, {"P", std::to_string(d_P)}, {"points", std::to_string(g.points.size())}};
        result = g.discrepancy;
      } else {
        const PointMultiset P(parse_rationals(d_points));
        row.params = {{"points", std::to_string(P.size())}};
        result = discrepancy(P);
      }
      row.measured = format_rational(result.value);
      const auto& w = result.witness;
      row.bound = std::string("[") + format_rational(w.alpha) + (w.alpha_plus ? "+" : "") + "," + format_rational(w.beta) +
                  (w.beta_plus ? "+" : "") + ")" + (w.excess ? " excess" : " deficit");
      return emit_rows({row}, common);
    }

    if (*sweep) {
      if (s_list) {
        for (const auto& id : registered_checks()) {
          std::printf("%s", id.c_str());
          for (const auto& [name, defaults] : check_schema(id)) std::printf(" %s=%s", name.c_str(), join(defaults, ",").c_str());
          std::printf("\n");
        }
        return kExitOk;
      }
      SweepConfig config;
      if (!common.config.empty()) config = parse_sweep_config(read_file(common.config));
      if (sweep->count("--check")) config.check = s_check;
      if (sweep->count("--seed")) config.seed = common.seed;
      if (sweep->count("--threads")) config.threads = common.threads;
      if (sweep->count("--budget")) config.work_budget = s_budget;
      if (sweep->count("--ratio-ceiling")) config.ratio_ceiling = s_ceiling;
      if (common.timing) config.timing = true;
      for (const auto& g : s_grid) {
        const auto eq = g.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("--grid expects KEY=VALUES, got '" + g + "'");
        config.grid[g.substr(0, eq)] = eq + 1 < g.size() ? parse_list<std::string>(g.substr(eq + 1)) : std::vector<std::string>{};
      }
      if (config.check.empty()) throw ConfigError("sweep: no check given");
      const auto result = run_sweep(config);
      emit(result.rows, parse_format(common.format), common.out);
      const std::string manifest = manifest_to_json(result.manifest);
      if (!s_manifest.empty()) write_file(s_manifest, manifest);
      else if (!common.out.empty()) write_file(common.out + ".manifest.json", manifest);
      else std::fputs(manifest.c_str(), stderr);
      return result.manifest.exit_code;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const InvalidParameter& e) {
    std::fprintf(stderr, "invalid parameter: %s\n", e.what());
    return kExitConfigError;
  } catch (const InternalConsistencyError& e) {
    std::fprintf(stderr, "consistency failure: %s\n", e.what());
    return kExitAssertionFailed;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kExitOk;
}
