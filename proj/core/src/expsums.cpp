#include "modroots/expsums.hpp"

#include <cmath>
#include <numbers>

#include "modroots/bounds.hpp"
#include "modroots/concurrency.hpp"
#include "modroots/errors.hpp"
#include "modroots/summation.hpp"

namespace modroots {

namespace {

void check_weights(const std::vector<Complex>& w, std::uint64_t size, const char* name) {
  if (w.size() != size) {
    throw InvalidParameter(std::string("expsums: ") + name + " has " + std::to_string(w.size()) +
                           " entries, dyadic range has " + std::to_string(size));
  }
}

void check_sup_norm(const std::vector<Complex>& w) {
  for (const auto& x : w)
    if (std::abs(x) > 1 + 1e-12) throw InvalidParameter("expsums: weight with modulus above 1");
}

}  // namespace

DyadicRange dyadic(std::uint64_t M) { return {(M + 1) / 2, M}; }

std::vector<Complex> unit_weights(std::uint64_t M) { return std::vector<Complex>(dyadic(M).size(), 1.0); }

SmoothBump::SmoothBump(double N) : N_(N) {
  if (!(N > 0)) throw InvalidParameter("SmoothBump: scale must be positive");
}

double SmoothBump::derivative(unsigned j, double x) const {
  if (!(x > N_ && x < 2 * N_)) return 0.0;
  const double t = (2 * x - 3 * N_) / N_;
  // g(t) = 1 - 1/(1 - t^2); g^(i) = -i!/2 [(1-t)^-(i+1) + (-1)^i (1+t)^-(i+1)].
  std::vector<double> g(j + 1, 0.0);
  double fact = 1;
  for (unsigned i = 1; i <= j; ++i) {
    fact *= i;
    const double sign = (i % 2) ? -1.0 : 1.0;
    g[i] = -0.5 * fact * (std::pow(1 - t, -static_cast<double>(i + 1)) + sign * std::pow(1 + t, -static_cast<double>(i + 1)));
  }
  // h = exp(g): h^(n) = sum_{i<n} C(n-1, i) g^(i+1) h^(n-1-i).
  std::vector<double> h(j + 1, 0.0);
  h[0] = std::exp(1 - 1 / (1 - t * t));
  for (unsigned n = 1; n <= j; ++n) {
    double binom = 1, s = 0;
    for (unsigned i = 0; i < n; ++i) {
      s += binom * g[i + 1] * h[n - 1 - i];
      binom = binom * (n - 1 - i) / (i + 1);
    }
    h[n] = s;
  }
  return h[j] * std::pow(2 / N_, static_cast<double>(j));
}

double SmoothBump::derivative_constant(unsigned j, unsigned samples) const {
  double best = 0;
  for (unsigned s = 1; s < samples; ++s) {
    const double x = N_ + N_ * s / samples;
    best = std::max(best, std::pow(x, static_cast<double>(j)) * std::fabs(derivative(j, x)));
  }
  return best;
}

RootSumTable::RootSumTable(Residue h, const CharacterTable& table) {
  const std::uint64_t q = table.modulus().value();
  values_.assign(q, 0.0);
  values_[0] = 1.0;
  for (std::uint64_t x = 1; x < q; ++x) values_[mul_mod(x, x, q)] += table.e(mul_mod(h % q, x, q));
}

Complex W_sum(const BilinearQuery& query) {
  const auto rm = dyadic(query.M), rn = dyadic(query.N);
  check_weights(query.alpha, rm.size(), "alpha");
  check_weights(query.beta, rn.size(), "beta");
  const std::uint64_t q = query.q.value();
  if (query.a % q == 0) throw InvalidParameter("W_sum: a must be nonzero mod q");
  const CharacterTable table(query.q);
  const RootSumTable roots(query.h, table);
  std::vector<Complex> partial(rm.size());
  parallel_for(rm.size(), query.threads, [&](std::size_t i) {
    const std::uint64_t m = rm.lo + i;
    const std::uint64_t am = mul_mod(query.a % q, m % q, q);
    CompensatedComplexSum s;
    for (std::uint64_t n = rn.lo; n < rn.hi; ++n) s.add(query.beta[n - rn.lo] * roots(mul_mod(am, n % q, q)));
    partial[i] = query.alpha[i] * s.value();
  });
  CompensatedComplexSum total;
  for (const auto& p : partial) total.add(p);
  return total.value();
}

Complex V_sum(const BilinearQuery& query, const SmoothBump& phi) {
  const auto rm = dyadic(query.M);
  check_weights(query.alpha, rm.size(), "alpha");
  const std::uint64_t q = query.q.value();
  if (query.a % q == 0) throw InvalidParameter("V_sum: a must be nonzero mod q");
  const CharacterTable table(query.q);
  const RootSumTable roots(query.h, table);
  const double Nphi = phi.scale();
  const auto n_lo = static_cast<std::uint64_t>(std::floor(Nphi)) + 1;
  const auto n_hi = static_cast<std::uint64_t>(std::ceil(2 * Nphi));  // exclusive
  std::vector<double> weights;
  for (std::uint64_t n = n_lo; n < n_hi; ++n) weights.push_back(phi(static_cast<double>(n)));

  std::vector<Complex> partial(rm.size());
  parallel_for(rm.size(), query.threads, [&](std::size_t i) {
    const std::uint64_t m = rm.lo + i;
    const std::uint64_t am = mul_mod(query.a % q, m % q, q);
    CompensatedComplexSum s;
    for (std::uint64_t n = n_lo; n < n_hi; ++n) s.add(weights[n - n_lo] * roots(mul_mod(am, n % q, q)));
    partial[i] = query.alpha[i] * s.value();
  });
  CompensatedComplexSum total;
  for (const auto& p : partial) total.add(p);
  return total.value();
}

SalieMoment salie_moment_check(Residue c, std::uint64_t U0, unsigned r, const PrimeModulus& q) {
  if (r < 1) throw InvalidParameter("salie_moment_check: r must be positive");
  const std::uint64_t p = q.value();
  if (c % p == 0) throw InvalidParameter("salie_moment_check: c must be nonzero mod q");
  if (U0 > p) throw InvalidParameter("salie_moment_check: U0 must not exceed q");
  const CharacterTable table(q);
  // term[y] = chi(y) e_q(c / y), zero at y = 0.
  std::vector<Complex> term(p, 0.0);
  for (std::uint64_t y = 1; y < p; ++y) term[y] = static_cast<double>(table.chi(y)) * table.e(mul_mod(c % p, inv_mod(y, p), p));
  CompensatedSum moment;
  for (std::uint64_t lambda = 0; lambda < p; ++lambda) {
    CompensatedComplexSum s;
    for (std::uint64_t u = 1; u <= U0; ++u) s.add(term[(lambda + u) % p]);
    moment.add(std::pow(std::norm(s.value()), static_cast<double>(r)));
  }
  SalieMoment out;
  out.moment = moment.value();
  out.bound = salie_bound(static_cast<double>(U0), static_cast<double>(p), r);
  out.ratio = out.bound > 0 ? out.moment / out.bound : 0.0;
  return out;
}

FourierCoefficient fourier_coefficient(Residue a, Residue h, std::uint64_t m, std::uint64_t n,
                                       const CharacterTable& table) {
  const std::uint64_t q = table.modulus().value();
  const std::uint64_t am = mul_mod(a % q, m % q, q);
  if (am == 0 || n % q == 0) throw InvalidParameter("fourier_coefficient: am and n must be nonzero mod q");
  const RootSumTable roots(h, table);
  CompensatedComplexSum s;
  for (std::uint64_t lambda = 0; lambda < q; ++lambda)
    s.add(roots(mul_mod(am, lambda, q)) * table.e(mul_mod(lambda, n % q, q)));
  FourierCoefficient out;
  out.direct = s.value() / std::sqrt(static_cast<double>(q));
  const std::uint64_t h2 = mul_mod(h % q, h % q, q);
  const std::uint64_t phase = sub_mod(0, mul_mod(mul_mod(am, inv_mod(mul_mod(4 % q, n % q, q), q), q), h2, q), q);
  out.closed = table.eps() * static_cast<double>(table.chi(mul_mod(am, n % q, q))) * table.e(phase);
  out.agree = std::abs(out.direct - out.closed) <= kComplexTolerance * std::max(1.0, std::abs(out.closed));
  return out;
}

double w_ratio(const BilinearQuery& query) {
  check_sup_norm(query.alpha);
  check_sup_norm(query.beta);
  return std::abs(W_sum(query)) /
         w_bound(static_cast<double>(query.M), static_cast<double>(query.N), static_cast<double>(query.q.value()));
}

double v_ratio(const BilinearQuery& query, const SmoothBump& phi, unsigned r) {
  check_sup_norm(query.alpha);
  return std::abs(V_sum(query, phi)) /
         v_bound(static_cast<double>(query.M), phi.scale(), static_cast<double>(query.q.value()), r);
}

}  // namespace modroots
