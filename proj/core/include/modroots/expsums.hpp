#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "modroots/modular.hpp"

namespace modroots {

using Complex = std::complex<double>;

// Dyadic range m ~ M: ceil(M/2) <= m < M.
struct DyadicRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;  // exclusive
  std::uint64_t size() const { return hi > lo ? hi - lo : 0; }
};
DyadicRange dyadic(std::uint64_t M);

// phi(x) = exp(1 - 1/(1 - t^2)) with t = (2x - 3N)/N on (N, 2N), else 0.
class SmoothBump {
 public:
  explicit SmoothBump(double N);

  double scale() const { return N_; }
  double operator()(double x) const { return derivative(0, x); }
  double derivative(unsigned j, double x) const;
  // max of x^j |phi^(j)(x)| over an even grid of the support.
  double derivative_constant(unsigned j, unsigned samples = 20000) const;

 private:
  double N_;
};

struct BilinearQuery {
  Residue a = 1;
  Residue h = 0;
  std::uint64_t M = 2;
  std::uint64_t N = 2;
  PrimeModulus q;
  std::vector<Complex> alpha;  // alpha[m - dyadic(M).lo]
  std::vector<Complex> beta;   // beta[n - dyadic(N).lo]; unused by V
  unsigned threads = 1;
};

std::vector<Complex> unit_weights(std::uint64_t M);

// x -> sum_{x^2 = v} e_q(h x) for every v, built once per (h, q).
class RootSumTable {
 public:
  RootSumTable(Residue h, const CharacterTable& table);
  Complex operator()(Residue v) const { return values_[v]; }

 private:
  std::vector<Complex> values_;
};

// sum_{m ~ M} sum_{n ~ N} alpha_m beta_n sum_{x^2 = amn} e_q(hx)
Complex W_sum(const BilinearQuery& query);

// sum_{m ~ M} sum_{N < n < 2N} alpha_m phi(n) sum_{x^2 = amn} e_q(hx), with
// N taken from the bump.
Complex V_sum(const BilinearQuery& query, const SmoothBump& phi);

struct SalieMoment {
  double moment = 0;  // sum_lambda |sum_{1<=u<=U0} chi(lambda+u) e_q(c / (lambda+u))|^(2r)
  double bound = 0;   // q^(1/2) U0^(2r) + q U0^r
  double ratio = 0;
};

SalieMoment salie_moment_check(Residue c, std::uint64_t U0, unsigned r, const PrimeModulus& q);

struct FourierCoefficient {
  Complex direct;  // q^(-1/2) sum_lambda f_m(lambda) e_q(lambda n)
  Complex closed;  // eps_q chi(amn) e_q(-am (4n)^(-1) h^2)
  bool agree = false;
};

// f_m(lambda) = sum_{x^2 = a m lambda} e_q(hx); needs am, n nonzero mod q.
FourierCoefficient fourier_coefficient(Residue a, Residue h, std::uint64_t m, std::uint64_t n,
                                       const CharacterTable& table);

// |W| / w_bound and |V| / v_bound; weights must have sup-norm <= 1.
double w_ratio(const BilinearQuery& query);
double v_ratio(const BilinearQuery& query, const SmoothBump& phi, unsigned r);

}  // namespace modroots
