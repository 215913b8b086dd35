#include "modroots/bounds.hpp"

#include <cmath>

#include "modroots/errors.hpp"

namespace modroots {

Rational rho_k(unsigned k) {
  if (k < 3 || k > 60) throw InvalidParameter("rho_k: k must lie in [3, 60]");
  return make_rational(1, (BigInt(7) << (k - 1)) - 9);
}

Rational theta_k(unsigned k) {
  if (k == 4) return make_rational(48, 47);
  return Rational(BigInt(1) << (k + 2)) * rho_k(k);
}

double t22_bound(double N, double q) { return (std::pow(N, 1.5) / std::sqrt(q) + 1) * N * N; }

double t42_bound(double N, double q) {
  return (std::pow(N, 0.625) / std::pow(q, 0.125) + std::pow(N, 8) / std::sqrt(q)) * std::pow(N, 6) +
         std::pow(N, 5);
}

double e2k_average_bound(double N, double Q) { return N * N + std::pow(N, 4) / Q; }

double e2k_set_bound(double L, double N, unsigned k) {
  return std::pow(L, theta_k(k).get_d()) * std::pow(N, 3 - rho_k(k).get_d());
}

double w_bound(double M, double N, double q) {
  const double qm = std::pow(q, -1.0 / 16);
  return std::pow(q, 0.125) * std::pow(N * M, 0.75) * (std::pow(N, 3.0 / 16) * qm + 1) *
         (std::pow(M, 3.0 / 16) * qm + 1);
}

double v_bound(double M, double N, double q, unsigned r) {
  if (r < 1) throw InvalidParameter("v_bound: r must be positive");
  const double s = 1.0 / (2.0 * r);
  return std::pow(q, 0.5 - s / 2) * std::pow(N, s) * std::pow(M, 1 - s) *
         (1 + std::sqrt(M * N) * std::pow(q, -0.5 + s / 2));
}

double salie_bound(double U, double q, unsigned r) {
  return std::sqrt(q) * std::pow(U, 2.0 * r) + q * std::pow(U, static_cast<double>(r));
}

double gamma_bound(double q, double P) {
  return std::pow(P, 15.0 / 16) + std::pow(q, 0.125) * std::pow(P, 0.75) +
         std::pow(q, 1.0 / 16) * std::pow(P, 69.0 / 80) + std::pow(q, 13.0 / 88) * std::pow(P, 0.75);
}

}  // namespace modroots
