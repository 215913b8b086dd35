#pragma once

#include <cstdint>
#include <string>

#include "modroots/numeric.hpp"

namespace modroots {

// Right-hand sides of the verified bounds with every o(1) exponent set to
// zero. All return doubles; the exponents themselves are exact.

// 1 / (7 * 2^(k-1) - 9), k >= 3.
Rational rho_k(unsigned k);
// 2^(k+2) rho_k, except 48/47 for k = 4.
Rational theta_k(unsigned k);

// (N^(3/2) / q^(1/2) + 1) N^2
double t22_bound(double N, double q);
// (N^(5/8) / q^(1/8) + N^8 / q^(1/2)) N^6 + N^5
double t42_bound(double N, double q);
// N^2 + N^4 / Q
double e2k_average_bound(double N, double Q);
// L^theta_k N^(3 - rho_k)
double e2k_set_bound(double L, double N, unsigned k);
// q^(1/8) (NM)^(3/4) (N^(3/16) q^(-1/16) + 1) (M^(3/16) q^(-1/16) + 1)
double w_bound(double M, double N, double q);
// q^(1/2 - 1/4r) N^(1/2r) M^(1 - 1/2r) (1 + (MN)^(1/2) q^(-1/2 + 1/4r))
double v_bound(double M, double N, double q, unsigned r);
// q^(1/2) U^(2r) + q U^r
double salie_bound(double U, double q, unsigned r);
// P^(15/16) + q^(1/8) P^(3/4) + q^(1/16) P^(69/80) + q^(13/88) P^(3/4)
double gamma_bound(double q, double P);

}  // namespace modroots
