#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "modroots/indicator_set.hpp"
#include "modroots/modular.hpp"
#include "modroots/numeric.hpp"

namespace modroots {

enum class ConvolutionPath { Automatic, Naive, Ntt };

// Lengths at or below this use the direct O(q^2) sum under Automatic.
inline constexpr std::size_t kNaiveConvolutionThreshold = 512;

// w(d) = sum_x u(x) v(d - x mod q), exact.
std::vector<BigInt> cyclic_convolve(std::span<const BigInt> u, std::span<const BigInt> v,
                                    ConvolutionPath path = ConvolutionPath::Automatic);

// Exact representation counts over Z_q.
struct RepFn {
  std::uint64_t q = 0;
  std::vector<BigInt> counts;

  BigInt total() const;
  BigInt sum_of_squares() const;
};

// counts(d) = #{(a1, a2) in A^2 : a1 - a2 == d}.
RepFn diff_rep(const IndicatorSet& A, ConvolutionPath path = ConvolutionPath::Automatic);

// counts(x) = #{(a1..a_nu) in A^nu : a1 + ... + a_nu == x}; nu >= 1.
RepFn sum_rep(const IndicatorSet& A, unsigned nu,
              ConvolutionPath path = ConvolutionPath::Automatic);

// sum_x s_nu(x)^2: solutions of a1+..+a_nu = a_{nu+1}+..+a_{2nu} in A.
BigInt additive_energy(const IndicatorSet& A, unsigned nu = 2,
                       ConvolutionPath path = ConvolutionPath::Automatic);

struct EnergyQuery {
  unsigned nu = 2;
  unsigned k = 2;
  std::uint64_t N = 1;
  Residue j = 1;
  PrimeModulus q;

  // Throws InvalidParameter on nu, k < 1, N outside [1, q], or j == 0.
  void validate() const;
};

// T_{nu,k}(N; j, q) over A = preimage_set(j, k, N, q).
BigInt energy_T(const EnergyQuery& query, ConvolutionPath path = ConvolutionPath::Automatic);

// E_k(targets; q): energy of { b in F_q : b^k in targets }.
BigInt energy_set(const IndicatorSet& targets, unsigned k, const PrimeModulus& q);

// { b in F_q : b^k in targets }.
IndicatorSet root_set(const IndicatorSet& targets, unsigned k, const PrimeModulus& q);

// g^0, g^1, ..., g^{d-1} for a generator g and d = gcd(k, q - 1): one
// representative per coset of the k-th powers in F_q^*.
std::vector<Residue> power_coset_representatives(unsigned k, const PrimeModulus& q);

struct MaxEnergy {
  BigInt value;
  Residue argmax = 1;
};

// max_j E_k(N; j, q) over coset representatives, or over every j in
// F_q^* when full_enumeration is set. N >= q is clamped to q.
MaxEnergy max_energy_over_j(unsigned k, std::uint64_t N, const PrimeModulus& q,
                            bool full_enumeration = false);

struct AverageEnergyOptions {
  bool full_enumeration = false;
  unsigned threads = 1;
};

struct PrimeContribution {
  std::uint64_t q;
  MaxEnergy max;
};

struct AverageEnergy {
  BigInt total;      // sum over primes Q/2 <= q < Q of max_j E_k(N; j, q)
  Rational per_Q;    // total / Q
  double value = 0;  // (log Q) * total / Q
  std::vector<PrimeContribution> primes;  // ascending q
};

AverageEnergy avg_energy_over_primes(unsigned k, std::uint64_t N, std::uint64_t Q,
                                     const AverageEnergyOptions& options = {});

}  // namespace modroots
