#include "modroots/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "modroots/concurrency.hpp"
#include "modroots/errors.hpp"
#include "modroots/ntt.hpp"

namespace modroots {

namespace {

bool fits_i64(const BigInt& x) { return mpz_fits_slong_p(x.get_mpz_t()) != 0; }

std::vector<BigInt> naive_convolve(std::span<const BigInt> u, std::span<const BigInt> v) {
  const std::size_t n = u.size();
  std::vector<BigInt> out(n);
  // Machine-word accumulation whenever |u|, |v| < 2^40 and n < 2^40 keeps
  // every partial sum inside 128 bits.
  const bool small = std::all_of(u.begin(), u.end(), [](const BigInt& x) { return fits_i64(x) && abs(x) < (BigInt(1) << 40); }) &&
                     std::all_of(v.begin(), v.end(), [](const BigInt& x) { return fits_i64(x) && abs(x) < (BigInt(1) << 40); });
  if (small) {
    std::vector<std::int64_t> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = u[i].get_si();
      b[i] = v[i].get_si();
    }
    std::vector<__int128> acc(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
      if (a[x] == 0) continue;
      for (std::size_t y = 0; y < n; ++y) {
        if (b[y] == 0) continue;
        std::size_t d = x + y;
        if (d >= n) d -= n;
        acc[d] += static_cast<__int128>(a[x]) * b[y];
      }
    }
    for (std::size_t d = 0; d < n; ++d) {
      const __int128 w = acc[d];
      const bool negative = w < 0;
      unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(w) : static_cast<unsigned __int128>(w);
      BigInt value = from_u64(static_cast<std::uint64_t>(mag >> 64));
      value <<= 64;
      value += from_u64(static_cast<std::uint64_t>(mag));
      out[d] = negative ? BigInt(-value) : value;
    }
    return out;
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (sgn(u[x]) == 0) continue;
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t d = x + y;
      if (d >= n) d -= n;
      mpz_addmul(out[d].get_mpz_t(), u[x].get_mpz_t(), v[y].get_mpz_t());
    }
  }
  return out;
}

RepFn make_rep(std::uint64_t q, std::vector<BigInt> counts) {
  RepFn r;
  r.q = q;
  r.counts = std::move(counts);
  return r;
}

}  // namespace

std::vector<BigInt> cyclic_convolve(std::span<const BigInt> u, std::span<const BigInt> v,
                                    ConvolutionPath path) {
  if (u.size() != v.size()) {
    throw InvalidParameter("cyclic_convolve: length mismatch (" + std::to_string(u.size()) + " vs " +
                           std::to_string(v.size()) + ")");
  }
  switch (path) {
    case ConvolutionPath::Naive:
      return naive_convolve(u, v);
    case ConvolutionPath::Ntt:
      return ntt::cyclic_convolve_exact(u, v);
    case ConvolutionPath::Automatic:
      break;
  }
  if (u.size() <= kNaiveConvolutionThreshold) return naive_convolve(u, v);
  try {
    return ntt::cyclic_convolve_exact(u, v);
  } catch (const CapacityError&) {
    return naive_convolve(u, v);
  }
}

BigInt RepFn::total() const {
  BigInt s = 0;
  for (const auto& c : counts) s += c;
  return s;
}

BigInt RepFn::sum_of_squares() const {
  BigInt s = 0;
  for (const auto& c : counts) mpz_addmul(s.get_mpz_t(), c.get_mpz_t(), c.get_mpz_t());
  return s;
}

RepFn diff_rep(const IndicatorSet& A, ConvolutionPath path) {
  const std::uint64_t q = A.modulus();
  auto forward = A.as_counts();
  // reflected(x) = A(-x), so (A * reflected)(d) = sum_x A(x) A(x - d).
  std::vector<BigInt> reflected(q);
  for (std::uint64_t x = 0; x < q; ++x)
    if (A.contains(x)) reflected[(q - x) % q] = 1;
  return make_rep(q, cyclic_convolve(forward, reflected, path));
}

RepFn sum_rep(const IndicatorSet& A, unsigned nu, ConvolutionPath path) {
  if (nu == 0) throw InvalidParameter("sum_rep: nu must be positive");
  const std::uint64_t q = A.modulus();
  const auto base = A.as_counts();
  // Binary powering in the convolution algebra.
  std::vector<BigInt> result;
  std::vector<BigInt> power = base;
  bool have_result = false;
  for (unsigned e = nu;;) {
    if (e & 1) {
      result = have_result ? cyclic_convolve(result, power, path) : power;
      have_result = true;
    }
    e >>= 1;
    if (!e) break;
    power = cyclic_convolve(power, power, path);
  }
  return make_rep(q, std::move(result));
}

BigInt additive_energy(const IndicatorSet& A, unsigned nu, ConvolutionPath path) {
  if (A.empty()) return 0;
  return sum_rep(A, nu, path).sum_of_squares();
}

void EnergyQuery::validate() const {
  const std::uint64_t m = q.value();
  if (nu < 1) throw InvalidParameter("EnergyQuery: nu must be at least 1");
  if (k < 1) throw InvalidParameter("EnergyQuery: k must be at least 1");
  if (N < 1 || N > m) throw InvalidParameter("EnergyQuery: N must lie in [1, q]");
  if (j % m == 0) throw InvalidParameter("EnergyQuery: j must be nonzero mod q");
}

BigInt energy_T(const EnergyQuery& query, ConvolutionPath path) {
  query.validate();
  return additive_energy(preimage_set(query.j, query.k, query.N, query.q), query.nu, path);
}

IndicatorSet root_set(const IndicatorSet& targets, unsigned k, const PrimeModulus& q) {
  const std::uint64_t m = q.value();
  if (targets.modulus() != m) throw InvalidParameter("root_set: set lives in the wrong modulus");
  if (k == 0) throw InvalidParameter("root_set: k must be positive");
  IndicatorSet A(m);
  for (std::uint64_t b = 0; b < m; ++b)
    if (targets.contains(pow_mod(b, k, m))) A.insert(b);
  return A;
}

BigInt energy_set(const IndicatorSet& targets, unsigned k, const PrimeModulus& q) {
  return additive_energy(root_set(targets, k, q), 2);
}

std::vector<Residue> power_coset_representatives(unsigned k, const PrimeModulus& q) {
  const std::uint64_t m = q.value();
  if (k == 0) throw InvalidParameter("power_coset_representatives: k must be positive");
  const std::uint64_t d = std::gcd<std::uint64_t>(k, m - 1);
  const std::uint64_t g = primitive_root(m);
  std::vector<Residue> out;
  out.reserve(d);
  std::uint64_t x = 1;
  for (std::uint64_t i = 0; i < d; ++i) {
    out.push_back(x);
    x = mul_mod(x, g, m);
  }
  return out;
}

MaxEnergy max_energy_over_j(unsigned k, std::uint64_t N, const PrimeModulus& q,
                            bool full_enumeration) {
  const std::uint64_t m = q.value();
  const std::uint64_t clamped = std::min(N, m);
  std::vector<Residue> candidates;
  if (full_enumeration) {
    candidates.resize(m - 1);
    std::iota(candidates.begin(), candidates.end(), Residue{1});
  } else {
    candidates = power_coset_representatives(k, q);
  }
  MaxEnergy best;
  best.value = -1;
  for (Residue j : candidates) {
    EnergyQuery query{2, k, clamped, j, q};
    BigInt e = energy_T(query);
    if (e > best.value) {
      best.value = std::move(e);
      best.argmax = j;
    }
  }
  return best;
}

AverageEnergy avg_energy_over_primes(unsigned k, std::uint64_t N, std::uint64_t Q,
                                     const AverageEnergyOptions& options) {
  if (k < 1) throw InvalidParameter("avg_energy_over_primes: k must be positive");
  if (N < 1 || N > Q) throw InvalidParameter("avg_energy_over_primes: need 1 <= N <= Q");
  if (Q > kDefaultRootTableCap) throw CapacityError("avg_energy_over_primes: Q exceeds table cap");

  // q ~ Q means Q/2 <= q < Q.
  const std::uint64_t lo = (Q + 1) / 2;
  std::vector<std::uint64_t> qs = Q >= 1 && lo <= Q - 1 ? primes_in(lo, Q - 1) : std::vector<std::uint64_t>{};

  AverageEnergy out;
  out.primes.resize(qs.size());
  parallel_for(qs.size(), options.threads, [&](std::size_t i) {
    const auto q = PrimeModulus::make(qs[i]);
    out.primes[i] = {qs[i], max_energy_over_j(k, N, q, options.full_enumeration)};
  });
  out.total = 0;
  for (const auto& c : out.primes) out.total += c.max.value;
  out.per_Q = make_rational(out.total, from_u64(Q));
  out.value = std::log(static_cast<double>(Q)) * out.per_Q.get_d();
  return out;
}

}  // namespace modroots
