#include "modroots/ntt.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "modroots/errors.hpp"
#include "modroots/modular.hpp"

namespace modroots::ntt {

namespace {

constexpr std::array<NttPrime, 5> kPrimes{{
    {4179340454199820289ULL, 57, 3},
    {2485986994308513793ULL, 55, 5},
    {2053641430080946177ULL, 55, 7},
    {1945555039024054273ULL, 56, 5},
    {1261007895663738881ULL, 55, 6},
}};

BigInt magnitude_bound(std::span<const BigInt> a) {
  BigInt best = 0;
  for (const auto& x : a) {
    if (abs(x) > best) best = abs(x);
  }
  return best;
}

}  // namespace

std::span<const NttPrime> primes() { return kPrimes; }

Montgomery::Montgomery(std::uint64_t p) : p_(p) {
  std::uint64_t inv = p;  // Newton iteration for p^{-1} mod 2^64
  for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
  neg_inv_ = ~inv + 1;
  r1_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) % p);
  r2_ = mul_mod(r1_, r1_, p);
}

std::uint64_t Montgomery::pow(std::uint64_t base, std::uint64_t exponent) const {
  std::uint64_t result = r1_;
  while (exponent) {
    if (exponent & 1) result = mul(result, base);
    base = mul(base, base);
    exponent >>= 1;
  }
  return result;
}

Transform::Transform(const NttPrime& prime, unsigned log_size)
    : field_(prime.modulus), log_size_(log_size) {
  if (log_size > prime.two_adicity) throw CapacityError("ntt: transform length too large for prime");
  const std::size_t n = size();
  const std::uint64_t g = field_.to(prime.generator);
  const std::uint64_t w = field_.pow(g, (prime.modulus - 1) >> log_size);
  const std::uint64_t w_inv = field_.pow(w, prime.modulus - 2);
  roots_.resize(std::max<std::size_t>(n / 2, 1));
  inv_roots_.resize(roots_.size());
  roots_[0] = inv_roots_[0] = field_.one();
  for (std::size_t i = 1; i < roots_.size(); ++i) {
    roots_[i] = field_.mul(roots_[i - 1], w);
    inv_roots_[i] = field_.mul(inv_roots_[i - 1], w_inv);
  }
  inv_n_ = field_.pow(field_.to(n % prime.modulus), prime.modulus - 2);
}

void Transform::run(std::span<std::uint64_t> a, const std::vector<std::uint64_t>& roots) const {
  const std::size_t n = size();
  if (a.size() != n) throw InvalidParameter("ntt: buffer length mismatch");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t t = 0; t < half; ++t) {
        const std::uint64_t x = a[start + t];
        const std::uint64_t y = field_.mul(a[start + t + half], roots[t * stride]);
        a[start + t] = field_.add(x, y);
        a[start + t + half] = field_.sub(x, y);
      }
    }
  }
}

void Transform::forward(std::span<std::uint64_t> a) const { run(a, roots_); }

void Transform::inverse(std::span<std::uint64_t> a) const {
  run(a, inv_roots_);
  for (auto& x : a) x = field_.mul(x, inv_n_);
}

std::vector<std::uint64_t> cyclic_convolve_mod(std::span<const std::uint64_t> u,
                                               std::span<const std::uint64_t> v,
                                               const NttPrime& prime) {
  const std::size_t n = u.size();
  if (v.size() != n) throw InvalidParameter("ntt: length mismatch");
  if (n == 0) return {};
  const std::size_t linear = 2 * n - 1;
  const unsigned log_size = static_cast<unsigned>(std::bit_width(linear - 1));
  Transform transform(prime, log_size);
  const auto& F = transform.field();
  std::vector<std::uint64_t> a(transform.size(), 0), b(transform.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = F.to(u[i]);
    b[i] = F.to(v[i]);
  }
  transform.forward(a);
  transform.forward(b);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = F.mul(a[i], b[i]);
  transform.inverse(a);
  std::vector<std::uint64_t> out(n);
  for (std::size_t d = 0; d < n; ++d) {
    std::uint64_t w = a[d];
    if (d + n < linear) w = F.add(w, a[d + n]);
    out[d] = F.from(w);
  }
  return out;
}

unsigned primes_needed(const BigInt& bound) {
  BigInt product = 1;
  // Reconstruction covers (-P/2, P/2].
  const BigInt target = 2 * bound + 1;
  for (unsigned r = 0; r < kPrimes.size(); ++r) {
    product *= from_u64(kPrimes[r].modulus);
    if (product > target) return r + 1;
  }
  return 0;
}

std::vector<BigInt> cyclic_convolve_exact(std::span<const BigInt> u, std::span<const BigInt> v) {
  const std::size_t n = u.size();
  if (v.size() != n) throw InvalidParameter("cyclic_convolve: length mismatch");
  if (n == 0) return {};

  const BigInt bound = magnitude_bound(u) * magnitude_bound(v) * from_u64(n);
  const unsigned r = primes_needed(bound);
  if (r == 0) throw CapacityError("cyclic_convolve: entries too large for the NTT prime set");

  std::vector<std::vector<std::uint64_t>> residues(r);
  std::vector<std::uint64_t> ru(n), rv(n);
  for (unsigned i = 0; i < r; ++i) {
    const std::uint64_t p = kPrimes[i].modulus;
    for (std::size_t x = 0; x < n; ++x) {
      ru[x] = mpz_fdiv_ui(u[x].get_mpz_t(), p);
      rv[x] = mpz_fdiv_ui(v[x].get_mpz_t(), p);
    }
    residues[i] = cyclic_convolve_mod(ru, rv, kPrimes[i]);
  }

  // Garner: value = c0 + p0 (c1 + p1 (c2 + ...)).
  std::vector<std::vector<std::uint64_t>> inv(r, std::vector<std::uint64_t>(r, 0));
  for (unsigned i = 0; i < r; ++i)
    for (unsigned j = 0; j < i; ++j) inv[j][i] = inv_mod(kPrimes[j].modulus % kPrimes[i].modulus, kPrimes[i].modulus);

  BigInt product = 1;
  for (unsigned i = 0; i < r; ++i) product *= from_u64(kPrimes[i].modulus);
  const BigInt half = product / 2;

  std::vector<BigInt> out(n);
  std::vector<std::uint64_t> c(r);
  for (std::size_t d = 0; d < n; ++d) {
    for (unsigned i = 0; i < r; ++i) {
      const std::uint64_t p = kPrimes[i].modulus;
      std::uint64_t x = residues[i][d];
      for (unsigned j = 0; j < i; ++j) x = mul_mod(sub_mod(x, c[j] % p, p), inv[j][i], p);
      c[i] = x;
    }
    BigInt value = from_u64(c[r - 1]);
    for (int i = static_cast<int>(r) - 2; i >= 0; --i) {
      value *= from_u64(kPrimes[i].modulus);
      value += from_u64(c[i]);
    }
    if (value > half) value -= product;
    out[d] = std::move(value);
  }
  return out;
}

}  // namespace modroots::ntt
