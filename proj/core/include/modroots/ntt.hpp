#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "modroots/numeric.hpp"

namespace modroots::ntt {

// A prime p = c * 2^two_adicity + 1 below 2^62 with a known generator.
struct NttPrime {
  std::uint64_t modulus;
  unsigned two_adicity;
  std::uint64_t generator;
};

// The fixed prime set, largest first. Product exceeds 2^300.
std::span<const NttPrime> primes();

// Montgomery arithmetic modulo an odd p < 2^62, R = 2^64.
class Montgomery {
 public:
  explicit Montgomery(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  std::uint64_t to(std::uint64_t a) const { return mul(a % p_, r2_); }
  std::uint64_t from(std::uint64_t a) const { return reduce(a); }
  std::uint64_t one() const { return r1_; }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return reduce(static_cast<unsigned __int128>(a) * b);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t pow(std::uint64_t base, std::uint64_t exponent) const;

 private:
  std::uint64_t reduce(unsigned __int128 t) const {
    const std::uint64_t m = static_cast<std::uint64_t>(t) * neg_inv_;
    const unsigned __int128 u = (t + static_cast<unsigned __int128>(m) * p_) >> 64;
    const auto r = static_cast<std::uint64_t>(u);
    return r >= p_ ? r - p_ : r;
  }

  std::uint64_t p_;
  std::uint64_t neg_inv_;  // -p^{-1} mod 2^64
  std::uint64_t r1_;       // R mod p
  std::uint64_t r2_;       // R^2 mod p
};

// In-place radix-2 transform of length 2^log_size over one prime.
// Values are held in Montgomery form.
class Transform {
 public:
  Transform(const NttPrime& prime, unsigned log_size);

  const Montgomery& field() const { return field_; }
  std::size_t size() const { return std::size_t{1} << log_size_; }

  void forward(std::span<std::uint64_t> a) const;
  // Includes the 1/n scaling.
  void inverse(std::span<std::uint64_t> a) const;

 private:
  void run(std::span<std::uint64_t> a, const std::vector<std::uint64_t>& roots) const;

  Montgomery field_;
  unsigned log_size_;
  std::vector<std::uint64_t> roots_;
  std::vector<std::uint64_t> inv_roots_;
  std::uint64_t inv_n_;
};

// Cyclic convolution of residues mod prime, both of length n.
std::vector<std::uint64_t> cyclic_convolve_mod(std::span<const std::uint64_t> u,
                                               std::span<const std::uint64_t> v,
                                               const NttPrime& prime);

// How many primes of primes() the exact route needs so that values of
// magnitude < bound reconstruct uniquely; 0 if the set is too small.
unsigned primes_needed(const BigInt& bound);

// Exact cyclic convolution w(d) = sum_x u(x) v(d - x mod n) through
// multi-prime transforms and Garner reconstruction. Entries may be
// negative. Throws CapacityError if the prime set cannot cover the
// result magnitude.
std::vector<BigInt> cyclic_convolve_exact(std::span<const BigInt> u, std::span<const BigInt> v);

}  // namespace modroots::ntt
