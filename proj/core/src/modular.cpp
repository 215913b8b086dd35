#include "modroots/modular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "modroots/errors.hpp"
#include "modroots/summation.hpp"

namespace modroots {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exponent) {
    if (exponent & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exponent >>= 1;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  __int128 old_r = static_cast<__int128>(a % m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 quotient = old_r / r;
    std::swap(old_r, r);
    r -= quotient * old_r;
    std::swap(old_s, s);
    s -= quotient * old_s;
  }
  if (old_r != 1) {
    throw InvalidParameter("inv_mod: " + std::to_string(a) + " is not invertible mod " +
                           std::to_string(m));
  }
  old_s %= static_cast<__int128>(m);
  if (old_s < 0) old_s += m;
  return static_cast<std::uint64_t>(old_s);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is exact below 3.3e24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t primitive_root(std::uint64_t q) {
  if (q == 2) return 1;
  const auto factors = prime_factors(q - 1);
  for (std::uint64_t g = 2; g < q; ++g) {
    const bool generator = std::all_of(factors.begin(), factors.end(), [&](std::uint64_t f) {
      return pow_mod(g, (q - 1) / f, q) != 1;
    });
    if (generator) return g;
  }
  throw InternalConsistencyError("primitive_root: no generator found for " + std::to_string(q));
}

PrimeModulus PrimeModulus::make(std::uint64_t q) {
  if (!is_prime(q)) throw InvalidParameter("modulus " + std::to_string(q) + " is not prime");
  return PrimeModulus(q, true);
}

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw InvalidParameter("primes_in: lo > hi");
  if (hi > kSieveCapacity) {
    throw CapacityError("primes_in: hi = " + std::to_string(hi) + " exceeds sieve capacity 2^40");
  }
  if (hi - lo >= kSieveWindowCapacity) throw CapacityError("primes_in: window wider than 2^32");

  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
  std::vector<std::uint8_t> small(root + 1, 1);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  }

  std::vector<std::uint64_t> out;
  constexpr std::uint64_t kSegment = std::uint64_t{1} << 18;
  std::vector<std::uint8_t> segment(kSegment);
  const std::uint64_t start = std::max<std::uint64_t>(lo, 2);
  for (std::uint64_t low = start; low <= hi; low += kSegment) {
    const std::uint64_t high = std::min(hi, low + kSegment - 1);
    std::fill(segment.begin(), segment.end(), std::uint8_t{1});
    for (std::uint64_t p : base) {
      if (p * p > high) break;
      std::uint64_t first = std::max(p * p, (low + p - 1) / p * p);
      for (std::uint64_t m = first; m <= high; m += p) segment[m - low] = 0;
    }
    for (std::uint64_t n = low; n <= high; ++n)
      if (segment[n - low]) out.push_back(n);
    if (high == hi) break;
  }
  return out;
}

ResidueMap::ResidueMap(Residue j, unsigned k, const PrimeModulus& q, std::uint64_t table_cap)
    : j_(j), k_(k), q_(q) {
  const std::uint64_t m = q.value();
  if (m > table_cap || m >= (std::uint64_t{1} << 32)) {
    throw CapacityError("ResidueMap: modulus " + std::to_string(m) + " exceeds table cap");
  }
  if (k == 0) throw InvalidParameter("ResidueMap: k must be positive");
  if (j % m == 0) throw InvalidParameter("ResidueMap: j must be nonzero mod q");

  std::vector<std::uint32_t> image(m);
  offsets_.assign(m + 1, 0);
  for (std::uint64_t x = 0; x < m; ++x) {
    image[x] = static_cast<std::uint32_t>(mul_mod(j % m, pow_mod(x, k, m), m));
    ++offsets_[image[x] + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  xs_.resize(m);
  std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::uint64_t x = 0; x < m; ++x) xs_[cursor[image[x]]++] = static_cast<std::uint32_t>(x);
}

std::vector<Residue> sqrt_mod(Residue a, const PrimeModulus& q) {
  const std::uint64_t p = q.value();
  if (a >= p) throw InvalidParameter("sqrt_mod: residue not reduced");
  if (a == 0) return {0};
  if (p == 2) return {a};
  if (pow_mod(a, (p - 1) / 2, p) != 1) return {};

  std::uint64_t r;
  if (p % 4 == 3) {
    r = pow_mod(a, (p + 1) / 4, p);
  } else {
    std::uint64_t s = 0, odd = p - 1;
    while ((odd & 1) == 0) {
      odd >>= 1;
      ++s;
    }
    std::uint64_t z = 2;
    while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t m = s;
    std::uint64_t c = pow_mod(z, odd, p);
    std::uint64_t t = pow_mod(a, odd, p);
    r = pow_mod(a, (odd + 1) / 2, p);
    while (t != 1) {
      std::uint64_t i = 0, tt = t;
      while (tt != 1) {
        tt = mul_mod(tt, tt, p);
        ++i;
      }
      std::uint64_t b = c;
      for (std::uint64_t e = 0; e + 1 < m - i; ++e) b = mul_mod(b, b, p);
      m = i;
      c = mul_mod(b, b, p);
      t = mul_mod(t, c, p);
      r = mul_mod(r, b, p);
    }
  }
  const std::uint64_t other = p - r;
  return r < other ? std::vector<Residue>{r, other} : std::vector<Residue>{other, r};
}

std::vector<Residue> kth_roots(Residue a, unsigned k, const PrimeModulus& q,
                               std::uint64_t table_cap) {
  const std::uint64_t m = q.value();
  if (k == 0) throw InvalidParameter("kth_roots: k must be positive");
  if (a >= m) throw InvalidParameter("kth_roots: residue not reduced");
  if (a == 0) return {0};
  if (m <= table_cap) {
    const std::uint64_t expected = std::gcd<std::uint64_t>(k, m - 1);
    std::vector<Residue> out;
    for (std::uint64_t x = 1; x < m && out.size() < expected; ++x)
      if (pow_mod(x, k, m) == a) out.push_back(x);
    return out;
  }
  if (k == 1) return {a};
  if (k == 2) return sqrt_mod(a, q);
  throw CapacityError("kth_roots: k = " + std::to_string(k) + " unsupported above table cap");
}

IndicatorSet preimage_set(Residue j, unsigned k, std::uint64_t N, const PrimeModulus& q) {
  const std::uint64_t m = q.value();
  if (j % m == 0) throw InvalidParameter("preimage_set: j must be nonzero mod q");
  if (N < 1) throw InvalidParameter("preimage_set: N must be at least 1");
  if (k == 0) throw InvalidParameter("preimage_set: k must be positive");
  if (m > kDefaultRootTableCap) throw CapacityError("preimage_set: modulus exceeds table cap");
  IndicatorSet out(m);
  const std::uint64_t jj = j % m;
  for (std::uint64_t x = 1; x < m; ++x) {
    const std::uint64_t v = mul_mod(jj, pow_mod(x, k, m), m);
    if (v >= 1 && v <= N) out.insert(x);
  }
  return out;
}

namespace {
constexpr std::uint64_t kRootTableLimit = std::uint64_t{1} << 22;

std::complex<double> unit_root(std::uint64_t x, std::uint64_t q) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(x) / static_cast<double>(q);
  return {std::cos(angle), std::sin(angle)};
}
}  // namespace

CharacterTable::CharacterTable(const PrimeModulus& q) : q_(q) {
  const std::uint64_t m = q.value();
  if (!q.odd()) throw InvalidParameter("CharacterTable: q must be an odd prime");
  if (m > kDefaultRootTableCap) throw CapacityError("CharacterTable: modulus exceeds table cap");
  chi_.assign(m, -1);
  chi_[0] = 0;
  for (std::uint64_t x = 1; x <= (m - 1) / 2; ++x) chi_[mul_mod(x, x, m)] = 1;
  eps_ = (m % 4 == 1) ? std::complex<double>(1.0, 0.0) : std::complex<double>(0.0, 1.0);
  if (m <= kRootTableLimit) {
    roots_.resize(m);
    for (std::uint64_t x = 0; x < m; ++x) roots_[x] = unit_root(x, m);
  }
}

std::complex<double> CharacterTable::e(Residue x) const {
  const std::uint64_t m = q_.value();
  x %= m;
  return roots_.empty() ? unit_root(x, m) : roots_[x];
}

GaussSum gauss_sum(Residue b, Residue h, const CharacterTable& table) {
  const std::uint64_t q = table.modulus().value();
  b %= q;
  h %= q;
  if (b == 0) throw InvalidParameter("gauss_sum: degenerate quadratic (b == 0 mod q)");

  CompensatedComplexSum direct;
  // phase(x) = b x^2 + h x, stepped by first differences.
  const std::uint64_t two_b = add_mod(b, b, q);
  std::uint64_t phase = 0, step = add_mod(b, h, q);
  for (std::uint64_t x = 0; x < q; ++x) {
    direct.add(table.e(phase));
    phase = add_mod(phase, step, q);
    step = add_mod(step, two_b, q);
  }

  const std::uint64_t shift = mul_mod(mul_mod(h, h, q), inv_mod(mul_mod(4 % q, b, q), q), q);
  const std::complex<double> closed = table.eps() * static_cast<double>(table.chi(b)) *
                                      std::sqrt(static_cast<double>(q)) * table.e(sub_mod(0, shift, q));

  GaussSum out;
  out.value = closed;
  out.direct = direct.value();
  out.closed_form = std::abs(out.value - out.direct) <= kComplexTolerance * std::sqrt(double(q));
  return out;
}

GaussSum gauss_sum(Residue b, Residue h, const PrimeModulus& q) {
  return gauss_sum(b, h, CharacterTable(q));
}

}  // namespace modroots
