#include "modroots/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "modroots/errors.hpp"
#include "modroots/modular.hpp"

namespace modroots {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

BigInt from_i128(i128 v) {
  const bool negative = v < 0;
  u128 u = negative ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  const BigInt hi = from_u64(static_cast<std::uint64_t>(u >> 64));
  const BigInt lo = from_u64(static_cast<std::uint64_t>(u));
  BigInt out = (hi << 64) + lo;
  return negative ? BigInt(-out) : out;
}

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// sum_{i < n} floor((a i + b) / m) for a, b >= 0, m >= 1.
u128 floor_sum_unsigned(u128 n, u128 m, u128 a, u128 b) {
  u128 ans = 0;
  while (true) {
    if (a >= m) {
      ans += n * (n - 1) / 2 * (a / m);
      a %= m;
    }
    if (b >= m) {
      ans += n * (b / m);
      b %= m;
    }
    const u128 y_max = a * n + b;
    if (y_max < m) break;
    n = y_max / m;
    b = y_max % m;
    std::swap(m, a);
  }
  return ans;
}

// sum_{i < n} floor((X + a i) / m), 0 <= a < m, arbitrary X.
i128 floor_sum_shifted(std::int64_t n, std::int64_t m, std::int64_t a, i128 X) {
  const i128 k0 = floor_div(X, m);
  const i128 r = X - k0 * m;
  return static_cast<i128>(n) * k0 +
         static_cast<i128>(floor_sum_unsigned(static_cast<u128>(n), static_cast<u128>(m),
                                              static_cast<u128>(a), static_cast<u128>(r)));
}

std::int64_t floor_width(const Rational& w) {
  BigInt f;
  mpz_fdiv_q(f.get_mpz_t(), w.get_num_mpz_t(), w.get_den_mpz_t());
  if (f > BigInt(static_cast<long>(1) << 30)) throw CapacityError("lattice: half-width above 2^30");
  return f.get_si();
}

void validate_body(const CongruenceLattice& L, const BoxBody& B) {
  if (B.dimension() != L.dimension()) throw InvalidParameter("lattice: body and lattice dimensions differ");
  for (const auto& w : B.half_widths)
    if (sgn(w) < 0) throw InvalidParameter("lattice: negative half-width");
}

// Norm on Z^d: box max |v_i| / w_i, or weighted cross-polytope
// sum w_i |v_i| / scale.
struct Norm {
  bool cross = false;
  std::vector<Rational> w;
  std::vector<long double> wd;
  std::uint64_t scale = 1;

  Norm(bool cross_, const BoxBody& B, std::uint64_t scale_) : cross(cross_), w(B.half_widths), scale(scale_) {
    for (const auto& x : w) wd.push_back(static_cast<long double>(x.get_d()));
  }

  Rational exact(const IntVec& v) const {
    Rational out = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Rational a(from_i64(v[i] < 0 ? -v[i] : v[i]));
      if (cross) {
        out += w[i] * a;
      } else {
        Rational r = a / w[i];
        if (r > out) out = r;
      }
    }
    if (cross) out /= Rational(from_u64(scale));
    return out;
  }

  long double approx(const IntVec& v) const {
    long double out = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const long double a = std::fabs(static_cast<long double>(v[i]));
      out = cross ? out + wd[i] * a : std::max(out, a / wd[i]);
    }
    return cross ? out / static_cast<long double>(scale) : out;
  }

  std::vector<long double> scaled(const IntVec& v) const {
    std::vector<long double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      out[i] = cross ? static_cast<long double>(v[i]) * wd[i] / static_cast<long double>(scale)
                     : static_cast<long double>(v[i]) / wd[i];
    return out;
  }

  // Half-widths of a coordinate box containing the ball of radius R.
  std::vector<long double> enclosing(long double R) const {
    std::vector<long double> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
      out[i] = cross ? R * static_cast<long double>(scale) / wd[i] : R * wd[i];
    return out;
  }
};

long double dot(const std::vector<long double>& x, const std::vector<long double>& y) {
  long double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

// LLL on the integer rows, measured in the norm's scaled coordinates. Only
// steers the enumeration; every reported value is computed exactly.
void lll_reduce(std::vector<IntVec>& b, const Norm& norm) {
  const std::size_t d = b.size();
  const long double delta = 0.99L;
  auto gram_schmidt = [&](std::vector<std::vector<long double>>& star, std::vector<std::vector<long double>>& mu) {
    star.assign(d, {});
    mu.assign(d, std::vector<long double>(d, 0));
    for (std::size_t i = 0; i < d; ++i) {
      star[i] = norm.scaled(b[i]);
      const auto bi = star[i];
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = dot(bi, star[j]) / dot(star[j], star[j]);
        for (std::size_t t = 0; t < bi.size(); ++t) star[i][t] -= mu[i][j] * star[j][t];
      }
    }
  };
  std::vector<std::vector<long double>> star, mu;
  std::size_t k = 1;
  for (int iterations = 0; k < d && iterations < 10000; ++iterations) {
    gram_schmidt(star, mu);
    for (std::size_t j = k; j-- > 0;) {
      const long double r = std::round(mu[k][j]);
      if (r != 0) {
        const auto f = static_cast<std::int64_t>(r);
        for (std::size_t t = 0; t < d; ++t) b[k][t] -= f * b[j][t];
        gram_schmidt(star, mu);
      }
    }
    const long double lhs = dot(star[k], star[k]);
    const long double rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * dot(star[k - 1], star[k - 1]);
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
}

i128 det2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return static_cast<i128>(a) * d - static_cast<i128>(b) * c;
}

// Rows x adjugate = det * identity.
struct Inverse {
  std::vector<std::vector<i128>> adj;
  i128 det = 0;
};

Inverse invert(const std::vector<IntVec>& b) {
  Inverse out;
  const std::size_t d = b.size();
  out.adj.assign(d, std::vector<i128>(d, 0));
  if (d == 2) {
    out.det = det2(b[0][0], b[0][1], b[1][0], b[1][1]);
    out.adj[0][0] = b[1][1];
    out.adj[0][1] = -b[0][1];
    out.adj[1][0] = -b[1][0];
    out.adj[1][1] = b[0][0];
    return out;
  }
  auto m = [&](std::size_t r, std::size_t c) { return static_cast<i128>(b[r][c]); };
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      const std::size_t r1 = (c + 1) % 3, r2 = (c + 2) % 3, c1 = (r + 1) % 3, c2 = (r + 2) % 3;
      out.adj[r][c] = m(r1, c1) * m(r2, c2) - m(r1, c2) * m(r2, c1);
    }
  }
  out.det = m(0, 0) * out.adj[0][0] + m(0, 1) * out.adj[1][0] + m(0, 2) * out.adj[2][0];
  return out;
}

// Calls fn(v) for every lattice vector v = c * rows whose coordinates lie
// in the box |v_i| <= E_i (plus possibly some outside it).
template <class Fn>
void enumerate_box(const std::vector<IntVec>& rows, const Inverse& inv, const std::vector<long double>& E,
                   std::uint64_t budget, Fn&& fn) {
  const std::size_t d = rows.size();
  const long double det = std::fabs(static_cast<long double>(inv.det));
  std::vector<std::int64_t> C(d);
  long double work = 1;
  for (std::size_t i = 0; i < d; ++i) {
    long double s = 0;
    for (std::size_t j = 0; j < d; ++j) {
      const i128 a = inv.adj[j][i] < 0 ? -inv.adj[j][i] : inv.adj[j][i];
      s += E[j] * static_cast<long double>(a);
    }
    const long double c = std::floor(s / det * (1 + 1e-12L)) + 1;
    if (c > 1e15L) throw BudgetExceeded("lattice: enumeration radius too large");
    C[i] = static_cast<std::int64_t>(c);
    work *= 2 * c + 1;
  }
  if (work > static_cast<long double>(budget)) {
    throw BudgetExceeded("lattice: enumeration of " + std::to_string(static_cast<double>(work)) +
                         " coefficient vectors exceeds budget " + std::to_string(budget));
  }
  IntVec v(d, 0);
  auto recurse = [&](auto&& self, std::size_t level) -> void {
    if (level == d) {
      for (std::size_t i = 0; i < d; ++i)
        if (std::fabs(static_cast<long double>(v[i])) > E[i] + 1) return;
      fn(v);
      return;
    }
    for (std::size_t i = 0; i < d; ++i) v[i] -= (C[level] + 1) * rows[level][i];
    for (std::int64_t c = -C[level]; c <= C[level]; ++c) {
      for (std::size_t i = 0; i < d; ++i) v[i] += rows[level][i];
      self(self, level + 1);
    }
    for (std::size_t i = 0; i < d; ++i) v[i] -= C[level] * rows[level][i];
  };
  recurse(recurse, 0);
}

bool canonical(const IntVec& v) {
  for (auto x : v)
    if (x != 0) return x > 0;
  return false;
}

IntVec canonicalize(IntVec v) {
  if (!canonical(v))
    for (auto& x : v) x = -x;
  return v;
}

// v independent of the chosen rows.
bool independent(const std::vector<IntVec>& chosen, const IntVec& v) {
  const std::size_t d = v.size();
  if (chosen.empty()) return std::any_of(v.begin(), v.end(), [](auto x) { return x != 0; });
  if (chosen.size() == 1) {
    const auto& u = chosen[0];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (det2(u[i], u[j], v[i], v[j]) != 0) return true;
    return false;
  }
  const auto& u = chosen[0];
  const auto& w = chosen[1];
  const i128 det = static_cast<i128>(v[0]) * det2(u[1], u[2], w[1], w[2]) -
                   static_cast<i128>(v[1]) * det2(u[0], u[2], w[0], w[2]) +
                   static_cast<i128>(v[2]) * det2(u[0], u[1], w[0], w[1]);
  return det != 0;
}

MinimaResult minima_for(std::vector<IntVec> rows, const Norm& norm, const LatticeOptions& options) {
  const std::size_t d = rows.size();
  MinimaResult out;
  lll_reduce(rows, norm);
  const Inverse inv = invert(rows);
  if (inv.det == 0) throw InternalConsistencyError("lattice: reduced basis is singular");

  std::vector<std::pair<Rational, IntVec>> basis_norms;
  for (const auto& r : rows) basis_norms.emplace_back(norm.exact(r), canonicalize(r));
  std::sort(basis_norms.begin(), basis_norms.end());

  for (std::size_t j = 0; j < d; ++j) {
    // The j+1 shortest basis rows are independent, so lambda_{j+1} is at
    // most the norm of the (j+1)-th.
    const Rational& radius = basis_norms[j].first;
    Rational best;
    IntVec best_v;
    for (std::size_t t = 0; t <= j; ++t) {
      if (independent(out.witnesses, basis_norms[t].second)) {
        if (best_v.empty() || basis_norms[t].first < best ||
            (basis_norms[t].first == best && basis_norms[t].second < best_v)) {
          best = basis_norms[t].first;
          best_v = basis_norms[t].second;
        }
      }
    }
    long double best_approx = static_cast<long double>(best.get_d());
    const auto E = norm.enclosing(static_cast<long double>(radius.get_d()) * (1 + 1e-9L));
    enumerate_box(rows, inv, E, options.work_budget, [&](const IntVec& v) {
      if (!canonical(v)) return;
      if (norm.approx(v) > best_approx * (1 + 1e-9L)) return;
      if (!independent(out.witnesses, v)) return;
      Rational n = norm.exact(v);
      if (n < best || (n == best && v < best_v)) {
        best = std::move(n);
        best_v = v;
        best_approx = static_cast<long double>(best.get_d());
      }
    });
    out.lambdas.push_back(best);
    out.witnesses.push_back(best_v);
  }
  return out;
}

Rational factorial(unsigned d) {
  Rational f = 1;
  for (unsigned i = 2; i <= d; ++i) f *= i;
  return f;
}

}  // namespace

CongruenceLattice CongruenceLattice::make(IntVec coeffs, std::uint64_t q) {
  if (coeffs.size() != 2 && coeffs.size() != 3) throw InvalidParameter("lattice: dimension must be 2 or 3");
  if (q < 1) throw InvalidParameter("lattice: modulus must be positive");
  if (q >= kLatticeModulusCap) throw CapacityError("lattice: modulus above 2^31");
  for (auto& a : coeffs) {
    a = static_cast<std::int64_t>(reduce_signed(a, q));
    if (std::gcd(static_cast<std::uint64_t>(a), q) != 1)
      throw InvalidParameter("lattice: coefficient " + std::to_string(a) + " not coprime to modulus");
  }
  return CongruenceLattice(std::move(coeffs), q);
}

bool CongruenceLattice::contains(std::span<const std::int64_t> n) const {
  if (n.size() != coeffs_.size()) return false;
  i128 s = 0;
  for (std::size_t i = 0; i < n.size(); ++i) s += static_cast<i128>(coeffs_[i]) * n[i];
  return s % static_cast<i128>(q_) == 0;
}

std::vector<IntVec> CongruenceLattice::basis() const {
  const std::size_t d = coeffs_.size();
  std::vector<IntVec> rows(d, IntVec(d, 0));
  rows[0][0] = static_cast<std::int64_t>(q_);
  const std::uint64_t inv = q_ == 1 ? 0 : inv_mod(static_cast<std::uint64_t>(coeffs_[0]), q_);
  for (std::size_t i = 1; i < d; ++i) {
    const std::uint64_t c = q_ == 1 ? 0 : sub_mod(0, mul_mod(static_cast<std::uint64_t>(coeffs_[i]), inv, q_), q_);
    rows[i][0] = static_cast<std::int64_t>(c);
    rows[i][i] = 1;
  }
  return rows;
}

Rational BoxBody::volume() const {
  Rational v = 1;
  for (const auto& w : half_widths) v *= 2 * w;
  return v;
}

bool BoxBody::degenerate() const {
  return std::any_of(half_widths.begin(), half_widths.end(), [](const Rational& w) { return sgn(w) == 0; });
}

bool BoxBody::contains(std::span<const std::int64_t> x) const {
  if (x.size() != half_widths.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (Rational(from_i64(x[i] < 0 ? -x[i] : x[i])) > half_widths[i]) return false;
  return true;
}

BigInt count_points(const CongruenceLattice& L, const BoxBody& B, const LatticeOptions& options) {
  validate_body(L, B);
  const std::size_t d = L.dimension();
  std::vector<std::int64_t> W(d);
  for (std::size_t i = 0; i < d; ++i) W[i] = floor_width(B.half_widths[i]);
  const auto rows = L.basis();
  const auto q = static_cast<std::int64_t>(L.modulus());
  const std::int64_t c2 = rows[1][0];
  const std::int64_t c2_neg = (q - c2) % q;
  const std::int64_t c3 = d == 3 ? rows[2][0] : 0;
  const std::int64_t W3 = d == 3 ? W[2] : 0;
  if (static_cast<std::uint64_t>(2 * W3 + 1) > options.work_budget)
    throw BudgetExceeded("count_points: row count exceeds budget");

  // n = t (q, 0, 0) + n2 (c2, 1, 0) + n3 (c3, 0, 1); for each (n2, n3) the
  // admissible t form an interval, summed over n2 as floor sums.
  const std::int64_t n = 2 * W[1] + 1;
  i128 total = 0;
  for (std::int64_t n3 = -W3; n3 <= W3; ++n3) {
    const i128 S = static_cast<i128>(c3) * n3;
    const i128 X = static_cast<i128>(W[0]) - S + static_cast<i128>(c2) * W[1];
    const i128 Y = -static_cast<i128>(W[0]) - 1 - S + static_cast<i128>(c2) * W[1];
    total += floor_sum_shifted(n, q, c2_neg, X) - floor_sum_shifted(n, q, c2_neg, Y);
  }
  return from_i128(total);
}

MinimaResult successive_minima(const CongruenceLattice& L, const BoxBody& B, const LatticeOptions& options) {
  validate_body(L, B);
  if (B.degenerate()) {
    MinimaResult out;
    out.degenerate = true;
    return out;
  }
  return minima_for(L.basis(), Norm(false, B, 1), options);
}

DualLattice::DualLattice(const CongruenceLattice& L) : coeffs_(L.coeffs()), q_(L.modulus()) {}

IntVec DualLattice::generator(std::int64_t lambda) const {
  IntVec m(coeffs_.size());
  const std::uint64_t l = reduce_signed(lambda, q_);
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = balanced_lift(mul_mod(l, static_cast<std::uint64_t>(coeffs_[i]), q_), q_);
  return m;
}

bool DualLattice::contains_numerators(std::span<const std::int64_t> m) const {
  if (m.size() != coeffs_.size()) return false;
  if (q_ == 1) return true;
  const std::uint64_t lambda = mul_mod(reduce_signed(m[0], q_), inv_mod(static_cast<std::uint64_t>(coeffs_[0]), q_), q_);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (reduce_signed(m[i], q_) != mul_mod(lambda, static_cast<std::uint64_t>(coeffs_[i]), q_)) return false;
  return true;
}

bool DualLattice::contains(std::span<const Rational> x) const {
  IntVec m;
  for (const auto& xi : x) {
    const Rational scaled = xi * Rational(from_u64(q_));
    if (scaled.get_den() != 1) return false;
    if (!scaled.get_num().fits_slong_p()) return false;
    m.push_back(scaled.get_num().get_si());
  }
  return contains_numerators(m);
}

std::vector<IntVec> DualLattice::basis() const {
  const std::size_t d = coeffs_.size();
  std::vector<IntVec> rows(d, IntVec(d, 0));
  const std::uint64_t inv = q_ == 1 ? 0 : inv_mod(static_cast<std::uint64_t>(coeffs_[0]), q_);
  rows[0][0] = 1;
  for (std::size_t i = 1; i < d; ++i) {
    rows[0][i] = q_ == 1 ? 0 : static_cast<std::int64_t>(mul_mod(static_cast<std::uint64_t>(coeffs_[i]), inv, q_));
    rows[i][i] = static_cast<std::int64_t>(q_);
  }
  return rows;
}

MinimaResult dual_minima(const CongruenceLattice& L, const BoxBody& B, const LatticeOptions& options) {
  validate_body(L, B);
  if (B.degenerate()) {
    MinimaResult out;
    out.degenerate = true;
    return out;
  }
  return minima_for(DualLattice(L).basis(), Norm(true, B, L.modulus()), options);
}

double GeometryReport::slack() const {
  double s = std::numeric_limits<double>::infinity();
  if (degenerate()) return s;
  s = std::min(s, Rational(minkowski_rhs / minkowski_lhs).get_d());
  s = std::min(s, Rational(counting_rhs / Rational(points)).get_d());
  const double fact = factorial(static_cast<unsigned>(primal.lambdas.size())).get_d();
  for (const auto& t : transference) s = std::min(s, fact / t.get_d());
  return s;
}

GeometryReport verify_geometry(const CongruenceLattice& L, const BoxBody& B, const LatticeOptions& options) {
  GeometryReport report;
  report.points = count_points(L, B, options);
  report.primal = successive_minima(L, B, options);
  if (report.primal.degenerate) return report;
  report.dual = dual_minima(L, B, options);

  const unsigned d = L.dimension();
  const auto& lam = report.primal.lambdas;
  const auto& dual = report.dual.lambdas;
  for (unsigned j = 1; j < d; ++j) {
    if (lam[j] < lam[j - 1] || dual[j] < dual[j - 1]) report.ordered = false;
  }

  Rational product = 1;
  for (const auto& l : lam) product *= l;
  report.minkowski_lhs = 1 / product;
  report.minkowski_rhs = factorial(d) / Rational(BigInt(1) << d) * B.volume() / Rational(from_u64(L.modulus()));
  report.minkowski = report.minkowski_lhs <= report.minkowski_rhs;

  report.counting_rhs = 1;
  for (unsigned j = 1; j <= d; ++j) report.counting_rhs *= Rational(2 * j) / lam[j - 1] + 1;
  report.counting = Rational(report.points) <= report.counting_rhs;

  const Rational fact = factorial(d);
  for (unsigned j = 1; j <= d; ++j) {
    report.transference.push_back(lam[j - 1] * dual[d - j]);
    if (report.transference.back() > fact) report.transference_ok = false;
  }
  return report;
}

TrichotomyResult trichotomy_check(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::int64_t L,
                                  std::int64_t M, std::int64_t N, std::uint64_t q,
                                  const LatticeOptions& options) {
  PrimeModulus::make(q);
  if (a % q == 0 || b % q == 0 || c % q == 0) throw InvalidParameter("trichotomy: coefficients must be nonzero mod q");
  if (L < 0 || M < 0 || N < 0) throw InvalidParameter("trichotomy: box sizes must be nonnegative");
  const auto lattice = CongruenceLattice::make(
      {static_cast<std::int64_t>(a % q), static_cast<std::int64_t>(b % q), static_cast<std::int64_t>(c % q)}, q);
  const BoxBody box{{Rational(from_i64(N)), Rational(from_i64(M)), Rational(from_i64(L))}};

  TrichotomyResult out;
  out.K = count_points(lattice, box, options);
  out.degenerate = box.degenerate();

  const BigInt LMN = from_i64(L) * from_i64(M) * from_i64(N);
  out.case_i = out.K * from_u64(q) < 640 * LMN || out.K < 1;

  if (!out.degenerate) {
    out.minima = successive_minima(lattice, box, options);
    out.case_ii = out.minima.lambdas[0] <= 1 && out.minima.lambdas[1] > 1;
  } else {
    out.minima.degenerate = true;
  }

  // |l| <= 4320 M N / K and so on, as integer thresholds.
  auto threshold = [&](std::int64_t x, std::int64_t y) {
    BigInt t = 4320 * from_i64(x) * from_i64(y) / out.K;
    return t.fits_slong_p() ? t.get_si() : std::numeric_limits<long>::max();
  };
  const std::int64_t tl = threshold(M, N), tm = threshold(L, N), tn = threshold(L, M);
  for (std::uint64_t lambda = 1; lambda < q; ++lambda) {
    const std::int64_t l = balanced_lift(mul_mod(lambda, a % q, q), q);
    const std::int64_t m = balanced_lift(mul_mod(lambda, b % q, q), q);
    const std::int64_t n = balanced_lift(mul_mod(lambda, c % q, q), q);
    if (std::abs(l) <= tl && std::abs(m) <= tm && std::abs(n) <= tn) {
      out.case_iii = true;
      out.witness = TrichotomyWitness{static_cast<std::int64_t>(lambda), l, m, n};
      break;
    }
  }
  return out;
}

}  // namespace modroots
