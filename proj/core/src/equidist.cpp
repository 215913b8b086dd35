#include "modroots/equidist.hpp"

#include <algorithm>
#include <sstream>

#include "modroots/bounds.hpp"
#include "modroots/errors.hpp"

namespace modroots {

namespace {

using i128 = __int128;

struct Distinct {
  std::vector<BigInt> num;  // value * D
  std::vector<std::uint64_t> prefix;  // prefix[i] = points strictly below value i
  std::uint64_t total = 0;
  BigInt D = 1;
};

Distinct distinct_values(const std::vector<Rational>& sorted) {
  Distinct out;
  for (const auto& p : sorted) mpz_lcm(out.D.get_mpz_t(), out.D.get_mpz_t(), p.get_den_mpz_t());
  out.prefix.push_back(0);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i == 0 || sorted[i] != sorted[i - 1]) {
      out.num.push_back(BigInt(sorted[i].get_num() * (out.D / sorted[i].get_den())));
      if (i) out.prefix.push_back(i);
    }
  }
  out.prefix.push_back(sorted.size());
  out.total = sorted.size();
  return out;
}

// Scans the critical configurations with integer type T holding values
// scaled by D. Interval classes:
//   excess  [v_i, v_j+):   count(v_i..v_j) - N (v_j - v_i)
//   deficit [a, b), a in {0} u {v_i+}, b in {v_j} u {1}: N (b - a) - count
template <class T>
void scan(const std::vector<T>& v, const std::vector<std::uint64_t>& prefix, T N, T D, T& best,
          std::size_t& wi, std::size_t& wj, int& kind) {
  const std::size_t m = v.size();
  best = 0;
  kind = -1;
  auto offer = [&](const T& value, int k, std::size_t i, std::size_t j) {
    if (value > best) {
      best = value;
      kind = k;
      wi = i;
      wj = j;
    }
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const T count = static_cast<T>(prefix[j + 1] - prefix[i]);
      offer(count * D - N * (v[j] - v[i]), 0, i, j);
    }
  }
  // alpha = 0
  for (std::size_t j = 0; j <= m; ++j) {
    const T b = j < m ? v[j] : D;
    offer(N * b - static_cast<T>(prefix[j]) * D, 1, m, j);
  }
  // alpha = v_i+
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j <= m; ++j) {
      const T b = j < m ? v[j] : D;
      const T count = static_cast<T>(prefix[j] - prefix[i + 1]);
      offer(N * (b - v[i]) - count * D, 2, i, j);
    }
  }
}

}  // namespace

PointMultiset::PointMultiset(std::vector<Rational> points) : points_(std::move(points)), sorted_(false) {
  for (const auto& p : points_)
    if (sgn(p) < 0 || p >= 1) throw InvalidParameter("PointMultiset: point " + p.get_str() + " outside [0, 1)");
}

void PointMultiset::add(const Rational& p) {
  if (sgn(p) < 0 || p >= 1) throw InvalidParameter("PointMultiset: point " + p.get_str() + " outside [0, 1)");
  points_.push_back(p);
  sorted_ = false;
}

const std::vector<Rational>& PointMultiset::points() const {
  if (!sorted_) {
    std::sort(points_.begin(), points_.end());
    sorted_ = true;
  }
  return points_;
}

std::string PointMultiset::to_text() const {
  const auto& pts = points();
  std::ostringstream out;
  for (std::size_t i = 0; i < pts.size();) {
    std::size_t j = i;
    while (j < pts.size() && pts[j] == pts[i]) ++j;
    out << pts[i].get_num().get_str() << ' ' << pts[i].get_den().get_str() << ' ' << (j - i) << '\n';
    i = j;
  }
  return out.str();
}

DiscrepancyResult discrepancy(const PointMultiset& P) {
  DiscrepancyResult out;
  const auto& pts = P.points();
  if (pts.empty()) return out;
  const Distinct d = distinct_values(pts);
  std::size_t wi = 0, wj = 0;
  int kind = -1;
  BigInt best_scaled;

  const bool fits = d.D < (BigInt(1) << 62) && d.total < (std::uint64_t{1} << 32);
  if (fits) {
    std::vector<i128> v;
    for (const auto& x : d.num) v.push_back(static_cast<i128>(x.get_si()));
    i128 best = 0;
    scan<i128>(v, d.prefix, static_cast<i128>(d.total), static_cast<i128>(d.D.get_si()), best, wi, wj, kind);
    const bool negative = best < 0;
    unsigned __int128 u = negative ? static_cast<unsigned __int128>(-best) : static_cast<unsigned __int128>(best);
    best_scaled = (from_u64(static_cast<std::uint64_t>(u >> 64)) << 64) + from_u64(static_cast<std::uint64_t>(u));
    if (negative) best_scaled = -best_scaled;
  } else {
    scan<BigInt>(d.num, d.prefix, from_u64(d.total), d.D, best_scaled, wi, wj, kind);
  }
  out.value = make_rational(best_scaled, d.D);

  const std::size_t m = d.num.size();
  auto value_at = [&](std::size_t i) { return i < m ? make_rational(d.num[i], d.D) : Rational(1); };
  switch (kind) {
    case 0:
      out.witness = {value_at(wi), value_at(wj), false, true, true};
      break;
    case 1:
      out.witness = {Rational(0), value_at(wj), false, false, false};
      break;
    case 2:
      out.witness = {value_at(wi), value_at(wj), true, false, false};
      break;
    default:
      break;
  }
  return out;
}

GammaResult gamma_qP(const PrimeModulus& q, std::uint64_t P) {
  GammaResult out;
  const std::uint64_t m = q.value();
  if (P >= 2) {
    for (const std::uint64_t p : primes_in(2, P)) {
      for (const Residue x : sqrt_mod(p % m, q)) out.certificates.emplace_back(x, p);
    }
  }
  std::sort(out.certificates.begin(), out.certificates.end());
  std::vector<Rational> pts;
  pts.reserve(out.certificates.size());
  for (const auto& [x, p] : out.certificates) pts.push_back(make_rational(from_u64(x), from_u64(m)));
  out.points = PointMultiset(std::move(pts));
  out.discrepancy = discrepancy(out.points);
  return out;
}

double gamma_ratio(const PrimeModulus& q, std::uint64_t P) {
  if (P < 2) return 0.0;
  const auto g = gamma_qP(q, P);
  return g.discrepancy.value.get_d() / gamma_bound(static_cast<double>(q.value()), static_cast<double>(P));
}

}  // namespace modroots
