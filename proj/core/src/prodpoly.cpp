#include "modroots/prodpoly.hpp"

#include <sstream>

#include "modroots/concurrency.hpp"
#include "modroots/errors.hpp"
#include "modroots/modular.hpp"

namespace modroots {

namespace {

std::vector<BigInt> poly_divide_monic(std::vector<BigInt> num, const std::vector<BigInt>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<BigInt> quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const BigInt t = num[i];
    quot[i - dn] = t;
    if (t == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= t * den[j];
  }
  return quot;
}

std::vector<BigInt> reduce_mod(const std::vector<BigInt>& phi, std::vector<BigInt> c) {
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = c.size(); i-- > deg;) {
    if (c[i] == 0) continue;
    const BigInt t = c[i];
    for (std::size_t j = 0; j <= deg; ++j) c[i - deg + j] -= t * phi[j];
  }
  c.resize(deg, 0);
  return c;
}

// Homogeneous polynomial of degree D in four variables with coefficients
// in the group ring Z[C_k]; slot (a, b, c) stands for X1^a X2^b X3^c X4^(D-a-b-c).
class DenseForm {
 public:
  DenseForm(unsigned k, unsigned D) : k_(k), D_(D), offsets_((D + 1) * (D + 1), 0) {
    std::size_t running = 0;
    for (unsigned a = 0; a <= D; ++a) {
      for (unsigned b = 0; a + b <= D; ++b) {
        offsets_[a * (D + 1) + b] = running;
        running += D - a - b + 1;
      }
    }
    slots_ = running;
    data_.assign(slots_ * k, BigInt(0));
    nonzero_.assign(slots_, 0);
  }

  std::size_t index(unsigned a, unsigned b, unsigned c) const { return offsets_[a * (D_ + 1) + b] + c; }
  unsigned degree() const { return D_; }
  BigInt* slot(std::size_t i) { return data_.data() + i * k_; }
  const BigInt* slot(std::size_t i) const { return data_.data() + i * k_; }
  bool nonzero(std::size_t i) const { return nonzero_[i]; }
  void mark(std::size_t i) { nonzero_[i] = 1; }

 private:
  unsigned k_;
  unsigned D_;
  std::vector<std::size_t> offsets_;
  std::size_t slots_ = 0;
  std::vector<BigInt> data_;
  std::vector<char> nonzero_;
};

struct FactorTerm {
  unsigned da, db, dc;
  long scalar;
  unsigned rotation;  // coefficient scalar * w^rotation
};

DenseForm multiply(const DenseForm& src, const std::vector<FactorTerm>& factor, unsigned factor_degree,
                   unsigned k) {
  const unsigned D = src.degree();
  DenseForm dst(k, D + factor_degree);
  for (unsigned a = 0; a <= D; ++a) {
    for (unsigned b = 0; a + b <= D; ++b) {
      for (unsigned c = 0; a + b + c <= D; ++c) {
        const std::size_t si = src.index(a, b, c);
        if (!src.nonzero(si)) continue;
        const BigInt* s = src.slot(si);
        for (const auto& t : factor) {
          const std::size_t di = dst.index(a + t.da, b + t.db, c + t.dc);
          BigInt* out = dst.slot(di);
          bool any = false;
          for (unsigned i = 0; i < k; ++i) {
            if (sgn(s[i]) == 0) continue;
            BigInt& target = out[(i + t.rotation) % k];
            if (t.scalar >= 0)
              mpz_addmul_ui(target.get_mpz_t(), s[i].get_mpz_t(), static_cast<unsigned long>(t.scalar));
            else
              mpz_submul_ui(target.get_mpz_t(), s[i].get_mpz_t(), static_cast<unsigned long>(-t.scalar));
            any = true;
          }
          if (any) dst.mark(di);
        }
      }
    }
  }
  return dst;
}

long multinomial(unsigned n, unsigned i, unsigned j, unsigned l) {
  auto fact = [](unsigned m) {
    long f = 1;
    for (unsigned x = 2; x <= m; ++x) f *= x;
    return f;
  };
  return fact(n) / (fact(i) * fact(j) * fact(l));
}

// (X1 + w^e2 X2 - w^e3 X3)^k - X4^k
std::vector<FactorTerm> grouped_factor(unsigned k, unsigned e2, unsigned e3) {
  std::vector<FactorTerm> terms;
  for (unsigned i = 0; i <= k; ++i) {
    for (unsigned j = 0; i + j <= k; ++j) {
      const unsigned l = k - i - j;
      long coeff = multinomial(k, i, j, l);
      if (l % 2) coeff = -coeff;
      terms.push_back({i, j, l, coeff, (e2 * j + e3 * l) % k});
    }
  }
  terms.push_back({0, 0, 0, -1, 0});
  return terms;
}

// w^e1 X1 + w^e2 X2 - w^e3 X3 - X4
std::vector<FactorTerm> linear_factor(unsigned e1, unsigned e2, unsigned e3) {
  return {{1, 0, 0, 1, e1}, {0, 1, 0, 1, e2}, {0, 0, 1, -1, e3}, {0, 0, 0, -1, 0}};
}

constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t mul_m61(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 x = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = (static_cast<std::uint64_t>(x) & kMersenne61) + static_cast<std::uint64_t>(x >> 61);
  return r >= kMersenne61 ? r - kMersenne61 : r;
}

inline std::uint64_t add_m61(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t r = a + b;
  return r >= kMersenne61 ? r - kMersenne61 : r;
}

}  // namespace

std::vector<BigInt> cyclotomic_polynomial(unsigned k) {
  if (k < 1) throw InvalidParameter("cyclotomic_polynomial: order must be positive");
  std::vector<BigInt> p(k + 1, 0);
  p[0] = -1;
  p[k] = 1;
  for (unsigned d = 1; d < k; ++d)
    if (k % d == 0) p = poly_divide_monic(p, cyclotomic_polynomial(d));
  return p;
}

CycInt::CycInt(unsigned k) : k_(k) {
  if (k < 1) throw InvalidParameter("CycInt: order must be positive");
  coeffs_.assign(cyclotomic_polynomial(k).size() - 1, BigInt(0));
}

CycInt CycInt::reduce(unsigned k, const std::vector<BigInt>& coeffs) {
  CycInt out(k);
  out.coeffs_ = reduce_mod(cyclotomic_polynomial(k), coeffs);
  return out;
}

CycInt CycInt::root_power(unsigned k, std::uint64_t e) {
  std::vector<BigInt> c(k, 0);
  c[e % k] = 1;
  return reduce(k, c);
}

bool CycInt::is_integer() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

bool CycInt::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

CycInt CycInt::operator+(const CycInt& other) const {
  if (other.k_ != k_) throw InvalidParameter("CycInt: mismatched orders");
  CycInt out = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] += other.coeffs_[i];
  return out;
}

CycInt CycInt::operator-(const CycInt& other) const {
  if (other.k_ != k_) throw InvalidParameter("CycInt: mismatched orders");
  CycInt out = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] -= other.coeffs_[i];
  return out;
}

CycInt CycInt::operator*(const CycInt& other) const {
  if (other.k_ != k_) throw InvalidParameter("CycInt: mismatched orders");
  std::vector<BigInt> prod(coeffs_.size() + other.coeffs_.size(), 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) prod[i + j] += coeffs_[i] * other.coeffs_[j];
  return reduce(k_, prod);
}

IntPoly IntPoly::variable(unsigned index) {
  if (index >= 4) throw InvalidParameter("IntPoly: variable index must be below 4");
  IntPoly p;
  Exponent4 e{0, 0, 0, 0};
  e[index] = 1;
  p.terms[e] = 1;
  return p;
}

IntPoly IntPoly::constant(const BigInt& c) {
  IntPoly p;
  if (c != 0) p.terms[{0, 0, 0, 0}] = c;
  return p;
}

long IntPoly::degree() const {
  long d = -1;
  for (const auto& [e, c] : terms) d = std::max<long>(d, e[0] + e[1] + e[2] + e[3]);
  return d;
}

bool IntPoly::homogeneous() const {
  const long d = degree();
  for (const auto& [e, c] : terms)
    if (static_cast<long>(e[0] + e[1] + e[2] + e[3]) != d) return false;
  return true;
}

IntPoly IntPoly::operator+(const IntPoly& other) const {
  IntPoly out = *this;
  for (const auto& [e, c] : other.terms) {
    BigInt& slot = out.terms[e];
    slot += c;
    if (slot == 0) out.terms.erase(e);
  }
  return out;
}

IntPoly IntPoly::operator-() const {
  IntPoly out = *this;
  for (auto& [e, c] : out.terms) c = -c;
  return out;
}

IntPoly IntPoly::operator-(const IntPoly& other) const { return *this + (-other); }

IntPoly IntPoly::operator*(const IntPoly& other) const {
  IntPoly out;
  for (const auto& [e1, c1] : terms) {
    for (const auto& [e2, c2] : other.terms) {
      const Exponent4 e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]};
      out.terms[e] += c1 * c2;
    }
  }
  std::erase_if(out.terms, [](const auto& t) { return t.second == 0; });
  return out;
}

BigInt IntPoly::evaluate(const std::array<BigInt, 4>& x) const {
  std::array<std::vector<BigInt>, 4> powers;
  for (unsigned v = 0; v < 4; ++v) powers[v].push_back(1);
  BigInt total = 0;
  for (const auto& [e, c] : terms) {
    BigInt term = c;
    for (unsigned v = 0; v < 4; ++v) {
      while (powers[v].size() <= e[v]) powers[v].push_back(powers[v].back() * x[v]);
      term *= powers[v][e[v]];
    }
    total += term;
  }
  return total;
}

std::uint64_t IntPoly::evaluate_mod(const std::array<std::uint64_t, 4>& x, std::uint64_t m) const {
  if (m == 0) throw InvalidParameter("IntPoly::evaluate_mod: modulus must be positive");
  std::uint64_t total = 0;
  for (const auto& [e, c] : terms) {
    std::uint64_t term = mpz_fdiv_ui(c.get_mpz_t(), m);
    for (unsigned v = 0; v < 4; ++v) term = mul_mod(term, pow_mod(x[v] % m, e[v], m), m);
    total = add_mod(total, term, m);
  }
  return total;
}

std::string IntPoly::to_text() const {
  std::ostringstream out;
  for (const auto& [e, c] : terms) out << e[0] << ' ' << e[1] << ' ' << e[2] << ' ' << e[3] << ' ' << c.get_str() << '\n';
  return out.str();
}

IntPoly IntPoly::from_text(const std::string& text) {
  IntPoly p;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    Exponent4 e;
    std::string coeff;
    if (!(fields >> e[0] >> e[1] >> e[2] >> e[3] >> coeff)) throw InvalidParameter("IntPoly::from_text: bad line '" + line + "'");
    BigInt c;
    if (c.set_str(coeff, 10) != 0) throw InvalidParameter("IntPoly::from_text: bad coefficient '" + coeff + "'");
    if (c != 0) p.terms[e] += c;
  }
  return p;
}

CycPoly expand_Gk(unsigned k, ProductRoute route, const ProdPolyOptions& options) {
  if (k < 2) throw InvalidParameter("expand_Gk: k must be at least 2");
  if (k > options.max_k) throw CapacityError("expand_Gk: k = " + std::to_string(k) + " above cap " + std::to_string(options.max_k));

  DenseForm form(k, 0);
  form.slot(0)[0] = 1;
  form.mark(0);
  if (route == ProductRoute::Grouped) {
    // Summing w1 out of each (w2, w3) class: the k linear factors multiply to
    // (-1)^(k+1) (Z^k - X4^k), and the k^2 signs cancel.
    for (unsigned e2 = 0; e2 < k; ++e2)
      for (unsigned e3 = 0; e3 < k; ++e3) form = multiply(form, grouped_factor(k, e2, e3), k, k);
  } else {
    for (unsigned e1 = 0; e1 < k; ++e1)
      for (unsigned e2 = 0; e2 < k; ++e2)
        for (unsigned e3 = 0; e3 < k; ++e3) form = multiply(form, linear_factor(e1, e2, e3), 1, k);
  }

  const auto phi = cyclotomic_polynomial(k);
  CycPoly out;
  out.k = k;
  const unsigned D = form.degree();
  for (unsigned a = 0; a <= D; ++a) {
    for (unsigned b = 0; a + b <= D; ++b) {
      for (unsigned c = 0; a + b + c <= D; ++c) {
        const std::size_t i = form.index(a, b, c);
        if (!form.nonzero(i)) continue;
        const BigInt* s = form.slot(i);
        CycInt value = CycInt::reduce(k, std::vector<BigInt>(s, s + k));
        if (!value.is_zero()) out.terms.emplace(Exponent4{a, b, c, D - a - b - c}, std::move(value));
      }
    }
  }
  return out;
}

IntPoly construct_Fk(unsigned k, const ProdPolyOptions& options) {
  const CycPoly G = expand_Gk(k, ProductRoute::Grouped, options);
  if (k <= options.cross_check_max_k) {
    const CycPoly full = expand_Gk(k, ProductRoute::Full, options);
    if (full.terms != G.terms) throw InternalConsistencyError("construct_Fk: grouped and full products differ");
  }
  IntPoly F;
  for (const auto& [e, c] : G.terms) {
    if (!c.is_integer()) throw InternalConsistencyError("construct_Fk: coefficient outside Z");
    for (unsigned v = 0; v < 4; ++v)
      if (e[v] % k) throw InternalConsistencyError("construct_Fk: exponent not divisible by k");
    F.terms[{e[0] / k, e[1] / k, e[2] / k, e[3] / k}] = c.coeffs()[0];
  }
  return F;
}

BigInt evaluate_Fk(const IntPoly& F, const std::array<BigInt, 4>& n) { return F.evaluate(n); }

BigInt evaluate_Fk(const IntPoly& F, const std::array<BigInt, 4>& n, const BigInt& m) {
  if (m <= 0) throw InvalidParameter("evaluate_Fk: modulus must be positive");
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), F.evaluate(n).get_mpz_t(), m.get_mpz_t());
  return r;
}

std::vector<BigInt> zero_count_profile(const IntPoly& F, std::uint64_t Nmax, const ZeroCountOptions& options) {
  const long double work = static_cast<long double>(Nmax) * Nmax * Nmax * Nmax;
  if (work > static_cast<long double>(options.work_budget)) {
    throw BudgetExceeded("zero count: N^4 = " + std::to_string(static_cast<double>(work)) + " exceeds budget " +
                         std::to_string(options.work_budget));
  }
  std::vector<BigInt> profile(Nmax + 1, 0);
  if (Nmax == 0 || F.terms.empty()) {
    // The zero polynomial vanishes everywhere.
    if (F.terms.empty())
      for (std::uint64_t N = 1; N <= Nmax; ++N) profile[N] = from_u64(N * N * N * N);
    return profile;
  }

  unsigned max_exp = 0;
  struct Group {
    Exponent4 e;
    std::vector<std::pair<unsigned, std::uint64_t>> tail;  // (e4, coefficient mod p)
  };
  std::vector<Group> groups;
  for (const auto& [e, c] : F.terms) {
    for (unsigned v = 0; v < 4; ++v) max_exp = std::max(max_exp, e[v]);
    if (groups.empty() || groups.back().e[0] != e[0] || groups.back().e[1] != e[1] || groups.back().e[2] != e[2])
      groups.push_back({e, {}});
    groups.back().tail.emplace_back(e[3], mpz_fdiv_ui(c.get_mpz_t(), kMersenne61));
  }
  std::vector<std::vector<std::uint64_t>> pw(Nmax + 1, std::vector<std::uint64_t>(max_exp + 1, 1));
  for (std::uint64_t x = 1; x <= Nmax; ++x)
    for (unsigned e = 1; e <= max_exp; ++e) pw[x][e] = mul_m61(pw[x][e - 1], x);

  // by_max[n1 - 1][M] counts zeros with max(n) = M.
  std::vector<std::vector<std::uint64_t>> by_max(Nmax, std::vector<std::uint64_t>(Nmax + 1, 0));
  parallel_for(Nmax, options.threads, [&](std::size_t i) {
    const std::uint64_t n1 = i + 1;
    std::vector<std::uint64_t> inner(max_exp + 1);
    auto& bucket = by_max[i];
    for (std::uint64_t n2 = 1; n2 <= Nmax; ++n2) {
      for (std::uint64_t n3 = 1; n3 <= Nmax; ++n3) {
        std::fill(inner.begin(), inner.end(), 0);
        for (const auto& g : groups) {
          const std::uint64_t base = mul_m61(mul_m61(pw[n1][g.e[0]], pw[n2][g.e[1]]), pw[n3][g.e[2]]);
          for (const auto& [e4, c] : g.tail) inner[e4] = add_m61(inner[e4], mul_m61(c, base));
        }
        for (std::uint64_t n4 = 1; n4 <= Nmax; ++n4) {
          std::uint64_t acc = 0;
          for (unsigned e = max_exp + 1; e-- > 0;) acc = add_m61(mul_m61(acc, n4), inner[e]);
          if (acc != 0) continue;  // certified nonzero
          if (F.evaluate({from_u64(n1), from_u64(n2), from_u64(n3), from_u64(n4)}) != 0) continue;
          ++bucket[std::max({n1, n2, n3, n4})];
        }
      }
    }
  });
  BigInt running = 0;
  for (std::uint64_t M = 1; M <= Nmax; ++M) {
    for (std::uint64_t i = 0; i < Nmax; ++i) running += from_u64(by_max[i][M]);
    profile[M] = running;
  }
  return profile;
}

BigInt count_zeros(const IntPoly& F, std::uint64_t N, const ZeroCountOptions& options) {
  return zero_count_profile(F, N, options)[N];
}

BigInt count_Tk_zeros(unsigned k, std::uint64_t N, const ZeroCountOptions& options) {
  return count_zeros(construct_Fk(k), N, options);
}

}  // namespace modroots
