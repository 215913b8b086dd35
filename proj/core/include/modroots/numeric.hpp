#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace modroots {

using BigInt = mpz_class;
using Rational = mpq_class;

// Residues are always kept in [0, q).
using Residue = std::uint64_t;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// "num/den", or just "num" for integers.
inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const BigInt& z) { return z.get_str(); }

inline double to_double(const BigInt& z) { return z.get_d(); }
inline double to_double(const Rational& r) { return r.get_d(); }

// Exact power with a machine-sized exponent.
inline BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

inline Rational pow(const Rational& base, unsigned long exponent) {
  BigInt num = pow(BigInt(base.get_num()), exponent);
  BigInt den = pow(BigInt(base.get_den()), exponent);
  return make_rational(num, den);
}

inline BigInt from_u64(std::uint64_t v) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return out;
}

inline BigInt from_i64(std::int64_t v) {
  if (v >= 0) return from_u64(static_cast<std::uint64_t>(v));
  BigInt out = from_u64(static_cast<std::uint64_t>(-(v + 1)));
  out += 1;
  return -out;
}

}  // namespace modroots
