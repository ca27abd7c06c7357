#pragma once

#include <gmpxx.h>

#include <string>

namespace numerositas {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt factorial(unsigned m) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), m);
  return r;
}

// base^exp for exp >= 0. exp must fit an unsigned long (true everywhere we
// raise: exponents are level arithmetic, never nets).
inline BigInt pow_big(const BigInt& base, const BigInt& exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp.get_ui());
  return r;
}

// Exact k-th root. Returns true and fills *root iff x is a perfect k-th power.
inline bool perfect_root(const BigInt& x, unsigned long k, BigInt* root) {
  BigInt r;
  int exact = mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
  if (exact && root != nullptr) *root = r;
  return exact != 0;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline std::string to_string(const BigInt& z) { return z.get_str(); }
inline std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

}  // namespace numerositas
