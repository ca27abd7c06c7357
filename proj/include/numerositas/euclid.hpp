#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "numerositas/numeric.hpp"

namespace numerositas {

/*
 * The computable value field.
 *
 * A value denotes an eventual closed form along the level chain
 * n_1 < n_2 < ... (n_m = m!^{m!}): two infinite units
 *
 *     a = the count of N up to level n   (evaluates to n itself)
 *     b = the count of [0,1)             (no finite model)
 *
 * and finite sums
 *
 *     value   := sum of exp-terms + puiseux
 *     puiseux := sum of  c * a^p * b^k      c rational != 0, p rational >= 0,
 *                                           k integer >= 0
 *     exp-term:= C * prod_i base_i^expo_i   C puiseux, base_i/expo_i puiseux,
 *                                           base_i eventually >= 2,
 *                                           expo_i infinite
 *
 * Everything is canonical: monomials sorted by (k, p) descending with no
 * duplicates and no zero coefficients, exp-term factor lists sorted and
 * merged, terms with equal factor lists merged, empty sum = 0. Equality is
 * structural equality of canonical forms.
 *
 * Ordering is eventual dominance. Pure-a comparisons are decided by the
 * leading monomial. Across units the only adopted fact is
 *
 *     b > (2 a^2 + 1)^2
 *
 * (the count of [0,1) eventually exceeds the square of the full rational
 * grid count); the comparison engine derives consequences of that single
 * inequality by substituting the bound for b, and answers Unknown for
 * anything it cannot certify. Exp-terms dominate every puiseux; two
 * exp-terms are compared only with identical bases or identical exponents.
 */

struct Monomial {
  Rational coeff;   // nonzero
  Rational a_exp;   // >= 0
  int b_exp = 0;    // >= 0
};

class Puiseux {
 public:
  Puiseux() = default;
  static Puiseux constant(const Rational& c);
  static Puiseux alpha();
  static Puiseux beta();
  static Puiseux monomial(const Rational& coeff, const Rational& a_exp, int b_exp);

  const std::vector<Monomial>& monomials() const { return mono_; }

  bool is_zero() const { return mono_.empty(); }
  bool is_constant() const;
  bool is_pure_alpha() const;  // no b factor anywhere
  bool is_pure_beta() const;   // every monomial with a_exp == 0
  Rational constant_term() const;

  Puiseux operator-() const;
  Puiseux operator+(const Puiseux& o) const;
  Puiseux operator-(const Puiseux& o) const;
  Puiseux operator*(const Puiseux& o) const;
  Puiseux pow(unsigned long k) const;

  bool operator==(const Puiseux& o) const;
  // Arbitrary total order for canonical sorting (not the field order).
  static int structural_compare(const Puiseux& x, const Puiseux& y);

 private:
  std::vector<Monomial> mono_;  // canonical: (b_exp, a_exp) strictly descending
  void normalize();
  friend class EuclideanValue;
};

struct ExpFactor {
  Puiseux base;      // eventually >= 2
  Puiseux exponent;  // infinite (nonconstant, eventually >= 1)
};

struct ExpTerm {
  Puiseux coeff;                  // nonzero
  std::vector<ExpFactor> factors; // nonempty, sorted by structural base order
};

enum class Comparison { Less, Equal, Greater, Unknown };
enum class Magnitude { Infinitesimal, Finite, Infinite, Unknown };

struct StandardPart {
  enum Kind { Finite, PlusInfinity, MinusInfinity, Unknown } kind = Unknown;
  Rational value;  // meaningful iff kind == Finite

  static StandardPart finite(const Rational& v) { return {Kind::Finite, v}; }
  static StandardPart plus_inf() { return {Kind::PlusInfinity, Rational(0)}; }
  static StandardPart minus_inf() { return {Kind::MinusInfinity, Rational(0)}; }
  static StandardPart unknown() { return {Kind::Unknown, Rational(0)}; }
  bool operator==(const StandardPart& o) const {
    return kind == o.kind && (kind != Kind::Finite || value == o.value);
  }
};

class EuclideanValue {
 public:
  EuclideanValue() = default;
  EuclideanValue(const Puiseux& p) : poly_(p) {}

  static EuclideanValue constant(const Rational& c) { return EuclideanValue(Puiseux::constant(c)); }
  static EuclideanValue alpha() { return EuclideanValue(Puiseux::alpha()); }
  static EuclideanValue beta() { return EuclideanValue(Puiseux::beta()); }
  static EuclideanValue monomial(const Rational& coeff, const Rational& a_exp, int b_exp = 0) {
    return EuclideanValue(Puiseux::monomial(coeff, a_exp, b_exp));
  }
  static EuclideanValue exp_sum(std::vector<ExpTerm> terms, Puiseux poly);

  const Puiseux& puiseux_part() const { return poly_; }
  const std::vector<ExpTerm>& exp_terms() const { return terms_; }

  bool is_zero() const { return terms_.empty() && poly_.is_zero(); }
  bool is_puiseux() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() && poly_.is_constant(); }
  bool is_pure_alpha() const;
  bool is_beta_free() const;

  EuclideanValue operator-() const;
  EuclideanValue operator+(const EuclideanValue& o) const;
  EuclideanValue operator-(const EuclideanValue& o) const;
  EuclideanValue operator*(const EuclideanValue& o) const;
  bool operator==(const EuclideanValue& o) const;
  bool operator!=(const EuclideanValue& o) const { return !(*this == o); }

 private:
  Puiseux poly_;
  std::vector<ExpTerm> terms_;
  void normalize();
};

struct Quotient {
  EuclideanValue num;
  EuclideanValue den;  // nonzero
};

// Exact division when w divides v in the monomial/polynomial sense;
// otherwise a reduced Quotient. Throws DivisionByZero.
std::variant<EuclideanValue, Quotient> divide(const EuclideanValue& v, const EuclideanValue& w);

Comparison compare(const EuclideanValue& v, const EuclideanValue& w);
inline Comparison flip(Comparison c) {
  if (c == Comparison::Less) return Comparison::Greater;
  if (c == Comparison::Greater) return Comparison::Less;
  return c;
}

StandardPart standard_part(const EuclideanValue& v);
StandardPart standard_part(const Quotient& q);

Magnitude classify(const EuclideanValue& v);
Magnitude classify(const Quotient& q);

// base^exponent in the representable fragment: constant integer exponents
// expand, singleton bases fold, infinite exponents form exp-terms. Throws
// Unsupported when the result leaves the representation (nested towers).
EuclideanValue pow_value(const EuclideanValue& base, const EuclideanValue& exponent);

struct EvalLimits {
  // Ceiling on the bit size of any exp-term evaluation.
  unsigned long max_result_bits = 8u * 1024u * 1024u;
};

// Substitute a := n_m and compute exactly. The value must be b-free and every
// a-exponent denominator must divide m!. Throws BetaNotEvaluable,
// ExponentNotIntegralAtLevel, ComplexityExceeded.
Rational evaluate_at_level(const EuclideanValue& v, unsigned m, const EvalLimits& limits = {});

// Canonical text form, e.g. "2*a^2 + 1", "(3/4)*b", "2^(a)". unit_symbol
// renames a (count forms print with symbol n).
std::string format_value(const EuclideanValue& v, char unit_symbol = 'a');

}  // namespace numerositas
