#pragma once

#include <memory>
#include <string>
#include <vector>

#include "numerositas/euclid.hpp"
#include "numerositas/numeric.hpp"
#include "numerositas/setlang.hpp"

namespace numerositas {

/*
 * Ordinals below epsilon_0 in hereditary Cantor normal form:
 *
 *     sigma = w^{e_1} c_1 + ... + w^{e_k} c_k,   e_1 > ... > e_k,  c_i >= 1,
 *
 * exponents recursively in the same form. Zero is the empty sum. The
 * representation is unique, so equality is structural and the order is
 * lexicographic on (exponent, coefficient) pairs.
 */
class OrdinalCNF {
 public:
  struct Term {
    std::shared_ptr<const OrdinalCNF> exp;  // never null; shared, immutable
    BigInt coeff;                           // >= 1
    const OrdinalCNF& exponent() const { return *exp; }
  };

  OrdinalCNF() = default;  // zero

  static OrdinalCNF zero() { return {}; }
  static OrdinalCNF from_nat(const BigInt& k);
  static OrdinalCNF omega();
  // Single term w^e * c (c >= 1).
  static OrdinalCNF power_term(OrdinalCNF e, BigInt c);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_nat() const;       // zero or a single w^0 term
  BigInt nat_value() const;  // valid when is_nat()

  bool operator==(const OrdinalCNF& o) const;
  bool operator!=(const OrdinalCNF& o) const { return !(*this == o); }

 private:
  std::vector<Term> terms_;  // exponents strictly decreasing
  friend OrdinalCNF make_cnf(std::vector<OrdinalCNF::Term> terms);
};

Comparison compare_ord(const OrdinalCNF& s, const OrdinalCNF& t);  // never Unknown
inline bool ord_less(const OrdinalCNF& s, const OrdinalCNF& t) {
  return compare_ord(s, t) == Comparison::Less;
}

// Natural (commutative) operations: coefficient-wise sum; product over term
// pairs with natural-summed exponents.
OrdinalCNF nat_add(const OrdinalCNF& s, const OrdinalCNF& t);
OrdinalCNF nat_mul(const OrdinalCNF& s, const OrdinalCNF& t);

// Standard (non-commutative) operations.
OrdinalCNF ord_add(const OrdinalCNF& s, const OrdinalCNF& t);
OrdinalCNF ord_mul(const OrdinalCNF& s, const OrdinalCNF& t);
OrdinalCNF ord_pow(const OrdinalCNF& s, const OrdinalCNF& t);

// theta_j = w^(w^j), the j-th irreducible ordinal under the formal recursion
// theta_{j+1} = sup_m theta_j^m. (A published display list instead jumps to
// w^(w^w) at j = 2; that list contradicts the recursion, which we follow.)
OrdinalCNF theta(unsigned j);

// theta > 0 is irreducible iff x,y,z < theta implies x*y + z < theta;
// equivalently theta = 1 or theta = w^(w^delta).
bool is_irreducible(const OrdinalCNF& t);

// Base-theta_j positional form: tau = sum over digits of theta_j^k * b_k with
// each digit b_k < theta_j, powers k strictly decreasing.
struct ThetaForm {
  unsigned j = 0;
  struct Digit {
    unsigned power;
    OrdinalCNF digit;
  };
  std::vector<Digit> digits;
};

// Requires tau < theta_{j+1}; throws ArgumentNotBelowThetaJPlus1.
ThetaForm to_theta_base(const OrdinalCNF& tau, unsigned j);
OrdinalCNF from_theta_base(const ThetaForm& f);

// num of the set of ordinals below tau, as a value: substitute w := a+1.
// Requires every CNF exponent finite (tau < w^w); throws ExponentNotFinite.
EuclideanValue embed(const OrdinalCNF& tau);

// Max / min under the ordinal order; sup of the empty list is 0 by
// convention, min_ord requires a nonempty list.
OrdinalCNF sup_ord(const std::vector<OrdinalCNF>& xs);
OrdinalCNF min_ord(const std::vector<OrdinalCNF>& xs);

// Evaluate a parsed ordinal expression. Theta indexes above `max_theta_index`
// are refused (representation growth is doubly exponential in j).
OrdinalCNF eval_ord_expr(const OrdExpr& e, unsigned max_theta_index = 16);

// "w^(w*2+3)*5 + w^4"; round-trips through parse_ordinal + eval_ord_expr.
std::string format_ordinal(const OrdinalCNF& t);
// "T1^2*(w^3*5) + T1^0*(w^4)".
std::string format_theta(const ThetaForm& f);

}  // namespace numerositas
