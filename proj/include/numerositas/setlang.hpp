#pragma once

#include <memory>
#include <string>
#include <vector>

#include "numerositas/numeric.hpp"

namespace numerositas {

// Definable-set expressions. Atoms cover the supported scalar families;
// composites are the closure constructors. Instances are immutable and
// shared; build them through the factory functions, which enforce the
// well-formedness invariants (sorted deduplicated finite lists, interval
// endpoint order, nonnegative progression anchors).
enum class SetKind {
  Finite,      // explicit list of rationals
  Naturals,    // N = {1, 2, 3, ...}
  Naturals0,   // N0 = N and 0
  Integers,    // Z
  Rationals,   // Q
  NatProg,     // {a + k d | k >= 0}, a >= 0, d >= 1
  IntProg,     // {a + k d | k in Z}, d >= 1
  Powers,      // {m^k | m in N}, k >= 1
  QInterval,   // Q intersected with a rational-endpoint interval
  RInterval,   // real interval with rational endpoints
  Union,
  Intersect,
  Diff,
  Product,
  PFin,        // finite subsets
  FFin,        // finite partial functions X -> E, counted per the finite functions rule
};

class SetExpr;
using SetExprPtr = std::shared_ptr<const SetExpr>;

class SetExpr {
 public:
  SetKind kind;

  std::vector<Rational> elements;  // Finite
  BigInt a = 0;                    // NatProg/IntProg anchor
  BigInt d = 0;                    // NatProg/IntProg step; Powers exponent
  Rational lo, hi;                 // intervals
  bool lo_closed = false, hi_closed = false;

  SetExprPtr left, right;          // composites; PFin uses left only

  static SetExprPtr finite(std::vector<Rational> xs);
  static SetExprPtr naturals();
  static SetExprPtr naturals0();
  static SetExprPtr integers();
  static SetExprPtr rationals();
  static SetExprPtr nat_prog(BigInt a, BigInt d);
  static SetExprPtr int_prog(BigInt a, BigInt d);
  static SetExprPtr powers(BigInt k);
  static SetExprPtr q_interval(Rational lo, Rational hi, bool lo_closed, bool hi_closed);
  static SetExprPtr r_interval(Rational lo, Rational hi, bool lo_closed, bool hi_closed);
  static SetExprPtr set_union(SetExprPtr e, SetExprPtr f);
  static SetExprPtr intersect(SetExprPtr e, SetExprPtr f);
  static SetExprPtr diff(SetExprPtr e, SetExprPtr f);
  static SetExprPtr product(SetExprPtr e, SetExprPtr f);
  static SetExprPtr pfin(SetExprPtr e);
  static SetExprPtr ffin(SetExprPtr x, SetExprPtr e);

  bool equals(const SetExpr& other) const;
};

// Ordinal expressions as parsed. `+ * ^` are the standard (non-commutative)
// operations, `<+>` and `<*>` the natural ones. Evaluation to CNF lives in
// ordinal.hpp.
enum class OrdKind { Omega, Nat, OrdAdd, OrdMul, OrdPow, NatAdd, NatMul, Theta };

class OrdExpr;
using OrdExprPtr = std::shared_ptr<const OrdExpr>;

class OrdExpr {
 public:
  OrdKind kind;
  BigInt nat = 0;       // Nat value, or Theta index
  OrdExprPtr left, right;

  static OrdExprPtr omega();
  static OrdExprPtr nat_const(BigInt k);
  static OrdExprPtr theta(BigInt j);
  static OrdExprPtr binary(OrdKind op, OrdExprPtr l, OrdExprPtr r);

  bool equals(const OrdExpr& other) const;
};

SetExprPtr parse_set(const std::string& text);
OrdExprPtr parse_ordinal(const std::string& text);

std::string render(const SetExpr& e);
std::string render(const OrdExpr& e);

// "p/q" or plain integer; used by both grammars.
Rational parse_rational_text(const std::string& text);
std::string render_rational(const Rational& q);

}  // namespace numerositas
