#pragma once

#include <optional>
#include <string>
#include <vector>

#include "numerositas/euclid.hpp"
#include "numerositas/setlang.hpp"

namespace numerositas {

struct IntervalPiece {
  Rational lo, hi;
  bool lo_closed = true, hi_closed = false;
  bool is_point() const { return lo == hi; }
};

// Normalized finite union of rational-endpoint intervals: pieces sorted,
// pairwise disjoint, and not mergeable (no overlap, no touching endpoint
// covered from both sides). Normalization is idempotent.
class PlurInterval {
 public:
  PlurInterval() = default;
  static PlurInterval of(std::vector<IntervalPiece> pieces);
  static PlurInterval empty() { return {}; }

  const std::vector<IntervalPiece>& pieces() const { return pieces_; }
  bool is_empty() const { return pieces_.empty(); }
  Rational total_length() const;
  bool contains(const Rational& x) const;

  PlurInterval unite(const PlurInterval& o) const;
  PlurInterval intersect(const PlurInterval& o) const;
  PlurInterval subtract(const PlurInterval& o) const;
  PlurInterval translate(const Rational& r) const;

  bool operator==(const PlurInterval& o) const;

 private:
  std::vector<IntervalPiece> pieces_;
};

struct MeasureValue {
  enum Kind { Finite, PlusInfinity, Unknown } kind = Unknown;
  Rational value;  // iff Finite

  static MeasureValue finite(const Rational& v) { return {Kind::Finite, v}; }
  static MeasureValue plus_inf() { return {Kind::PlusInfinity, Rational(0)}; }
  static MeasureValue unknown() { return {Kind::Unknown, Rational(0)}; }
  bool operator==(const MeasureValue& o) const {
    return kind == o.kind && (kind != Kind::Finite || value == o.value);
  }
};

// Exact b-linear numerosity: each piece [p,q) contributes (q-p)*b, a closed
// right endpoint +1, an open left endpoint -1. Derived from exact level-wise
// translation invariance plus finite additivity; there is no finite-level
// enumeration for real intervals, so this route is axiomatic.
EuclideanValue num_plurinterval(const PlurInterval& p);

// st(numerosity / unit); Unknown when the cross-unit policy cannot decide.
MeasureValue mu(const EuclideanValue& numerosity, const EuclideanValue& unit);
MeasureValue mu_set(const SetExpr& e, const EuclideanValue& unit);

// st(num(P ∩ Q) / a): counting form of the rational grid inside P.
MeasureValue pj_measure(const PlurInterval& p);

// st(num_plurinterval(P) / b) = total length; closure flags never matter.
MeasureValue lebesgue_measure(const PlurInterval& p);

// A set expression made of rint atoms closed under union/inter/diff.
std::optional<PlurInterval> as_plurinterval(const SetExpr& e);

// "[0,1) u [2,5/2]"; singletons print as "[p,p]".
PlurInterval parse_plurinterval(const std::string& text);
std::string format_plurinterval(const PlurInterval& p);
std::string format_measure(const MeasureValue& v);

}  // namespace numerositas
