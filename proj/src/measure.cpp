#include "numerositas/measure.hpp"

#include <algorithm>
#include <sstream>

#include "numerositas/errors.hpp"
#include "numerositas/numerosity.hpp"

namespace numerositas {

PlurInterval PlurInterval::of(std::vector<IntervalPiece> pieces) {
  for (auto& p : pieces) {
    p.lo.canonicalize();
    p.hi.canonicalize();
    if (p.lo > p.hi || (p.lo == p.hi && !(p.lo_closed && p.hi_closed)))
      throw Unsupported("interval piece endpoints must satisfy lo < hi (or a closed singleton)");
  }
  std::sort(pieces.begin(), pieces.end(), [](const IntervalPiece& x, const IntervalPiece& y) {
    if (x.lo != y.lo) return x.lo < y.lo;
    return x.lo_closed && !y.lo_closed;
  });
  std::vector<IntervalPiece> out;
  for (auto& p : pieces) {
    if (out.empty()) {
      out.push_back(p);
      continue;
    }
    IntervalPiece& last = out.back();
    bool overlap = p.lo < last.hi || (p.lo == last.hi && (p.lo_closed || last.hi_closed));
    if (!overlap) {
      out.push_back(p);
      continue;
    }
    if (p.hi > last.hi || (p.hi == last.hi && p.hi_closed)) {
      last.hi = p.hi;
      last.hi_closed = p.hi_closed;
    }
  }
  PlurInterval r;
  r.pieces_ = std::move(out);
  return r;
}

Rational PlurInterval::total_length() const {
  Rational total(0);
  for (const auto& p : pieces_) total += p.hi - p.lo;
  total.canonicalize();
  return total;
}

bool PlurInterval::contains(const Rational& x) const {
  for (const auto& p : pieces_) {
    if (x < p.lo || (x == p.lo && !p.lo_closed)) continue;
    if (x > p.hi || (x == p.hi && !p.hi_closed)) continue;
    return true;
  }
  return false;
}

PlurInterval PlurInterval::unite(const PlurInterval& o) const {
  std::vector<IntervalPiece> all = pieces_;
  all.insert(all.end(), o.pieces_.begin(), o.pieces_.end());
  return of(std::move(all));
}

PlurInterval PlurInterval::intersect(const PlurInterval& o) const {
  std::vector<IntervalPiece> out;
  for (const auto& a : pieces_) {
    for (const auto& b : o.pieces_) {
      Rational lo = std::max(a.lo, b.lo);
      Rational hi = std::min(a.hi, b.hi);
      bool lc = (lo == a.lo && !a.lo_closed) || (lo == b.lo && !b.lo_closed) ? false : true;
      bool rc = (hi == a.hi && !a.hi_closed) || (hi == b.hi && !b.hi_closed) ? false : true;
      if (lo > hi || (lo == hi && !(lc && rc))) continue;
      out.push_back({lo, hi, lc, rc});
    }
  }
  return of(std::move(out));
}

PlurInterval PlurInterval::subtract(const PlurInterval& o) const {
  std::vector<IntervalPiece> out;
  for (const auto& a : pieces_) {
    std::vector<IntervalPiece> current{a};
    for (const auto& b : o.pieces_) {
      std::vector<IntervalPiece> next;
      for (const auto& c : current) {
        bool disjoint = b.hi < c.lo || c.hi < b.lo ||
                        (b.hi == c.lo && !(b.hi_closed && c.lo_closed)) ||
                        (c.hi == b.lo && !(c.hi_closed && b.lo_closed));
        if (disjoint) {
          next.push_back(c);
          continue;
        }
        // survivor left of b: up to b.lo, keeping the point iff b is open there
        {
          Rational hi = b.lo;
          bool hi_closed = !b.lo_closed;
          if (hi > c.hi || (hi == c.hi && hi_closed && !c.hi_closed)) {
            hi = c.hi;
            hi_closed = c.hi_closed;
          }
          if (c.lo < hi || (c.lo == hi && c.lo_closed && hi_closed))
            next.push_back({c.lo, hi, c.lo_closed, hi_closed});
        }
        // survivor right of b
        {
          Rational lo = b.hi;
          bool lo_closed = !b.hi_closed;
          if (lo < c.lo || (lo == c.lo && lo_closed && !c.lo_closed)) {
            lo = c.lo;
            lo_closed = c.lo_closed;
          }
          if (lo < c.hi || (lo == c.hi && lo_closed && c.hi_closed))
            next.push_back({lo, c.hi, lo_closed, c.hi_closed});
        }
      }
      current = std::move(next);
    }
    out.insert(out.end(), current.begin(), current.end());
  }
  return of(std::move(out));
}

PlurInterval PlurInterval::translate(const Rational& r) const {
  std::vector<IntervalPiece> out = pieces_;
  for (auto& p : out) {
    p.lo += r;
    p.hi += r;
  }
  return of(std::move(out));
}

bool PlurInterval::operator==(const PlurInterval& o) const {
  if (pieces_.size() != o.pieces_.size()) return false;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& a = pieces_[i];
    const auto& b = o.pieces_[i];
    if (a.lo != b.lo || a.hi != b.hi || a.lo_closed != b.lo_closed || a.hi_closed != b.hi_closed)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Measures.

EuclideanValue num_plurinterval(const PlurInterval& p) {
  EuclideanValue total;
  for (const auto& piece : p.pieces()) {
    // (hi-lo)*b, closed right end +1, missing left end -1
    EuclideanValue v = EuclideanValue::monomial(piece.hi - piece.lo, Rational(0), 1);
    int corr = (piece.hi_closed ? 1 : 0) - (piece.lo_closed ? 0 : 1);
    total = total + v + EuclideanValue::constant(Rational(corr));
  }
  return total;
}

MeasureValue mu(const EuclideanValue& numerosity, const EuclideanValue& unit) {
  if (unit.is_zero()) throw DivisionByZero();
  auto ratio = divide(numerosity, unit);
  StandardPart sp = std::holds_alternative<EuclideanValue>(ratio)
                        ? standard_part(std::get<EuclideanValue>(ratio))
                        : standard_part(std::get<Quotient>(ratio));
  switch (sp.kind) {
    case StandardPart::Finite: return MeasureValue::finite(sp.value);
    case StandardPart::PlusInfinity: return MeasureValue::plus_inf();
    case StandardPart::MinusInfinity:
      throw Unsupported("negative measure ratio");
    default: return MeasureValue::unknown();
  }
}

MeasureValue mu_set(const SetExpr& e, const EuclideanValue& unit) {
  return mu(num(e), unit);
}

MeasureValue pj_measure(const PlurInterval& p) {
  // count the rational grid inside each piece and take st(count / a)
  EuclideanValue total;
  for (const auto& piece : p.pieces()) {
    if (piece.is_point()) {
      total = total + EuclideanValue::constant(Rational(1));
      continue;
    }
    total = total +
            count_form(*SetExpr::q_interval(piece.lo, piece.hi, piece.lo_closed, piece.hi_closed))
                .form;
  }
  return mu(total, EuclideanValue::alpha());
}

MeasureValue lebesgue_measure(const PlurInterval& p) {
  return mu(num_plurinterval(p), EuclideanValue::beta());
}

// ---------------------------------------------------------------------------
// Conversions and text forms.

std::optional<PlurInterval> as_plurinterval(const SetExpr& e) {
  switch (e.kind) {
    case SetKind::RInterval:
      return PlurInterval::of({{e.lo, e.hi, e.lo_closed, e.hi_closed}});
    case SetKind::Union: {
      auto l = as_plurinterval(*e.left);
      auto r = as_plurinterval(*e.right);
      if (l && r) return l->unite(*r);
      return std::nullopt;
    }
    case SetKind::Intersect: {
      auto l = as_plurinterval(*e.left);
      auto r = as_plurinterval(*e.right);
      if (l && r) return l->intersect(*r);
      return std::nullopt;
    }
    case SetKind::Diff: {
      auto l = as_plurinterval(*e.left);
      auto r = as_plurinterval(*e.right);
      if (l && r) return l->subtract(*r);
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

PlurInterval parse_plurinterval(const std::string& text) {
  // pieces joined by "u": "[0,1) u [2,5/2]"
  std::vector<IntervalPiece> pieces;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& expected) -> SyntaxError {
    return SyntaxError(i + 1, {expected},
                       "expected " + expected + " at position " + std::to_string(i + 1));
  };
  auto parse_number = [&]() -> Rational {
    std::size_t start = i;
    if (i < text.size() && text[i] == '-') ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size() && text[i] == '/') {
      ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    }
    if (i == start) throw fail("rational number");
    return parse_rational_text(text.substr(start, i - start));
  };
  while (true) {
    skip_ws();
    if (i >= text.size()) throw fail("interval piece");
    IntervalPiece p;
    if (text[i] == '[') p.lo_closed = true;
    else if (text[i] == '(') p.lo_closed = false;
    else throw fail("'[' or '('");
    ++i;
    skip_ws();
    p.lo = parse_number();
    skip_ws();
    if (i >= text.size() || text[i] != ',') throw fail("','");
    ++i;
    skip_ws();
    p.hi = parse_number();
    skip_ws();
    if (i >= text.size() || (text[i] != ']' && text[i] != ')')) throw fail("']' or ')'");
    p.hi_closed = text[i] == ']';
    ++i;
    pieces.push_back(p);
    skip_ws();
    if (i >= text.size()) break;
    if (text[i] != 'u') throw fail("'u' or end of input");
    ++i;
  }
  try {
    return PlurInterval::of(std::move(pieces));
  } catch (const Unsupported& u) {
    throw SyntaxError(1, {}, u.what());
  }
}

std::string format_plurinterval(const PlurInterval& p) {
  if (p.is_empty()) return "{}";
  std::ostringstream os;
  bool first = true;
  for (const auto& piece : p.pieces()) {
    if (!first) os << " u ";
    first = false;
    os << (piece.lo_closed ? '[' : '(') << to_string(piece.lo) << ',' << to_string(piece.hi)
       << (piece.hi_closed ? ']' : ')');
  }
  return os.str();
}

std::string format_measure(const MeasureValue& v) {
  switch (v.kind) {
    case MeasureValue::Finite: return to_string(v.value);
    case MeasureValue::PlusInfinity: return "+inf";
    default: return "unknown";
  }
}

}  // namespace numerositas
