#include "numerositas/ordinal.hpp"

#include <algorithm>
#include <sstream>

#include "numerositas/errors.hpp"

namespace numerositas {

namespace {
constexpr std::size_t kMaxTerms = 1u << 20;  // representation budget
}

OrdinalCNF make_cnf(std::vector<OrdinalCNF::Term> terms) {
  if (terms.size() > kMaxTerms)
    throw ResultAboveEpsilon0("ordinal would need " + std::to_string(terms.size()) +
                              " normal-form terms");
  OrdinalCNF r;
  r.terms_ = std::move(terms);
  return r;
}

namespace {
std::shared_ptr<const OrdinalCNF> box(OrdinalCNF e) {
  return std::make_shared<const OrdinalCNF>(std::move(e));
}
}  // namespace

OrdinalCNF OrdinalCNF::from_nat(const BigInt& k) {
  if (k < 0) throw Unsupported("ordinal naturals are >= 0");
  if (k == 0) return {};
  return make_cnf({{box(OrdinalCNF()), k}});
}

OrdinalCNF OrdinalCNF::omega() { return power_term(from_nat(1), 1); }

OrdinalCNF OrdinalCNF::power_term(OrdinalCNF e, BigInt c) {
  if (c < 1) throw Unsupported("normal-form coefficients are >= 1");
  return make_cnf({{box(std::move(e)), std::move(c)}});
}

bool OrdinalCNF::is_nat() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent().is_zero());
}

BigInt OrdinalCNF::nat_value() const {
  if (terms_.empty()) return 0;
  return terms_[0].coeff;
}

Comparison compare_ord(const OrdinalCNF& s, const OrdinalCNF& t) {
  const auto& a = s.terms();
  const auto& b = t.terms();
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    Comparison c = compare_ord(a[i].exponent(), b[i].exponent());
    if (c != Comparison::Equal) return c;
    if (a[i].coeff != b[i].coeff)
      return a[i].coeff < b[i].coeff ? Comparison::Less : Comparison::Greater;
  }
  if (a.size() != b.size())
    return a.size() < b.size() ? Comparison::Less : Comparison::Greater;
  return Comparison::Equal;
}

bool OrdinalCNF::operator==(const OrdinalCNF& o) const {
  return compare_ord(*this, o) == Comparison::Equal;
}

// ---------------------------------------------------------------------------
// Natural operations: commutative, coefficient-wise.

OrdinalCNF nat_add(const OrdinalCNF& s, const OrdinalCNF& t) {
  std::vector<OrdinalCNF::Term> out;
  const auto& a = s.terms();
  const auto& b = t.terms();
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (i == a.size()) {
      out.push_back(b[j++]);
    } else if (j == b.size()) {
      out.push_back(a[i++]);
    } else {
      Comparison c = compare_ord(a[i].exponent(), b[j].exponent());
      if (c == Comparison::Greater) out.push_back(a[i++]);
      else if (c == Comparison::Less) out.push_back(b[j++]);
      else {
        out.push_back({a[i].exp, a[i].coeff + b[j].coeff});
        ++i, ++j;
      }
    }
  }
  return make_cnf(std::move(out));
}

OrdinalCNF nat_mul(const OrdinalCNF& s, const OrdinalCNF& t) {
  OrdinalCNF acc;
  for (const auto& x : s.terms())
    for (const auto& y : t.terms())
      acc = nat_add(acc, OrdinalCNF::power_term(nat_add(x.exponent(), y.exponent()),
                                                x.coeff * y.coeff));
  return acc;
}

// ---------------------------------------------------------------------------
// Standard operations.

OrdinalCNF ord_add(const OrdinalCNF& s, const OrdinalCNF& t) {
  if (t.is_zero()) return s;
  const OrdinalCNF& lead = t.terms().front().exponent();
  std::vector<OrdinalCNF::Term> out;
  // terms of s below t's leading exponent are absorbed
  for (const auto& x : s.terms()) {
    Comparison c = compare_ord(x.exponent(), lead);
    if (c == Comparison::Greater) out.push_back(x);
    else if (c == Comparison::Equal) out.push_back({x.exp, x.coeff + t.terms().front().coeff});
    else break;
  }
  bool merged = !out.empty() && compare_ord(out.back().exponent(), lead) == Comparison::Equal;
  std::size_t start = merged ? 1 : 0;
  for (std::size_t j = start; j < t.terms().size(); ++j) out.push_back(t.terms()[j]);
  return make_cnf(std::move(out));
}

OrdinalCNF ord_mul(const OrdinalCNF& s, const OrdinalCNF& t) {
  if (s.is_zero() || t.is_zero()) return OrdinalCNF();
  OrdinalCNF acc;
  const auto& lead = s.terms().front();
  // left distribution over t's terms is valid for standard ordinal product
  for (const auto& y : t.terms()) {
    if (!y.exponent().is_zero()) {
      acc = ord_add(acc, OrdinalCNF::power_term(ord_add(lead.exponent(), y.exponent()), y.coeff));
    } else {
      // s * k: the leading coefficient scales, the tail survives once
      std::vector<OrdinalCNF::Term> piece = s.terms();
      piece[0].coeff = lead.coeff * y.coeff;
      acc = ord_add(acc, make_cnf(std::move(piece)));
    }
  }
  return acc;
}

namespace {

OrdinalCNF pow_by_nat(const OrdinalCNF& s, BigInt k) {
  if (k > 1'000'000)
    throw ResultAboveEpsilon0("finite power " + to_string(k) + " exceeds the representation budget");
  OrdinalCNF r = OrdinalCNF::from_nat(1);
  OrdinalCNF b = s;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = ord_mul(r, b);
    k >>= 1;
    if (k > 0) b = ord_mul(b, b);
  }
  return r;
}

}  // namespace

OrdinalCNF ord_pow(const OrdinalCNF& s, const OrdinalCNF& t) {
  if (t.is_zero()) return OrdinalCNF::from_nat(1);
  if (s.is_zero()) return OrdinalCNF();
  if (s.is_nat() && s.nat_value() == 1) return OrdinalCNF::from_nat(1);

  // split the exponent into its limit part and finite tail
  std::vector<OrdinalCNF::Term> limit_terms;
  BigInt finite_tail = 0;
  for (const auto& y : t.terms()) {
    if (y.exponent().is_zero()) finite_tail = y.coeff;
    else limit_terms.push_back(y);
  }

  OrdinalCNF limit_power = OrdinalCNF::from_nat(1);
  if (!limit_terms.empty()) {
    if (s.is_nat()) {
      // n^(w^f c) = w^(w^(f-1) c) for finite f >= 1, and w^(w^f c) otherwise
      std::vector<OrdinalCNF::Term> shifted;
      for (const auto& y : limit_terms) {
        OrdinalCNF f = y.exponent();
        if (f.is_nat()) f = OrdinalCNF::from_nat(f.nat_value() - 1);
        shifted.push_back({box(std::move(f)), y.coeff});
      }
      limit_power = OrdinalCNF::power_term(make_cnf(std::move(shifted)), 1);
    } else {
      // s^(limit) = w^(e1 * limit) with e1 the leading exponent of s
      OrdinalCNF limit = make_cnf(std::move(limit_terms));
      limit_power = OrdinalCNF::power_term(ord_mul(s.terms().front().exponent(), limit), 1);
    }
  }
  return ord_mul(limit_power, pow_by_nat(s, finite_tail));
}

// ---------------------------------------------------------------------------
// Irreducible ordinals and base-theta forms.

OrdinalCNF theta(unsigned j) {
  // w^(w^j)
  OrdinalCNF wj = j == 0 ? OrdinalCNF::from_nat(1)
                         : OrdinalCNF::power_term(OrdinalCNF::from_nat(j), 1);
  return OrdinalCNF::power_term(std::move(wj), 1);
}

bool is_irreducible(const OrdinalCNF& t) {
  if (t.is_zero()) throw Unsupported("irreducibility is defined for ordinals > 0");
  if (t.is_nat()) return t.nat_value() == 1;
  if (t.terms().size() != 1 || t.terms()[0].coeff != 1) return false;
  const OrdinalCNF& e = t.terms()[0].exponent();
  // w^e is closed under x*y + z below it iff e is additively indecomposable,
  // i.e. e = w^delta
  return e.terms().size() == 1 && e.terms()[0].coeff == 1;
}

ThetaForm to_theta_base(const OrdinalCNF& tau, unsigned j) {
  ThetaForm f;
  f.j = j;
  OrdinalCNF wj = OrdinalCNF::from_nat(j);
  std::vector<std::pair<unsigned, std::vector<OrdinalCNF::Term>>> groups;
  for (const auto& term : tau.terms()) {
    // exponent e < w^(j+1) splits as w^j * k + r with finite k and r < w^j
    unsigned long k = 0;
    std::vector<OrdinalCNF::Term> rest;
    for (const auto& g : term.exponent().terms()) {
      Comparison c = compare_ord(g.exponent(), wj);
      if (c == Comparison::Greater)
        throw ArgumentNotBelowThetaJPlus1(format_ordinal(tau) + " is not below theta(" +
                                          std::to_string(j + 1) + ")");
      if (c == Comparison::Equal) {
        if (!mpz_fits_ulong_p(g.coeff.get_mpz_t()))
          throw ArgumentNotBelowThetaJPlus1("theta power does not fit the digit form");
        k = g.coeff.get_ui();
      } else {
        rest.push_back(g);
      }
    }
    OrdinalCNF digit_part = OrdinalCNF::power_term(make_cnf(std::move(rest)), term.coeff);
    if (!groups.empty() && groups.back().first == static_cast<unsigned>(k)) {
      groups.back().second.push_back(digit_part.terms()[0]);
    } else {
      groups.emplace_back(static_cast<unsigned>(k),
                          std::vector<OrdinalCNF::Term>{digit_part.terms()[0]});
    }
  }
  for (auto& [k, terms] : groups) f.digits.push_back({k, make_cnf(std::move(terms))});
  return f;
}

OrdinalCNF from_theta_base(const ThetaForm& f) {
  OrdinalCNF acc;
  OrdinalCNF th = theta(f.j);
  for (const auto& d : f.digits) {
    OrdinalCNF place = pow_by_nat(th, BigInt(static_cast<unsigned long>(d.power)));
    acc = nat_add(acc, nat_mul(place, d.digit));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Embedding into the value field: w = a + 1.

EuclideanValue embed(const OrdinalCNF& tau) {
  EuclideanValue w_sub = EuclideanValue::alpha() + EuclideanValue::constant(Rational(1));
  EuclideanValue acc;
  for (const auto& t : tau.terms()) {
    if (!t.exponent().is_nat())
      throw ExponentNotFinite("embedding requires every normal-form exponent finite (below w^w)");
    acc = acc + pow_value(w_sub, EuclideanValue::constant(Rational(t.exponent().nat_value()))) *
                    EuclideanValue::constant(Rational(t.coeff));
  }
  return acc;
}

OrdinalCNF sup_ord(const std::vector<OrdinalCNF>& xs) {
  OrdinalCNF best;  // sup of nothing is 0
  for (const auto& x : xs)
    if (compare_ord(x, best) == Comparison::Greater) best = x;
  return best;
}

OrdinalCNF min_ord(const std::vector<OrdinalCNF>& xs) {
  if (xs.empty()) throw Unsupported("min of an empty family");
  OrdinalCNF best = xs[0];
  for (const auto& x : xs)
    if (compare_ord(x, best) == Comparison::Less) best = x;
  return best;
}

// ---------------------------------------------------------------------------
// Expression evaluation and formatting.

OrdinalCNF eval_ord_expr(const OrdExpr& e, unsigned max_theta_index) {
  switch (e.kind) {
    case OrdKind::Omega: return OrdinalCNF::omega();
    case OrdKind::Nat: return OrdinalCNF::from_nat(e.nat);
    case OrdKind::Theta: {
      if (e.nat > max_theta_index)
        throw Unsupported("theta index above the configured bound " +
                          std::to_string(max_theta_index));
      return theta(static_cast<unsigned>(e.nat.get_ui()));
    }
    case OrdKind::OrdAdd: return ord_add(eval_ord_expr(*e.left, max_theta_index),
                                         eval_ord_expr(*e.right, max_theta_index));
    case OrdKind::OrdMul: return ord_mul(eval_ord_expr(*e.left, max_theta_index),
                                         eval_ord_expr(*e.right, max_theta_index));
    case OrdKind::OrdPow: return ord_pow(eval_ord_expr(*e.left, max_theta_index),
                                         eval_ord_expr(*e.right, max_theta_index));
    case OrdKind::NatAdd: return nat_add(eval_ord_expr(*e.left, max_theta_index),
                                         eval_ord_expr(*e.right, max_theta_index));
    case OrdKind::NatMul: return nat_mul(eval_ord_expr(*e.left, max_theta_index),
                                         eval_ord_expr(*e.right, max_theta_index));
  }
  throw Unsupported("unhandled ordinal constructor");
}

namespace {

void format_cnf(const OrdinalCNF& t, std::ostringstream& os, bool compact) {
  if (t.is_zero()) {
    os << '0';
    return;
  }
  const char* sep = compact ? "+" : " + ";
  bool first = true;
  for (const auto& term : t.terms()) {
    if (!first) os << sep;
    first = false;
    if (term.exponent().is_zero()) {
      os << term.coeff;
      continue;
    }
    os << 'w';
    if (!(term.exponent().is_nat() && term.exponent().nat_value() == 1)) {
      os << '^';
      if (term.exponent().is_nat()) {
        os << term.exponent().nat_value();
      } else {
        os << '(';
        format_cnf(term.exponent(), os, true);
        os << ')';
      }
    }
    if (term.coeff != 1) os << '*' << term.coeff;
  }
}

}  // namespace

std::string format_ordinal(const OrdinalCNF& t) {
  std::ostringstream os;
  format_cnf(t, os, false);
  return os.str();
}

std::string format_theta(const ThetaForm& f) {
  std::ostringstream os;
  if (f.digits.empty()) return "0";
  bool first = true;
  for (const auto& d : f.digits) {
    if (!first) os << " + ";
    first = false;
    os << 'T' << f.j << '^' << d.power << "*(";
    format_cnf(d.digit, os, true);
    os << ')';
  }
  return os.str();
}

}  // namespace numerositas
