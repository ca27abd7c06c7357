#include "numerositas/euclid.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "numerositas/errors.hpp"
#include "numerositas/label_net.hpp"

namespace numerositas {

// ---------------------------------------------------------------------------
// Puiseux layer.

void Puiseux::normalize() {
  std::sort(mono_.begin(), mono_.end(), [](const Monomial& x, const Monomial& y) {
    if (x.b_exp != y.b_exp) return x.b_exp > y.b_exp;
    return x.a_exp > y.a_exp;
  });
  std::vector<Monomial> out;
  for (auto& m : mono_) {
    m.coeff.canonicalize();
    m.a_exp.canonicalize();
    if (!out.empty() && out.back().b_exp == m.b_exp && out.back().a_exp == m.a_exp) {
      out.back().coeff += m.coeff;
      out.back().coeff.canonicalize();
    } else {
      out.push_back(m);
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const Monomial& m) { return m.coeff == 0; }),
            out.end());
  mono_ = std::move(out);
}

Puiseux Puiseux::constant(const Rational& c) {
  Puiseux p;
  if (c != 0) p.mono_.push_back({c, Rational(0), 0});
  return p;
}

Puiseux Puiseux::alpha() { return monomial(Rational(1), Rational(1), 0); }
Puiseux Puiseux::beta() { return monomial(Rational(1), Rational(0), 1); }

Puiseux Puiseux::monomial(const Rational& coeff, const Rational& a_exp, int b_exp) {
  Puiseux p;
  if (coeff != 0) {
    Monomial m{coeff, a_exp, b_exp};
    m.coeff.canonicalize();
    m.a_exp.canonicalize();
    p.mono_.push_back(m);
  }
  return p;
}

bool Puiseux::is_constant() const {
  return mono_.empty() || (mono_.size() == 1 && mono_[0].a_exp == 0 && mono_[0].b_exp == 0);
}

bool Puiseux::is_pure_alpha() const {
  return std::all_of(mono_.begin(), mono_.end(), [](const Monomial& m) { return m.b_exp == 0; });
}

bool Puiseux::is_pure_beta() const {
  return std::all_of(mono_.begin(), mono_.end(), [](const Monomial& m) { return m.a_exp == 0; });
}

Rational Puiseux::constant_term() const {
  for (const auto& m : mono_)
    if (m.a_exp == 0 && m.b_exp == 0) return m.coeff;
  return Rational(0);
}

Puiseux Puiseux::operator-() const {
  Puiseux p = *this;
  for (auto& m : p.mono_) m.coeff = -m.coeff;
  return p;
}

Puiseux Puiseux::operator+(const Puiseux& o) const {
  Puiseux p = *this;
  p.mono_.insert(p.mono_.end(), o.mono_.begin(), o.mono_.end());
  p.normalize();
  return p;
}

Puiseux Puiseux::operator-(const Puiseux& o) const { return *this + (-o); }

Puiseux Puiseux::operator*(const Puiseux& o) const {
  Puiseux p;
  p.mono_.reserve(mono_.size() * o.mono_.size());
  for (const auto& x : mono_)
    for (const auto& y : o.mono_)
      p.mono_.push_back({x.coeff * y.coeff, x.a_exp + y.a_exp, x.b_exp + y.b_exp});
  p.normalize();
  return p;
}

Puiseux Puiseux::pow(unsigned long k) const {
  Puiseux r = constant(Rational(1));
  Puiseux b = *this;
  while (k) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

bool Puiseux::operator==(const Puiseux& o) const {
  if (mono_.size() != o.mono_.size()) return false;
  for (std::size_t i = 0; i < mono_.size(); ++i)
    if (mono_[i].coeff != o.mono_[i].coeff || mono_[i].a_exp != o.mono_[i].a_exp ||
        mono_[i].b_exp != o.mono_[i].b_exp)
      return false;
  return true;
}

int Puiseux::structural_compare(const Puiseux& x, const Puiseux& y) {
  std::size_t n = std::min(x.mono_.size(), y.mono_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = x.mono_[i];
    const auto& b = y.mono_[i];
    if (a.b_exp != b.b_exp) return a.b_exp < b.b_exp ? -1 : 1;
    if (a.a_exp != b.a_exp) return a.a_exp < b.a_exp ? -1 : 1;
    if (a.coeff != b.coeff) return a.coeff < b.coeff ? -1 : 1;
  }
  if (x.mono_.size() != y.mono_.size()) return x.mono_.size() < y.mono_.size() ? -1 : 1;
  return 0;
}

namespace {

// Sign of a pure-a polynomial along the net: the leading monomial wins.
Comparison pure_alpha_sign(const Puiseux& p) {
  if (p.is_zero()) return Comparison::Equal;
  // canonical order puts the highest a_exp first when b-free
  const Monomial& lead = p.monomials().front();
  return lead.coeff > 0 ? Comparison::Greater : Comparison::Less;
}

// b exceeds (2a^2+1)^2, the square of the full rational grid count.
const Puiseux& beta_lower_bound() {
  static const Puiseux L = [] {
    Puiseux g = Puiseux::monomial(Rational(2), Rational(2), 0) + Puiseux::constant(Rational(1));
    return g * g;
  }();
  return L;
}

// Eventual sign of a Puiseux value. Pure-a values are decided by the leading
// monomial; mixed values only through the one adopted cross-unit inequality.
Comparison puiseux_sign(const Puiseux& p) {
  if (p.is_zero()) return Comparison::Equal;
  if (p.is_pure_alpha()) return pure_alpha_sign(p);

  // group by b power; dividing by b^min preserves the sign
  std::map<int, Puiseux, std::greater<int>> groups;
  for (const auto& m : p.monomials()) {
    groups[m.b_exp] = groups[m.b_exp] + Puiseux::monomial(m.coeff, m.a_exp, 0);
  }
  int shift = groups.rbegin()->first;
  std::map<int, Puiseux, std::greater<int>> g;
  for (auto& [k, pk] : groups)
    if (!pk.is_zero()) g[k - shift] = pk;
  if (g.size() == 1) return pure_alpha_sign(g.begin()->second);

  bool upper_ok = true, lower_ok = true, all_greater = true, all_less = true;
  for (auto& [k, pk] : g) {
    Comparison s = pure_alpha_sign(pk);
    if (s != Comparison::Greater) all_greater = false;
    if (s != Comparison::Less) all_less = false;
    if (k >= 1 && s != Comparison::Greater) lower_ok = false;
    if (k >= 1 && s != Comparison::Less) upper_ok = false;
  }
  if (all_greater) return Comparison::Greater;
  if (all_less) return Comparison::Less;

  // substitute the bound: for positive b-coefficients the result is a strict
  // lower bound (b^k > L^k), for negative ones a strict upper bound
  if (lower_ok || upper_ok) {
    Puiseux bound;
    for (auto& [k, pk] : g)
      bound = bound + pk * beta_lower_bound().pow(static_cast<unsigned long>(k));
    Comparison s = pure_alpha_sign(bound);
    if (lower_ok && (s == Comparison::Greater || s == Comparison::Equal))
      return Comparison::Greater;
    if (upper_ok && (s == Comparison::Less || s == Comparison::Equal)) return Comparison::Less;
  }
  return Comparison::Unknown;
}

// Provable strict monomial dominance: m is negligible next to M.
bool monomial_dominated(const Monomial& m, const Monomial& M) {
  if (M.b_exp < m.b_exp) return false;
  // a_m - a_M < 4 (b_M - b_m); the same-b case degenerates to a_M > a_m
  return m.a_exp - M.a_exp < Rational(4 * (M.b_exp - m.b_exp));
}

// The monomial provably dominating all others, if any. Only the (b, a)
// lexicographic maximum can qualify, and canonical order puts it first.
const Monomial* leading_monomial(const Puiseux& p) {
  if (p.is_zero()) return nullptr;
  const Monomial& cand = p.monomials().front();
  for (std::size_t i = 1; i < p.monomials().size(); ++i)
    if (!monomial_dominated(p.monomials()[i], cand)) return nullptr;
  return &cand;
}

}  // namespace

// ---------------------------------------------------------------------------
// EuclideanValue canonicalization and ring operations.

namespace {

int factor_compare(const ExpFactor& x, const ExpFactor& y) {
  int c = Puiseux::structural_compare(x.base, y.base);
  if (c != 0) return c;
  return Puiseux::structural_compare(x.exponent, y.exponent);
}

int factors_compare(const std::vector<ExpFactor>& x, const std::vector<ExpFactor>& y) {
  std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = factor_compare(x[i], y[i]);
    if (c != 0) return c;
  }
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  return 0;
}

bool factors_equal(const std::vector<ExpFactor>& x, const std::vector<ExpFactor>& y) {
  return factors_compare(x, y) == 0;
}

}  // namespace

void EuclideanValue::normalize() {
  std::vector<ExpTerm> cooked;
  for (auto& t : terms_) {
    if (t.coeff.is_zero()) continue;
    // merge factors with the same base; fold trivial factors
    std::sort(t.factors.begin(), t.factors.end(),
              [](const ExpFactor& x, const ExpFactor& y) { return factor_compare(x, y) < 0; });
    std::vector<ExpFactor> fs;
    for (auto& f : t.factors) {
      if (!fs.empty() && fs.back().base == f.base) {
        fs.back().exponent = fs.back().exponent + f.exponent;
      } else {
        fs.push_back(f);
      }
    }
    Puiseux coeff = t.coeff;
    std::vector<ExpFactor> kept;
    for (auto& f : fs) {
      if (f.exponent.is_zero()) continue;  // base^0
      if (f.exponent.is_constant()) {
        Rational k = f.exponent.constant_term();
        if (!is_integer(k) || k < 0)
          throw Unsupported("exponent collapsed to a non-natural constant");
        coeff = coeff * f.base.pow(k.get_num().get_ui());
        continue;
      }
      if (f.base.is_constant() && f.base.constant_term() == 1) continue;  // 1^x
      kept.push_back(std::move(f));
    }
    if (coeff.is_zero()) continue;
    if (kept.empty()) {
      poly_ = poly_ + coeff;
      continue;
    }
    cooked.push_back({std::move(coeff), std::move(kept)});
  }

  // single-factor terms over the same base whose exponents differ by a
  // natural constant fold together: c1*b^(e+k) + c2*b^e = (c1*b^k + c2)*b^e
  for (std::size_t i = 0; i < cooked.size(); ++i) {
    if (cooked[i].coeff.is_zero() || cooked[i].factors.size() != 1) continue;
    for (std::size_t j = i + 1; j < cooked.size(); ++j) {
      if (cooked[j].coeff.is_zero() || cooked[j].factors.size() != 1) continue;
      if (!(cooked[i].factors[0].base == cooked[j].factors[0].base)) continue;
      Puiseux gap = cooked[i].factors[0].exponent - cooked[j].factors[0].exponent;
      if (!gap.is_constant()) continue;
      Rational k = gap.constant_term();
      if (!is_integer(k)) continue;
      bool i_high = k >= 0;
      std::size_t hi = i_high ? i : j, lo = i_high ? j : i;
      BigInt kk = i_high ? k.get_num() : BigInt(-k.get_num());
      if (kk > 64) continue;  // avoid blowing up the folded coefficient
      cooked[lo].coeff =
          cooked[lo].coeff + cooked[hi].coeff * cooked[hi].factors[0].base.pow(kk.get_ui());
      cooked[hi].coeff = Puiseux();
    }
  }

  std::sort(cooked.begin(), cooked.end(), [](const ExpTerm& x, const ExpTerm& y) {
    int c = factors_compare(x.factors, y.factors);
    if (c != 0) return c < 0;
    return Puiseux::structural_compare(x.coeff, y.coeff) < 0;
  });
  std::vector<ExpTerm> merged;
  for (auto& t : cooked) {
    if (t.coeff.is_zero()) continue;
    if (!merged.empty() && factors_equal(merged.back().factors, t.factors)) {
      merged.back().coeff = merged.back().coeff + t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const ExpTerm& t) { return t.coeff.is_zero(); }),
               merged.end());
  terms_ = std::move(merged);
}

EuclideanValue EuclideanValue::exp_sum(std::vector<ExpTerm> terms, Puiseux poly) {
  EuclideanValue v;
  v.terms_ = std::move(terms);
  v.poly_ = std::move(poly);
  v.normalize();
  return v;
}

bool EuclideanValue::is_pure_alpha() const {
  return terms_.empty() && poly_.is_pure_alpha();
}

bool EuclideanValue::is_beta_free() const {
  if (!poly_.is_pure_alpha()) return false;
  for (const auto& t : terms_) {
    if (!t.coeff.is_pure_alpha()) return false;
    for (const auto& f : t.factors)
      if (!f.base.is_pure_alpha() || !f.exponent.is_pure_alpha()) return false;
  }
  return true;
}

EuclideanValue EuclideanValue::operator-() const {
  EuclideanValue v = *this;
  v.poly_ = -v.poly_;
  for (auto& t : v.terms_) t.coeff = -t.coeff;
  return v;
}

EuclideanValue EuclideanValue::operator+(const EuclideanValue& o) const {
  EuclideanValue v;
  v.poly_ = poly_ + o.poly_;
  v.terms_ = terms_;
  v.terms_.insert(v.terms_.end(), o.terms_.begin(), o.terms_.end());
  v.normalize();
  return v;
}

EuclideanValue EuclideanValue::operator-(const EuclideanValue& o) const { return *this + (-o); }

EuclideanValue EuclideanValue::operator*(const EuclideanValue& o) const {
  EuclideanValue v;
  v.poly_ = poly_ * o.poly_;
  for (const auto& t : o.terms_)
    if (!poly_.is_zero()) v.terms_.push_back({poly_ * t.coeff, t.factors});
  for (const auto& t : terms_)
    if (!o.poly_.is_zero()) v.terms_.push_back({t.coeff * o.poly_, t.factors});
  for (const auto& s : terms_)
    for (const auto& t : o.terms_) {
      ExpTerm prod{s.coeff * t.coeff, s.factors};
      prod.factors.insert(prod.factors.end(), t.factors.begin(), t.factors.end());
      v.terms_.push_back(std::move(prod));
    }
  v.normalize();
  return v;
}

bool EuclideanValue::operator==(const EuclideanValue& o) const {
  if (!(poly_ == o.poly_) || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].coeff == o.terms_[i].coeff)) return false;
    if (!factors_equal(terms_[i].factors, o.terms_[i].factors)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Comparison.

namespace {

// |x| infinite along the net? For a factor base this is "leading exponent
// positive".
bool puiseux_infinite_magnitude(const Puiseux& p) {
  if (p.is_zero() || p.is_constant()) return false;
  const Monomial& lead = p.monomials().front();
  return lead.a_exp > 0 || lead.b_exp > 0;
}

// Does |s| strictly dominate |t| (ratio provably infinite)?
// Decidable for single-factor terms sharing a base or sharing an exponent.
Comparison term_dominance(const ExpTerm& s, const ExpTerm& t) {
  if (s.factors.size() != 1 || t.factors.size() != 1) return Comparison::Unknown;
  const ExpFactor& fs = s.factors[0];
  const ExpFactor& ft = t.factors[0];
  if (fs.base == ft.base) {
    Puiseux gap = fs.exponent - ft.exponent;
    Comparison c = puiseux_sign(gap);
    if (c == Comparison::Equal) return Comparison::Unknown;  // merged already
    if (c == Comparison::Unknown) return Comparison::Unknown;
    if (gap.is_constant()) return Comparison::Unknown;  // bounded ratio
    // base^gap is infinite; it outruns any polynomial coefficient ratio
    return c;
  }
  if (fs.exponent == ft.exponent) {
    // ratio (base_s/base_t)^e: infinite when the bases' ratio is itself
    // infinite, or both bases are constants
    const Puiseux& bs = fs.base;
    const Puiseux& bt = ft.base;
    if (bs.is_constant() && bt.is_constant()) {
      Rational rs = bs.constant_term(), rt = bt.constant_term();
      if (rs == rt) return Comparison::Unknown;
      return rs > rt ? Comparison::Greater : Comparison::Less;
    }
    const Monomial* ls = leading_monomial(bs);
    const Monomial* lt = leading_monomial(bt);
    if (ls && lt) {
      if (monomial_dominated(*lt, *ls)) return Comparison::Greater;
      if (monomial_dominated(*ls, *lt)) return Comparison::Less;
    }
    return Comparison::Unknown;
  }
  return Comparison::Unknown;
}

}  // namespace

Comparison compare(const EuclideanValue& v, const EuclideanValue& w) {
  EuclideanValue d = v - w;
  if (d.is_zero()) return Comparison::Equal;
  if (d.is_puiseux()) {
    Comparison s = puiseux_sign(d.puiseux_part());
    return s == Comparison::Equal ? Comparison::Unknown : s;  // defensive; zero handled above
  }

  const auto& ts = d.exp_terms();
  std::vector<Comparison> signs;
  signs.reserve(ts.size());
  bool all_greater = true, all_less = true;
  for (const auto& t : ts) {
    Comparison s = puiseux_sign(t.coeff);
    if (s == Comparison::Unknown) return Comparison::Unknown;
    signs.push_back(s);
    if (s != Comparison::Greater) all_greater = false;
    if (s != Comparison::Less) all_less = false;
  }
  // every exp-term dominates the puiseux remainder
  if (all_greater) return Comparison::Greater;
  if (all_less) return Comparison::Less;

  // mixed signs: a term strictly dominating all the others decides
  for (std::size_t i = 0; i < ts.size(); ++i) {
    bool dominant = true;
    for (std::size_t j = 0; j < ts.size() && dominant; ++j)
      if (j != i && term_dominance(ts[i], ts[j]) != Comparison::Greater) dominant = false;
    if (dominant) return signs[i];
  }

  // two terms with identical exponents: c1*b1^e - c2*b2^e with b1 > b2 and
  // c1 >= c2 > 0 is eventually positive (and dominates any puiseux part)
  if (ts.size() == 2 && ts[0].factors.size() == 1 && ts[1].factors.size() == 1 &&
      ts[0].factors[0].exponent == ts[1].factors[0].exponent) {
    for (int pick = 0; pick < 2; ++pick) {
      const ExpTerm& hi = ts[pick];
      const ExpTerm& lo = ts[1 - pick];
      Comparison base_cmp = puiseux_sign(hi.factors[0].base - lo.factors[0].base);
      if (base_cmp != Comparison::Greater) continue;
      Comparison hi_sign = signs[static_cast<std::size_t>(pick)];
      Comparison coeff_sum = puiseux_sign(hi.coeff + lo.coeff);
      if (hi_sign == Comparison::Greater &&
          (coeff_sum == Comparison::Greater || coeff_sum == Comparison::Equal))
        return Comparison::Greater;
      if (hi_sign == Comparison::Less &&
          (coeff_sum == Comparison::Less || coeff_sum == Comparison::Equal))
        return Comparison::Less;
    }
  }
  return Comparison::Unknown;
}

// ---------------------------------------------------------------------------
// Division.

namespace {

// Exact division of puiseux polynomials; nullopt when not exactly divisible
// within nonnegative exponents.
std::optional<Puiseux> puiseux_exact_div(const Puiseux& v, const Puiseux& w) {
  if (w.is_zero()) throw DivisionByZero();
  if (v.is_zero()) return Puiseux();
  const Monomial& lw = w.monomials().front();
  Puiseux rem = v;
  Puiseux quot;
  // leading-term division in the canonical (b, a) order; exponents live on a
  // discrete lattice, so this terminates
  while (!rem.is_zero()) {
    const Monomial& lr = rem.monomials().front();
    Rational a = lr.a_exp - lw.a_exp;
    int b = lr.b_exp - lw.b_exp;
    if (a < 0 || b < 0) return std::nullopt;
    Puiseux q = Puiseux::monomial(lr.coeff / lw.coeff, a, b);
    quot = quot + q;
    rem = rem - q * w;
  }
  return quot;
}

}  // namespace

std::variant<EuclideanValue, Quotient> divide(const EuclideanValue& v, const EuclideanValue& w) {
  if (w.is_zero()) throw DivisionByZero();
  if (v.is_zero()) return EuclideanValue();

  if (w.is_puiseux()) {
    // divide the polynomial part and every term coefficient
    auto qp = puiseux_exact_div(v.puiseux_part(), w.puiseux_part());
    if (qp) {
      std::vector<ExpTerm> ts;
      bool ok = true;
      for (const auto& t : v.exp_terms()) {
        auto qc = puiseux_exact_div(t.coeff, w.puiseux_part());
        if (!qc) {
          ok = false;
          break;
        }
        ts.push_back({*qc, t.factors});
      }
      if (ok) return EuclideanValue::exp_sum(std::move(ts), *qp);
    }
  } else if (w.exp_terms().size() == 1 && w.puiseux_part().is_zero()) {
    // divide term by term: factor exponents subtract
    const ExpTerm& dw = w.exp_terms()[0];
    if (v.puiseux_part().is_zero()) {
      std::vector<ExpTerm> ts;
      bool ok = true;
      for (const auto& t : v.exp_terms()) {
        auto qc = puiseux_exact_div(t.coeff, dw.coeff);
        if (!qc) {
          ok = false;
          break;
        }
        ExpTerm nt{*qc, {}};
        std::vector<bool> used(t.factors.size(), false);
        for (const auto& fw : dw.factors) {
          bool matched = false;
          for (std::size_t i = 0; i < t.factors.size(); ++i) {
            if (used[i] || !(t.factors[i].base == fw.base)) continue;
            Puiseux rest = t.factors[i].exponent - fw.exponent;
            Comparison s = puiseux_sign(rest);
            bool valid_gap = rest.is_zero() ||
                             (s == Comparison::Greater &&
                              (!rest.is_constant() || is_integer(rest.constant_term())));
            if (!valid_gap) continue;
            used[i] = true;
            if (!rest.is_zero()) nt.factors.push_back({t.factors[i].base, rest});
            matched = true;
            break;
          }
          if (!matched) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
        for (std::size_t i = 0; i < t.factors.size(); ++i)
          if (!used[i]) nt.factors.push_back(t.factors[i]);
        ts.push_back(std::move(nt));
      }
      if (ok) return EuclideanValue::exp_sum(std::move(ts), Puiseux());
    }
  }

  // not exactly divisible: reduce the quotient by the common monomial content
  EuclideanValue num = v, den = w;
  if (num.is_puiseux() && den.is_puiseux()) {
    Rational min_a = num.puiseux_part().monomials().front().a_exp;
    int min_b = num.puiseux_part().monomials().front().b_exp;
    for (const auto& m : num.puiseux_part().monomials()) {
      min_a = std::min(min_a, m.a_exp);
      min_b = std::min(min_b, m.b_exp);
    }
    for (const auto& m : den.puiseux_part().monomials()) {
      min_a = std::min(min_a, m.a_exp);
      min_b = std::min(min_b, m.b_exp);
    }
    if (min_a > 0 || min_b > 0) {
      Puiseux g = Puiseux::monomial(Rational(1), min_a, min_b);
      num = EuclideanValue(*puiseux_exact_div(num.puiseux_part(), g));
      den = EuclideanValue(*puiseux_exact_div(den.puiseux_part(), g));
    }
  }
  return Quotient{std::move(num), std::move(den)};
}

// ---------------------------------------------------------------------------
// Standard part and classification.

StandardPart standard_part(const EuclideanValue& v) {
  if (v.is_constant()) return StandardPart::finite(v.puiseux_part().constant_term());

  if (!v.exp_terms().empty()) {
    bool all_greater = true, all_less = true;
    for (const auto& t : v.exp_terms()) {
      Comparison s = puiseux_sign(t.coeff);
      if (s == Comparison::Unknown) return StandardPart::unknown();
      if (s != Comparison::Greater) all_greater = false;
      if (s != Comparison::Less) all_less = false;
    }
    if (all_greater) return StandardPart::plus_inf();
    if (all_less) return StandardPart::minus_inf();
    Comparison c = compare(v, EuclideanValue());
    // a decided sign with exp-terms present means the dominant term is an
    // exp-term, so the magnitude is infinite
    if (c == Comparison::Greater) return StandardPart::plus_inf();
    if (c == Comparison::Less) return StandardPart::minus_inf();
    return StandardPart::unknown();
  }

  const Puiseux& p = v.puiseux_part();
  Rational c = p.constant_term();
  Puiseux n = p - Puiseux::constant(c);
  if (n.is_zero()) return StandardPart::finite(c);
  if (n.is_pure_alpha())
    return pure_alpha_sign(n) == Comparison::Greater ? StandardPart::plus_inf()
                                                     : StandardPart::minus_inf();

  // mixed units: certify unboundedness, not just a sign
  std::map<int, Puiseux, std::greater<int>> groups;
  for (const auto& m : n.monomials())
    groups[m.b_exp] = groups[m.b_exp] + Puiseux::monomial(m.coeff, m.a_exp, 0);
  bool all_greater = true, all_less = true, lower_ok = true, upper_ok = true;
  for (auto& [k, pk] : groups) {
    Comparison s = pure_alpha_sign(pk);
    if (s != Comparison::Greater) all_greater = false;
    if (s != Comparison::Less) all_less = false;
    if (k >= 1 && s != Comparison::Greater) lower_ok = false;
    if (k >= 1 && s != Comparison::Less) upper_ok = false;
  }
  // every group positive: the top b-power alone outruns every natural
  if (all_greater) return StandardPart::plus_inf();
  if (all_less) return StandardPart::minus_inf();
  Puiseux bound;
  for (auto& [k, pk] : groups)
    bound = bound + pk * beta_lower_bound().pow(static_cast<unsigned long>(k));
  bound = bound + Puiseux::constant(c);
  if (lower_ok && !bound.is_constant() && pure_alpha_sign(bound) == Comparison::Greater)
    return StandardPart::plus_inf();
  if (upper_ok && !bound.is_constant() && pure_alpha_sign(bound) == Comparison::Less)
    return StandardPart::minus_inf();
  return StandardPart::unknown();
}

StandardPart standard_part(const Quotient& q) {
  if (q.den.is_zero()) throw DivisionByZero();
  if (q.num.is_zero()) return StandardPart::finite(Rational(0));
  if (!q.num.exp_terms().empty() || !q.den.exp_terms().empty()) return StandardPart::unknown();

  const Monomial* lp = leading_monomial(q.num.puiseux_part());
  const Monomial* lq = leading_monomial(q.den.puiseux_part());
  if (!lp || !lq) return StandardPart::unknown();
  if (lp->a_exp == lq->a_exp && lp->b_exp == lq->b_exp)
    return StandardPart::finite(lp->coeff / lq->coeff);
  if (monomial_dominated(*lp, *lq)) return StandardPart::finite(Rational(0));
  if (monomial_dominated(*lq, *lp))
    return (lp->coeff > 0) == (lq->coeff > 0) ? StandardPart::plus_inf()
                                              : StandardPart::minus_inf();
  return StandardPart::unknown();
}

Magnitude classify(const EuclideanValue& v) {
  StandardPart s = standard_part(v);
  switch (s.kind) {
    case StandardPart::Finite: return Magnitude::Finite;  // plain values have no infinitesimal part
    case StandardPart::PlusInfinity:
    case StandardPart::MinusInfinity: return Magnitude::Infinite;
    default: return Magnitude::Unknown;
  }
}

Magnitude classify(const Quotient& q) {
  if (q.num.is_zero()) return Magnitude::Finite;
  StandardPart s = standard_part(q);
  switch (s.kind) {
    case StandardPart::Finite:
      return s.value == 0 ? Magnitude::Infinitesimal : Magnitude::Finite;
    case StandardPart::PlusInfinity:
    case StandardPart::MinusInfinity: return Magnitude::Infinite;
    default: return Magnitude::Unknown;
  }
}

// ---------------------------------------------------------------------------
// Powers.

EuclideanValue pow_value(const EuclideanValue& base, const EuclideanValue& exponent) {
  if (exponent.is_constant()) {
    Rational k = exponent.puiseux_part().constant_term();
    if (!is_integer(k) || k < 0) throw Unsupported("constant exponent must be a natural number");
    EuclideanValue r = EuclideanValue::constant(Rational(1));
    EuclideanValue b = base;
    BigInt e = k.get_num();
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = r * b;
      e >>= 1;
      if (e > 0) b = b * b;
    }
    return r;
  }

  if (!exponent.is_puiseux())
    throw Unsupported("nested exponential towers are outside the value representation");
  if (!base.is_puiseux())
    throw Unsupported("exponential bases must stay polynomial");

  const Puiseux& e = exponent.puiseux_part();
  if (puiseux_sign(e) != Comparison::Greater)
    throw Unsupported("infinite exponents must be eventually positive");

  const Puiseux& b = base.puiseux_part();
  if (b.is_constant()) {
    Rational c = b.constant_term();
    if (c == 0) return EuclideanValue();
    if (c == 1) return EuclideanValue::constant(Rational(1));
    if (!is_integer(c) || c < 2)
      throw Unsupported("constant exponential base must be a natural number >= 2");
  } else {
    Comparison c2 = compare(EuclideanValue(b), EuclideanValue::constant(Rational(2)));
    if (c2 != Comparison::Greater && c2 != Comparison::Equal)
      throw Unsupported("exponential base must be eventually >= 2");
  }
  return EuclideanValue::exp_sum({{Puiseux::constant(Rational(1)), {{b, e}}}}, Puiseux());
}

// ---------------------------------------------------------------------------
// Evaluation.

namespace {

Rational eval_puiseux(const Puiseux& p, unsigned m, const BigInt& mf) {
  Rational total(0);
  for (const auto& mono : p.monomials()) {
    if (mono.b_exp != 0) throw BetaNotEvaluable();
    // n^(p/q) = (m!)^(m! p / q); exact iff q | m!
    const BigInt& pn = mono.a_exp.get_num();
    const BigInt& qn = mono.a_exp.get_den();
    if (!mpz_divisible_p(mf.get_mpz_t(), qn.get_mpz_t()))
      throw ExponentNotIntegralAtLevel("exponent denominator " + to_string(qn) +
                                       " does not divide " + std::to_string(m) + "!");
    BigInt e = (mf / qn) * pn;
    total += mono.coeff * Rational(pow_big(mf, e));
  }
  return total;
}

}  // namespace

Rational evaluate_at_level(const EuclideanValue& v, unsigned m, const EvalLimits& limits) {
  if (m < 1 || m > kMaxMaterializedLevel)
    throw ComplexityExceeded("level " + std::to_string(m) + " is not materializable");
  if (!v.is_beta_free()) throw BetaNotEvaluable();
  BigInt mf = factorial(m);
  Rational total = eval_puiseux(v.puiseux_part(), m, mf);
  for (const auto& t : v.exp_terms()) {
    Rational term = eval_puiseux(t.coeff, m, mf);
    for (const auto& f : t.factors) {
      Rational base = eval_puiseux(f.base, m, mf);
      Rational expo = eval_puiseux(f.exponent, m, mf);
      if (!is_integer(expo) || expo < 0)
        throw ExponentNotIntegralAtLevel("exponent evaluates to " + to_string(expo) +
                                         ", not a natural number, at level " + std::to_string(m));
      BigInt e = expo.get_num();
      std::size_t base_bits =
          std::max(mpz_sizeinbase(base.get_num().get_mpz_t(), 2),
                   mpz_sizeinbase(base.get_den().get_mpz_t(), 2));
      if (e * BigInt(static_cast<unsigned long>(base_bits)) >
          BigInt(static_cast<unsigned long>(limits.max_result_bits)))
        throw ComplexityExceeded("exponential value exceeds the size budget at level " +
                                 std::to_string(m));
      term *= Rational(pow_big(base.get_num(), e), pow_big(base.get_den(), e));
    }
    total += term;
  }
  total.canonicalize();
  return total;
}

// ---------------------------------------------------------------------------
// Formatting.

namespace {

bool needs_parens_as_coeff(const Puiseux& p) {
  if (p.monomials().size() != 1) return true;
  const Monomial& m = p.monomials()[0];
  if (m.a_exp != 0 || m.b_exp != 0) return true;
  return m.coeff < 0 || !is_integer(m.coeff);
}

std::string format_exponent(const Rational& e) {
  if (is_integer(e)) return to_string(e);
  return "(" + to_string(e) + ")";
}

std::string format_monomial(const Monomial& m, char a_sym, bool leading) {
  std::ostringstream os;
  Rational c = m.coeff;
  bool neg = c < 0;
  if (neg) c = -c;
  if (leading) {
    if (neg) os << '-';
  } else {
    os << (neg ? " - " : " + ");
  }
  std::vector<std::string> parts;
  if (c != 1 || (m.a_exp == 0 && m.b_exp == 0)) {
    if (is_integer(c)) parts.push_back(to_string(c));
    else parts.push_back("(" + to_string(c) + ")");
  }
  if (m.a_exp != 0) {
    std::string u(1, a_sym);
    if (m.a_exp != 1) u += "^" + format_exponent(m.a_exp);
    parts.push_back(u);
  }
  if (m.b_exp != 0) {
    std::string u = "b";
    if (m.b_exp != 1) u += "^" + std::to_string(m.b_exp);
    parts.push_back(u);
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) os << '*';
    os << parts[i];
  }
  return os.str();
}

std::string format_puiseux(const Puiseux& p, char a_sym, bool leading) {
  if (p.is_zero()) return leading ? "0" : "";
  std::ostringstream os;
  bool first = leading;
  for (const auto& m : p.monomials()) {
    os << format_monomial(m, a_sym, first);
    first = false;
  }
  return os.str();
}

std::string format_term(const ExpTerm& t, char a_sym, bool leading) {
  std::ostringstream os;
  Puiseux coeff = t.coeff;
  // pull the sign out of single-monomial coefficients
  bool neg = false;
  if (coeff.monomials().size() == 1 && coeff.monomials()[0].coeff < 0) {
    neg = true;
    coeff = -coeff;
  }
  if (leading) {
    if (neg) os << '-';
  } else {
    os << (neg ? " - " : " + ");
  }
  bool coeff_one = coeff.is_constant() && coeff.constant_term() == 1;
  if (!coeff_one) {
    if (needs_parens_as_coeff(coeff)) os << '(' << format_puiseux(coeff, a_sym, true) << ')';
    else os << format_puiseux(coeff, a_sym, true);
    os << '*';
  }
  for (std::size_t i = 0; i < t.factors.size(); ++i) {
    if (i) os << '*';
    const auto& f = t.factors[i];
    bool bare = f.base.is_constant() && is_integer(f.base.constant_term()) &&
                f.base.constant_term() > 0;
    if (bare) os << to_string(f.base.constant_term());
    else os << '(' << format_puiseux(f.base, a_sym, true) << ')';
    os << "^(" << format_puiseux(f.exponent, a_sym, true) << ')';
  }
  return os.str();
}

}  // namespace

std::string format_value(const EuclideanValue& v, char unit_symbol) {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : v.exp_terms()) {
    os << format_term(t, unit_symbol, first);
    first = false;
  }
  if (!v.puiseux_part().is_zero()) {
    os << format_puiseux(v.puiseux_part(), unit_symbol, first);
  }
  return os.str();
}

}  // namespace numerositas
