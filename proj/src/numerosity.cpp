#include "numerositas/numerosity.hpp"

#include <optional>
#include <sstream>

#include "numerositas/errors.hpp"
#include "numerositas/measure.hpp"

namespace numerositas {

namespace {

// Uniform view of the integer-progression atoms. N, N0 and Z are themselves
// progressions with step 1.
struct ProgView {
  bool from_below;  // {a + kd : k >= 0} versus {a + kd : k in Z}
  BigInt a, d;
};

std::optional<ProgView> as_prog(const SetExpr& e) {
  switch (e.kind) {
    case SetKind::Naturals: return ProgView{true, 1, 1};
    case SetKind::Naturals0: return ProgView{true, 0, 1};
    case SetKind::Integers: return ProgView{false, 0, 1};
    case SetKind::NatProg: return ProgView{true, e.a, e.d};
    case SetKind::IntProg: return ProgView{false, e.a, e.d};
    default: return std::nullopt;
  }
}

bool is_q_interval(const SetExpr& e) { return e.kind == SetKind::QInterval; }

BigInt mod_pos(const BigInt& x, const BigInt& d) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
  return r;
}

bool scalar_world(const SetExpr& e) { return world_of(e) != World::Composite; }

// --------------------------------------------------------------------------
// Certificates. Everything here is exact: a true answer is a proof, a false
// answer only means "not certified".

bool certified_disjoint(const SetExpr& e, const SetExpr& f);

bool certified_subset(const SetExpr& e, const SetExpr& f) {
  if (e.equals(f)) return true;
  if (e.kind == SetKind::Finite) {
    if (!scalar_world(f)) return false;
    for (const auto& x : e.elements)
      if (!contains(f, x)) return false;
    return true;
  }
  // recursive closure cases
  if (e.kind == SetKind::Union)
    return certified_subset(*e.left, f) && certified_subset(*e.right, f);
  if (e.kind == SetKind::Diff && certified_subset(*e.left, f)) return true;
  if (e.kind == SetKind::Intersect &&
      (certified_subset(*e.left, f) || certified_subset(*e.right, f)))
    return true;
  if (f.kind == SetKind::Union &&
      (certified_subset(e, *f.left) || certified_subset(e, *f.right)))
    return true;
  if (f.kind == SetKind::Intersect)
    return certified_subset(e, *f.left) && certified_subset(e, *f.right);
  if (f.kind == SetKind::Diff)
    return certified_subset(e, *f.left) && certified_disjoint(e, *f.right);

  if (f.kind == SetKind::Rationals) return scalar_world(e);

  auto pe = as_prog(e);
  auto pf = as_prog(f);
  if (pe && pf) {
    if (!mpz_divisible_p(pe->d.get_mpz_t(), pf->d.get_mpz_t())) return false;
    if (mod_pos(pe->a - pf->a, pf->d) != 0) return false;
    if (pf->from_below && !pe->from_below) return false;
    if (pf->from_below && pe->a < pf->a) return false;
    return true;
  }
  if (pf && e.kind == SetKind::Powers) {
    // powers are a subset of N; reduce to N ⊆ F
    return certified_subset(*SetExpr::naturals(), f);
  }
  if (pf && e.kind == SetKind::QInterval) return false;
  if (is_q_interval(e) && is_q_interval(f)) {
    bool lo_ok = e.lo > f.lo || (e.lo == f.lo && (f.lo_closed || !e.lo_closed));
    bool hi_ok = e.hi < f.hi || (e.hi == f.hi && (f.hi_closed || !e.hi_closed));
    return lo_ok && hi_ok;
  }
  return false;
}

// Integers inside a bounded interval, for progression-vs-interval tests.
bool interval_meets_prog(const SetExpr& interval, const SetExpr& prog) {
  BigInt lo, hi;
  mpz_cdiv_q(lo.get_mpz_t(), interval.lo.get_num().get_mpz_t(), interval.lo.get_den().get_mpz_t());
  mpz_fdiv_q(hi.get_mpz_t(), interval.hi.get_num().get_mpz_t(), interval.hi.get_den().get_mpz_t());
  if (hi - lo > 1'000'000) return true;  // too wide to certify; assume they meet
  for (BigInt k = lo; k <= hi; ++k) {
    Rational q(k);
    if (contains(interval, q) && contains(prog, q)) return true;
  }
  return false;
}

bool certified_disjoint(const SetExpr& e, const SetExpr& f) {
  if (e.kind == SetKind::Finite) {
    if (!scalar_world(f)) return false;
    for (const auto& x : e.elements)
      if (contains(f, x)) return false;
    return true;
  }
  if (f.kind == SetKind::Finite) return certified_disjoint(f, e);
  // recursive closure cases
  if (e.kind == SetKind::Union)
    return certified_disjoint(*e.left, f) && certified_disjoint(*e.right, f);
  if (f.kind == SetKind::Union)
    return certified_disjoint(e, *f.left) && certified_disjoint(e, *f.right);
  if (e.kind == SetKind::Diff && certified_disjoint(*e.left, f)) return true;
  if (f.kind == SetKind::Diff && certified_disjoint(e, *f.left)) return true;
  if (e.kind == SetKind::Intersect &&
      (certified_disjoint(*e.left, f) || certified_disjoint(*e.right, f)))
    return true;
  if (f.kind == SetKind::Intersect &&
      (certified_disjoint(e, *f.left) || certified_disjoint(e, *f.right)))
    return true;
  // disjoint from the complement side of a difference: E ⊆ B makes E and
  // A \ B disjoint
  if (f.kind == SetKind::Diff && certified_subset(e, *f.right)) return true;
  if (e.kind == SetKind::Diff && certified_subset(f, *e.right)) return true;

  auto pe = as_prog(e);
  auto pf = as_prog(f);
  if (pe && pf) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), pe->d.get_mpz_t(), pf->d.get_mpz_t());
    if (mod_pos(pe->a - pf->a, g) != 0) return true;  // residues never meet
    return false;  // a common congruence class is unbounded above
  }
  if (pe && is_q_interval(f)) return !interval_meets_prog(f, e);
  if (pf && is_q_interval(e)) return !interval_meets_prog(e, f);
  if (e.kind == SetKind::Powers && is_q_interval(f)) return !interval_meets_prog(f, e);
  if (f.kind == SetKind::Powers && is_q_interval(e)) return !interval_meets_prog(e, f);
  if (is_q_interval(e) && is_q_interval(f)) {
    if (e.hi < f.lo || f.hi < e.lo) return true;
    if (e.hi == f.lo && !(e.hi_closed && f.lo_closed)) return true;
    if (f.hi == e.lo && !(f.hi_closed && e.lo_closed)) return true;
    return false;
  }
  return false;
}

// --------------------------------------------------------------------------
// Intersection rewrites within the closed family.

std::optional<SetExprPtr> intersect_progs(const ProgView& x, const ProgView& y) {
  // solve a ≡ x.a (mod x.d), a ≡ y.a (mod y.d)
  BigInt g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.d.get_mpz_t(), y.d.get_mpz_t());
  if (mod_pos(y.a - x.a, g) != 0) return SetExpr::finite({});
  BigInt l = x.d / g * y.d;  // lcm
  BigInt k = (y.a - x.a) / g;
  BigInt c = x.a + x.d * mod_pos(k * s, y.d / g);
  c = mod_pos(c, l);
  if (!x.from_below && !y.from_below) return SetExpr::int_prog(c, l);
  // bounded below by the larger anchor; the result starts at the smallest
  // member of the class c (mod l) at or above it
  BigInt lo = x.from_below ? x.a : y.a;
  if (x.from_below && y.from_below) lo = std::max(x.a, y.a);
  BigInt delta = lo - c;
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), delta.get_mpz_t(), l.get_mpz_t());
  return SetExpr::nat_prog(c + q * l, l);
}

std::optional<SetExprPtr> intersect_intervals(const SetExpr& e, const SetExpr& f) {
  Rational lo = std::max(e.lo, f.lo);
  Rational hi = std::min(e.hi, f.hi);
  bool lc = (lo == e.lo && !e.lo_closed) || (lo == f.lo && !f.lo_closed) ? false : true;
  bool rc = (hi == e.hi && !e.hi_closed) || (hi == f.hi && !f.hi_closed) ? false : true;
  if (lo > hi || (lo == hi && !(lc && rc))) return SetExpr::finite({});
  if (lo == hi) return SetExpr::finite({lo});
  return SetExpr::q_interval(lo, hi, lc, rc);
}

// --------------------------------------------------------------------------
// The structural recursion.

unsigned least_level_with_magnitude(const BigInt& bound) {
  BigInt mag = abs(bound);
  for (unsigned m = 1; m <= kMaxMaterializedLevel; ++m)
    if (Rational(mag) <= Rational(level_value(m))) return m;
  throw Unsupported("anchor " + to_string(bound) + " needs an impractically deep level");
}

// Least m with k | m!.
unsigned least_level_factorial_divisor(const BigInt& k) {
  for (unsigned m = 1; m <= 64; ++m)
    if (mpz_divisible_p(factorial(m).get_mpz_t(), k.get_mpz_t())) return m;
  throw Unsupported("exponent " + to_string(k) + " needs an impractically deep level");
}

EuclideanValue n_sym() { return EuclideanValue::alpha(); }

CountForm form_of(const SetExpr& e);

CountForm form_of_interval(const SetExpr& e) {
  unsigned m0 = std::max(least_level_containing(e.lo), least_level_containing(e.hi));
  // grid points in [lo, hi): (hi - lo) * n, then closure corrections
  EuclideanValue span = EuclideanValue::monomial(e.hi - e.lo, Rational(1));
  int corr = (e.hi_closed ? 1 : 0) - (e.lo_closed ? 0 : 1);
  return {m0, span + EuclideanValue::constant(Rational(corr))};
}

CountForm form_of(const SetExpr& e) {
  switch (e.kind) {
    case SetKind::Naturals:
      return {1, n_sym()};
    case SetKind::Naturals0:
      return {1, n_sym() + EuclideanValue::constant(Rational(1))};
    case SetKind::Integers:
      return {1, EuclideanValue::monomial(Rational(2), Rational(1)) +
                     EuclideanValue::constant(Rational(1))};
    case SetKind::Rationals:
      return {1, EuclideanValue::monomial(Rational(2), Rational(2)) +
                     EuclideanValue::constant(Rational(1))};
    case SetKind::Finite: {
      unsigned m0 = 1;
      for (const auto& x : e.elements) m0 = std::max(m0, least_level_containing(x));
      return {m0, EuclideanValue::constant(Rational(static_cast<long>(e.elements.size())))};
    }
    case SetKind::NatProg: {
      unsigned m0 = least_level_with_divisor(e.d);
      m0 = std::max(m0, least_level_with_magnitude(e.a));
      // |{k >= 0 : a + kd <= n}| = n/d + 1 - ceil(a/d) once d | n and n >= a
      BigInt ceil_ad;
      mpz_cdiv_q(ceil_ad.get_mpz_t(), e.a.get_mpz_t(), e.d.get_mpz_t());
      EuclideanValue form = EuclideanValue::monomial(Rational(1) / Rational(e.d), Rational(1)) +
                            EuclideanValue::constant(Rational(1) - Rational(ceil_ad));
      return {m0, form};
    }
    case SetKind::IntProg: {
      unsigned m0 = least_level_with_divisor(e.d);
      m0 = std::max(m0, least_level_with_magnitude(e.a));
      // 2n/d + 1 when d | a (the class of 0 keeps its midpoint), else 2n/d
      bool hits_zero = mpz_divisible_p(e.a.get_mpz_t(), e.d.get_mpz_t());
      EuclideanValue form = EuclideanValue::monomial(Rational(2) / Rational(e.d), Rational(1)) +
                            EuclideanValue::constant(Rational(hits_zero ? 1 : 0));
      return {m0, form};
    }
    case SetKind::Powers: {
      unsigned m0 = least_level_factorial_divisor(e.d);
      return {m0, EuclideanValue::monomial(Rational(1), Rational(1) / Rational(e.d))};
    }
    case SetKind::QInterval:
      return form_of_interval(e);
    case SetKind::RInterval:
      throw Unsupported("real intervals have no counting form; use the measure route");
    case SetKind::Union: {
      if (certified_subset(*e.right, *e.left)) return form_of(*e.left);
      if (certified_subset(*e.left, *e.right)) return form_of(*e.right);
      if (!certified_disjoint(*e.left, *e.right))
        throw Unsupported("union needs a disjointness or containment certificate");
      CountForm l = form_of(*e.left), r = form_of(*e.right);
      return {std::max(l.threshold, r.threshold), l.form + r.form};
    }
    case SetKind::Intersect: {
      if (certified_subset(*e.left, *e.right)) return form_of(*e.left);
      if (certified_subset(*e.right, *e.left)) return form_of(*e.right);
      if (certified_disjoint(*e.left, *e.right)) return {1, EuclideanValue()};
      auto pl = as_prog(*e.left);
      auto pr = as_prog(*e.right);
      if (pl && pr) {
        auto merged = intersect_progs(*pl, *pr);
        if (merged) return form_of(**merged);
      }
      if (is_q_interval(*e.left) && is_q_interval(*e.right)) {
        auto merged = intersect_intervals(*e.left, *e.right);
        if (merged) return form_of(**merged);
      }
      throw Unsupported("intersection outside the progression/interval fragment");
    }
    case SetKind::Diff: {
      if (certified_disjoint(*e.left, *e.right)) return form_of(*e.left);
      if (!certified_subset(*e.right, *e.left))
        throw Unsupported("difference needs a containment or disjointness certificate");
      CountForm l = form_of(*e.left), r = form_of(*e.right);
      return {std::max(l.threshold, r.threshold), l.form - r.form};
    }
    case SetKind::Product: {
      CountForm l = form_of(*e.left), r = form_of(*e.right);
      return {std::max(l.threshold, r.threshold), l.form * r.form};
    }
    case SetKind::PFin: {
      CountForm c = form_of(*e.left);
      return {c.threshold, pow_value(EuclideanValue::constant(Rational(2)), c.form)};
    }
    case SetKind::FFin: {
      CountForm x = form_of(*e.left);
      CountForm t = form_of(*e.right);
      if (t.form.is_zero()) throw EmptyTarget("ffin target is provably empty");
      unsigned m0 = std::max(x.threshold, t.threshold);
      // the removed element must already be on the grid: wait for the target
      // count to reach 1
      while (m0 <= kMaxMaterializedLevel &&
             evaluate_at_level(t.form, m0) < 1)
        ++m0;
      return {m0, pow_value(t.form, x.form)};
    }
  }
  throw Unsupported("unhandled set constructor");
}

}  // namespace

CountForm count_form(const SetExpr& e) { return form_of(e); }

EuclideanValue num(const SetExpr& e) {
  if (auto p = as_plurinterval(e)) return num_plurinterval(*p);
  switch (e.kind) {
    case SetKind::Product:
      return num(*e.left) * num(*e.right);
    case SetKind::PFin:
      return pow_value(EuclideanValue::constant(Rational(2)), num(*e.left));
    case SetKind::FFin: {
      EuclideanValue t = num(*e.right);
      if (t.is_zero()) throw EmptyTarget("ffin target is provably empty");
      return pow_value(t, num(*e.left));
    }
    default:
      return count_form(e).form;
  }
}

VerifyReport verify(const SetExpr& e, unsigned m_max, const BruteConfig& cfg) {
  VerifyReport report;
  report.form = count_form(e);
  for (unsigned m = report.form.threshold; m <= m_max; ++m) {
    VerifyRow row;
    row.m = m;
    bool have_n = m <= kMaxMaterializedLevel;
    if (have_n) row.n = level_value(m);
    try {
      row.brute = count_brute(e, m, cfg);
      Rational closed = evaluate_at_level(report.form.form, m);
      if (!is_integer(closed)) {
        row.match = false;
      } else {
        row.closed = closed.get_num();
        row.match = row.closed == row.brute;
      }
      if (!row.match) report.pass = false;
    } catch (const ComplexityExceeded&) {
      row.skipped = true;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string format_report_text(const VerifyReport& r) {
  std::ostringstream os;
  os << "m\tn_m\tbrute\tclosed\tmatch\n";
  for (const auto& row : r.rows) {
    os << row.m << '\t' << (row.n == 0 ? std::string("-") : to_string(row.n)) << '\t';
    if (row.skipped) {
      os << "-\t-\tskipped\n";
    } else {
      os << to_string(row.brute) << '\t' << to_string(row.closed) << '\t'
         << (row.match ? "ok" : "MISMATCH") << '\n';
    }
  }
  os << (r.pass ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace numerositas
