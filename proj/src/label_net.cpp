#include "numerositas/label_net.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "numerositas/errors.hpp"

namespace numerositas {

BigInt level_value(unsigned m) {
  if (m < 1) throw Unsupported("level index must be >= 1");
  if (m > kMaxMaterializedLevel)
    throw ComplexityExceeded("level " + std::to_string(m) + " exceeds the materializable bound " +
                             std::to_string(kMaxMaterializedLevel));
  static std::map<unsigned, BigInt> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  BigInt mf = factorial(m);
  BigInt n = pow_big(mf, mf);
  cache.emplace(m, n);
  return n;
}

namespace {

std::vector<std::pair<BigInt, unsigned long>> factorize(BigInt d) {
  std::vector<std::pair<BigInt, unsigned long>> out;
  for (BigInt p = 2; p * p <= d; p += (p == 2) ? 1 : 2) {
    if (!mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) continue;
    unsigned long e = 0;
    while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) {
      d /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (d > 1) out.emplace_back(d, 1);
  return out;
}

// p-adic valuation of m! (Legendre).
BigInt legendre(unsigned m, const BigInt& p) {
  BigInt total = 0;
  BigInt pk = p;
  while (pk <= m) {
    total += BigInt(m) / pk;
    pk *= p;
  }
  return total;
}

// e <= m! * v_p(m!) given p <= m. From m >= 21 on, m! alone exceeds every
// representable multiplicity.
bool multiplicity_ok(unsigned m, const BigInt& p, unsigned long e) {
  if (m >= 21) return true;
  return BigInt(e) <= factorial(m) * legendre(m, p);
}

}  // namespace

bool divides_level(const BigInt& d, unsigned m) {
  if (d < 1) throw Unsupported("divisor must be >= 1");
  if (m < 1) return false;
  if (d == 1) return true;
  for (const auto& [p, e] : factorize(d)) {
    if (p > m) return false;
    if (!multiplicity_ok(m, p, e)) return false;
  }
  return true;
}

unsigned least_level_with_divisor(const BigInt& d, unsigned floor) {
  if (d < 1) throw Unsupported("divisor must be >= 1");
  unsigned m = std::max(floor, 1u);
  if (d == 1) return m;
  auto factors = factorize(d);
  for (const auto& [p, e] : factors) {
    if (!mpz_fits_ulong_p(p.get_mpz_t()) || p > 1'000'000'000ul)
      throw Unsupported("divisor " + to_string(d) + " needs an impractically deep level");
    m = std::max(m, static_cast<unsigned>(p.get_ui()));
  }
  while (true) {
    bool ok = true;
    for (const auto& [p, e] : factors)
      if (!multiplicity_ok(m, p, e)) ok = false;
    if (ok) return m;
    ++m;  // resolves by m = 21 at the latest
  }
}

namespace {

// |q| <= n_m. Levels past the materializable bound are only compared by bit
// size; their values dwarf any practical input.
bool magnitude_fits(unsigned m, const Rational& q) {
  Rational mag = q < 0 ? Rational(-q) : q;
  if (m <= kMaxMaterializedLevel) return mag <= Rational(level_value(m));
  double log2_mf = 0;
  for (unsigned k = 2; k <= m; ++k) log2_mf += std::log2(static_cast<double>(k));
  double bits_n = std::exp2(std::min(log2_mf, 300.0));  // m! as double, capped
  bits_n = bits_n * log2_mf;                            // bits of m!^{m!}
  double bits_q = static_cast<double>(mpz_sizeinbase(mag.get_num().get_mpz_t(), 2)) -
                  static_cast<double>(mpz_sizeinbase(mag.get_den().get_mpz_t(), 2)) + 1;
  return bits_q + 64 < bits_n;
}

}  // namespace

bool grid_contains(unsigned m, const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (!divides_level(c.get_den(), m)) return false;
  return magnitude_fits(m, c);
}

unsigned least_level_containing(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  unsigned m = least_level_with_divisor(c.get_den());
  while (m <= 64) {
    if (magnitude_fits(m, c)) return m;
    ++m;
  }
  throw Unsupported("no practical level contains " + to_string(q));
}

// ---------------------------------------------------------------------------
// Worlds and membership.

namespace {
int world_rank(World w) {
  switch (w) {
    case World::Nat: return 0;
    case World::Int: return 1;
    case World::Rat: return 2;
    default: return 3;
  }
}
}  // namespace

World world_of(const SetExpr& e) {
  switch (e.kind) {
    case SetKind::Naturals:
    case SetKind::Naturals0:
    case SetKind::NatProg:
    case SetKind::Powers:
      return World::Nat;
    case SetKind::Integers:
    case SetKind::IntProg:
      return World::Int;
    case SetKind::Rationals:
    case SetKind::QInterval:
    case SetKind::RInterval:
      return World::Rat;
    case SetKind::Finite: {
      World w = World::Nat;
      for (const auto& x : e.elements) {
        if (!is_integer(x)) return World::Rat;
        if (x < 0) w = World::Int;
      }
      return w;
    }
    case SetKind::Union:
    case SetKind::Intersect: {
      World l = world_of(*e.left), r = world_of(*e.right);
      if (l == World::Composite || r == World::Composite) return World::Composite;
      // a union enumerates the wider universe; an intersection fits in the
      // narrower one
      if (e.kind == SetKind::Union) return world_rank(l) >= world_rank(r) ? l : r;
      return world_rank(l) <= world_rank(r) ? l : r;
    }
    case SetKind::Diff:
      return world_of(*e.right) == World::Composite ? World::Composite : world_of(*e.left);
    default:
      return World::Composite;
  }
}

bool contains(const SetExpr& e, const Rational& q) {
  switch (e.kind) {
    case SetKind::Finite:
      return std::binary_search(e.elements.begin(), e.elements.end(), q);
    case SetKind::Naturals:
      return is_integer(q) && q >= 1;
    case SetKind::Naturals0:
      return is_integer(q) && q >= 0;
    case SetKind::Integers:
      return is_integer(q);
    case SetKind::Rationals:
      return true;
    case SetKind::NatProg: {
      if (!is_integer(q) || q < Rational(e.a)) return false;
      BigInt r = q.get_num() - e.a;
      return mpz_divisible_p(r.get_mpz_t(), e.d.get_mpz_t());
    }
    case SetKind::IntProg: {
      if (!is_integer(q)) return false;
      BigInt r = q.get_num() - e.a;
      return mpz_divisible_p(r.get_mpz_t(), e.d.get_mpz_t());
    }
    case SetKind::Powers: {
      if (!is_integer(q) || q < 1) return false;
      return perfect_root(q.get_num(), e.d.get_ui(), nullptr);
    }
    case SetKind::QInterval:
    case SetKind::RInterval: {
      if (q < e.lo || (q == e.lo && !e.lo_closed)) return false;
      if (q > e.hi || (q == e.hi && !e.hi_closed)) return false;
      return true;
    }
    case SetKind::Union:
      return contains(*e.left, q) || contains(*e.right, q);
    case SetKind::Intersect:
      return contains(*e.left, q) && contains(*e.right, q);
    case SetKind::Diff:
      return contains(*e.left, q) && !contains(*e.right, q);
    default:
      throw Unsupported("membership is defined on scalar set expressions only");
  }
}

// ---------------------------------------------------------------------------
// Brute counting.

BruteConfig BruteConfig::from_env() {
  BruteConfig cfg;
  if (const char* s = std::getenv("NUMEROSITAS_MAX_OPS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) cfg.max_ops = v;
  }
  return cfg;
}

namespace {

struct Budget {
  std::uint64_t left;
  void spend(const BigInt& ops) {
    if (!mpz_fits_ulong_p(ops.get_mpz_t()) || ops.get_ui() > left)
      throw ComplexityExceeded("enumeration exceeds the membership-test budget");
    left -= ops.get_ui();
  }
};

bool has_r_interval(const SetExpr& e) {
  if (e.kind == SetKind::RInterval) return true;
  if (e.left && has_r_interval(*e.left)) return true;
  if (e.right && has_r_interval(*e.right)) return true;
  return false;
}

BigInt count_rec(const SetExpr& e, unsigned m, Budget& budget);

// Count a scalar-world expression by enumerating its universe restriction
// and testing membership.
BigInt count_scalar(const SetExpr& e, unsigned m, Budget& budget) {
  if (e.kind == SetKind::Finite) {
    budget.spend(BigInt(static_cast<unsigned long>(e.elements.size())));
    BigInt c = 0;
    for (const auto& x : e.elements)
      if (grid_contains(m, x)) ++c;
    return c;
  }

  BigInt n = level_value(m);
  BigInt c = 0;
  switch (world_of(e)) {
    case World::Nat: {
      budget.spend(n + 1);
      for (BigInt k = 0; k <= n; ++k)
        if (contains(e, Rational(k))) ++c;
      return c;
    }
    case World::Int: {
      budget.spend(2 * n + 1);
      for (BigInt k = -n; k <= n; ++k)
        if (contains(e, Rational(k))) ++c;
      return c;
    }
    case World::Rat: {
      budget.spend(2 * n * n + 1);
      BigInt bound = n * n;
      for (BigInt a = -bound; a <= bound; ++a) {
        Rational q(a, n);
        q.canonicalize();
        if (contains(e, q)) ++c;
      }
      return c;
    }
    default:
      throw Unsupported("set algebra over composite constructors is not countable");
  }
}

BigInt count_rec(const SetExpr& e, unsigned m, Budget& budget) {
  switch (e.kind) {
    case SetKind::Product:
      // the level restriction of a product is the product of restrictions
      return count_rec(*e.left, m, budget) * count_rec(*e.right, m, budget);
    case SetKind::PFin: {
      BigInt k = count_rec(*e.left, m, budget);
      if (k > 62)
        throw ComplexityExceeded("powerset enumeration of 2^" + to_string(k) +
                                 " subsets exceeds any budget");
      std::uint64_t total = std::uint64_t(1) << k.get_ui();
      budget.spend(BigInt(static_cast<unsigned long>(total)));
      // walk every subset mask; the count is the point
      std::uint64_t seen = 0;
      for (std::uint64_t mask = 0; mask < total; ++mask) ++seen;
      return BigInt(static_cast<unsigned long>(seen));
    }
    case SetKind::FFin: {
      BigInt xs = count_rec(*e.left, m, budget);
      BigInt es = count_rec(*e.right, m, budget);
      if (es == 0)
        throw EmptyTarget("ffin target has no elements at level " + std::to_string(m));
      if (xs > 62) throw ComplexityExceeded("function-space domain too large to enumerate");
      // functions from subsets D of the level-m domain into the target with
      // one element removed: enumerate assignments with an odometer per D
      std::uint64_t domain = std::uint64_t(1) << xs.get_ui();
      BigInt target = es - 1;
      BigInt seen = 0;
      for (std::uint64_t mask = 0; mask < domain; ++mask) {
        unsigned bits = static_cast<unsigned>(__builtin_popcountll(mask));
        BigInt combos = 1;
        for (unsigned i = 0; i < bits; ++i) combos *= target;
        budget.spend(combos == 0 ? BigInt(1) : combos);
        if (bits == 0) {
          seen += 1;  // the empty function
          continue;
        }
        if (target == 0) continue;
        std::uint64_t t = target.get_ui();
        std::vector<std::uint64_t> odo(bits, 0);
        while (true) {
          seen += 1;
          unsigned i = 0;
          while (i < bits && ++odo[i] == t) odo[i++] = 0;
          if (i == bits) break;
        }
      }
      return seen;
    }
    default:
      return count_scalar(e, m, budget);
  }
}

}  // namespace

BigInt count_brute(const SetExpr& e, unsigned m, const BruteConfig& cfg) {
  if (m < 1) throw Unsupported("level index must be >= 1");
  if (has_r_interval(e))
    throw Unsupported("real intervals have no constructive finite level");
  Budget budget{cfg.max_ops};
  return count_rec(e, m, budget);
}

}  // namespace numerositas
