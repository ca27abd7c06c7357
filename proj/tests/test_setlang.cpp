#include <doctest.h>

#include <random>
#include <string>

#include "numerositas/errors.hpp"
#include "numerositas/setlang.hpp"

using namespace numerositas;

TEST_CASE("atoms parse") {
  CHECK(parse_set("N")->kind == SetKind::Naturals);
  CHECK(parse_set("N0")->kind == SetKind::Naturals0);
  CHECK(parse_set("Z")->kind == SetKind::Integers);
  CHECK(parse_set("Q")->kind == SetKind::Rationals);
  auto m = parse_set("mult(3)");
  CHECK(m->kind == SetKind::NatProg);
  CHECK(m->a == 3);
  CHECK(m->d == 3);
  auto q = parse_set("qint[0,1/2)");
  CHECK(q->kind == SetKind::QInterval);
  CHECK(q->lo == 0);
  CHECK(q->hi == Rational(1, 2));
  CHECK(q->lo_closed);
  CHECK_FALSE(q->hi_closed);
}

TEST_CASE("composites parse") {
  auto e = parse_set("union(diff(Z,N0), prod(N, pfin(mult(2))))");
  CHECK(e->kind == SetKind::Union);
  CHECK(e->left->kind == SetKind::Diff);
  CHECK(e->right->kind == SetKind::Product);
  CHECK(e->right->right->kind == SetKind::PFin);
  auto f = parse_set("{ -1/2, 3, 3, 0 }");
  CHECK(f->elements.size() == 3);  // dedup
  CHECK(f->elements[0] == Rational(-1, 2));  // sorted
  CHECK(f->elements[2] == 3);
}

TEST_CASE("render examples") {
  CHECK(render(*parse_set("N")) == "N");
  CHECK(render(*SetExpr::q_interval(Rational(0), Rational(1, 2), true, false)) == "qint[0,1/2)");
  CHECK(render(*parse_set("mult(3)")) == "mult(3)");
  CHECK(render(*parse_set("natprog(1,3)")) == "natprog(1,3)");
  CHECK(render(*OrdExpr::binary(OrdKind::NatAdd, OrdExpr::omega(), OrdExpr::nat_const(1))) ==
        "w <+> 1");
}

TEST_CASE("ordinal expressions parse") {
  CHECK(parse_ordinal("w")->kind == OrdKind::Omega);
  auto p = parse_ordinal("w^w");
  CHECK(p->kind == OrdKind::OrdPow);
  CHECK(p->left->kind == OrdKind::Omega);
  CHECK(p->right->kind == OrdKind::Omega);
  auto n = parse_ordinal("(w+1) <*> (w+1)");
  CHECK(n->kind == OrdKind::NatMul);
  CHECK(n->left->kind == OrdKind::OrdAdd);
  // precedence: ^ over * over +, right-assoc ^
  auto c = parse_ordinal("w^w^2*3 + 1");
  CHECK(c->kind == OrdKind::OrdAdd);
  CHECK(c->left->kind == OrdKind::OrdMul);
  CHECK(c->left->left->kind == OrdKind::OrdPow);
  CHECK(c->left->left->right->kind == OrdKind::OrdPow);
  CHECK(parse_ordinal("theta(2)")->nat == 2);
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_set("union(N,)");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.position == 9);
    CHECK_FALSE(e.expected.empty());
  }
  CHECK_THROWS_AS(parse_set(""), SyntaxError);
  CHECK_THROWS_AS(parse_set("qint[1,0)"), SyntaxError);      // reversed endpoints
  CHECK_THROWS_AS(parse_set("qint[0,0)"), SyntaxError);      // empty half-open singleton
  CHECK_THROWS_AS(parse_set("mult(0)"), SyntaxError);
  CHECK_THROWS_AS(parse_set("ffin(N,{})"), SyntaxError);     // empty target
  CHECK_THROWS_AS(parse_set("N extra"), SyntaxError);
  CHECK_THROWS_AS(parse_ordinal("w +"), SyntaxError);
  CHECK_THROWS_AS(parse_ordinal("<+>"), SyntaxError);
  CHECK_THROWS_AS(parse_set("{1/0}"), SyntaxError);
}

namespace {

std::mt19937_64 rng(20240817);

Rational rand_rat() {
  std::uniform_int_distribution<int> num(-12, 12), den(1, 6);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

SetExprPtr rand_set(int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 14 : 9);
  switch (pick(rng)) {
    case 0: return SetExpr::naturals();
    case 1: return SetExpr::naturals0();
    case 2: return SetExpr::integers();
    case 3: return SetExpr::rationals();
    case 4: {
      std::uniform_int_distribution<int> n(0, 4);
      std::vector<Rational> xs;
      for (int i = n(rng); i > 0; --i) xs.push_back(rand_rat());
      return SetExpr::finite(std::move(xs));
    }
    case 5: {
      std::uniform_int_distribution<int> a(0, 9), d(1, 6);
      return SetExpr::nat_prog(a(rng), d(rng));
    }
    case 6: {
      std::uniform_int_distribution<int> a(-9, 9), d(1, 6);
      return SetExpr::int_prog(a(rng), d(rng));
    }
    case 7: {
      std::uniform_int_distribution<int> k(1, 5);
      return SetExpr::powers(k(rng));
    }
    case 8:
    case 9: {
      Rational lo = rand_rat(), hi = rand_rat();
      if (lo > hi) std::swap(lo, hi);
      if (lo == hi) hi += 1;
      bool lc = rng() & 1, rc = rng() & 1;
      return (rng() & 1) ? SetExpr::q_interval(lo, hi, lc, rc)
                         : SetExpr::r_interval(lo, hi, lc, rc);
    }
    case 10: return SetExpr::set_union(rand_set(depth - 1), rand_set(depth - 1));
    case 11: return SetExpr::intersect(rand_set(depth - 1), rand_set(depth - 1));
    case 12: return SetExpr::diff(rand_set(depth - 1), rand_set(depth - 1));
    case 13: return SetExpr::product(rand_set(depth - 1), rand_set(depth - 1));
    default: return SetExpr::pfin(rand_set(depth - 1));
  }
}

OrdExprPtr rand_ord(int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 7 : 2);
  switch (pick(rng)) {
    case 0: return OrdExpr::omega();
    case 1: {
      std::uniform_int_distribution<int> k(0, 20);
      return OrdExpr::nat_const(k(rng));
    }
    case 2: {
      std::uniform_int_distribution<int> j(0, 3);
      return OrdExpr::theta(j(rng));
    }
    case 3: return OrdExpr::binary(OrdKind::OrdAdd, rand_ord(depth - 1), rand_ord(depth - 1));
    case 4: return OrdExpr::binary(OrdKind::OrdMul, rand_ord(depth - 1), rand_ord(depth - 1));
    case 5: return OrdExpr::binary(OrdKind::OrdPow, rand_ord(depth - 1), rand_ord(depth - 1));
    case 6: return OrdExpr::binary(OrdKind::NatAdd, rand_ord(depth - 1), rand_ord(depth - 1));
    default: return OrdExpr::binary(OrdKind::NatMul, rand_ord(depth - 1), rand_ord(depth - 1));
  }
}

}  // namespace

TEST_CASE("set round-trip law") {
  for (int i = 0; i < 500; ++i) {
    SetExprPtr e = rand_set(3);
    SetExprPtr back = parse_set(render(*e));
    CHECK(back->equals(*e));
  }
}

TEST_CASE("ordinal round-trip law") {
  for (int i = 0; i < 500; ++i) {
    OrdExprPtr e = rand_ord(3);
    OrdExprPtr back = parse_ordinal(render(*e));
    CHECK(back->equals(*e));
  }
}

TEST_CASE("parser totality on arbitrary bytes") {
  std::uniform_int_distribution<int> len(0, 40);
  std::uniform_int_distribution<int> byte(1, 255);
  for (int i = 0; i < 2000; ++i) {
    std::string junk;
    for (int j = len(rng); j > 0; --j) junk.push_back(static_cast<char>(byte(rng)));
    try {
      parse_set(junk);
    } catch (const SyntaxError& e) {
      CHECK(e.position >= 1);
    }
    try {
      parse_ordinal(junk);
    } catch (const SyntaxError& e) {
      CHECK(e.position >= 1);
    }
  }
}
