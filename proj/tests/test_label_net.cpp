#include <doctest.h>

#include "numerositas/errors.hpp"
#include "numerositas/label_net.hpp"
#include "numerositas/setlang.hpp"

using namespace numerositas;

TEST_CASE("level values") {
  CHECK(level_value(1) == 1);
  CHECK(level_value(2) == 4);
  CHECK(level_value(3) == 46656);
  CHECK(level_value(3) == pow_big(BigInt(6), BigInt(6)));
  // strictly increasing and divisor-nested
  for (unsigned m = 1; m < 6; ++m) {
    CHECK(level_value(m) < level_value(m + 1));
    CHECK(mpz_divisible_p(level_value(m + 1).get_mpz_t(), level_value(m).get_mpz_t()));
  }
  CHECK_THROWS_AS(level_value(0), Unsupported);
  CHECK_THROWS_AS(level_value(kMaxMaterializedLevel + 1), ComplexityExceeded);
}

TEST_CASE("every k <= m divides n_m") {
  for (unsigned m = 1; m <= 6; ++m)
    for (unsigned k = 1; k <= m; ++k) {
      CHECK(divides_level(BigInt(k), m));
      CHECK(mpz_divisible_p(level_value(m).get_mpz_t(), BigInt(k).get_mpz_t()));
    }
}

TEST_CASE("grid membership") {
  CHECK(grid_contains(2, Rational(3, 4)));
  CHECK_FALSE(grid_contains(2, Rational(1, 3)));
  for (unsigned m = 1; m <= 5; ++m) CHECK(grid_contains(m, Rational(0)));
  // |q| <= n_m bound
  CHECK(grid_contains(2, Rational(4)));
  CHECK_FALSE(grid_contains(2, Rational(5)));
  CHECK(grid_contains(3, Rational(5)));
  // symmetry
  for (int num = -8; num <= 8; ++num)
    for (int den = 1; den <= 6; ++den)
      CHECK(grid_contains(3, Rational(num, den)) == grid_contains(3, Rational(-num, den)));
}

TEST_CASE("grid consistency with the integer and natural levels") {
  // H_n meets Z exactly in {-n..n} and N0 in {0..n}
  for (unsigned m = 1; m <= 2; ++m) {
    BigInt n = level_value(m);
    BigInt in_z = 0, in_n0 = 0;
    for (BigInt a = -n * n; a <= n * n; ++a) {
      Rational q(a, n);
      q.canonicalize();
      if (!grid_contains(m, q)) continue;
      if (is_integer(q)) {
        ++in_z;
        if (q >= 0) ++in_n0;
      }
    }
    CHECK(in_z == 2 * n + 1);
    CHECK(in_n0 == n + 1);
  }
}

TEST_CASE("grid consistency at level 3") {
  // the full grid has ~4.4e9 points; enumerate the integer slice instead
  BigInt n = level_value(3);
  for (BigInt k = -n; k <= n; ++k) CHECK(grid_contains(3, Rational(k)));
  for (BigInt k = n + 1; k <= n + 500; ++k) {
    CHECK_FALSE(grid_contains(3, Rational(k)));
    CHECK_FALSE(grid_contains(3, Rational(-k)));
  }
}

TEST_CASE("grid monotonicity across levels") {
  BigInt n2 = level_value(2);
  for (BigInt a = -n2 * n2; a <= n2 * n2; ++a) {
    Rational q(a, n2);
    q.canonicalize();
    if (grid_contains(2, q)) CHECK(grid_contains(3, q));
  }
}

TEST_CASE("least containing level") {
  CHECK(least_level_containing(Rational(0)) == 1);
  CHECK(least_level_containing(Rational(3, 4)) == 2);
  CHECK(least_level_containing(Rational(1, 3)) == 3);
  CHECK(least_level_containing(Rational(100)) == 3);
  CHECK(least_level_with_divisor(BigInt(3)) == 3);
  CHECK(least_level_with_divisor(BigInt(4)) == 2);
  CHECK(least_level_with_divisor(BigInt(7)) == 7);
}

TEST_CASE("brute counts of the base sets") {
  CHECK(count_brute(*parse_set("N"), 2) == 4);
  CHECK(count_brute(*parse_set("Z"), 2) == 9);
  CHECK(count_brute(*parse_set("pfin(N)"), 2) == 16);
  CHECK(count_brute(*parse_set("N"), 1) == 1);
  CHECK(count_brute(*parse_set("N0"), 2) == 5);
  CHECK(count_brute(*parse_set("Q"), 1) == 3);
  CHECK(count_brute(*parse_set("Q"), 2) == 33);
  CHECK(count_brute(*parse_set("mult(3)"), 3) == 15552);
}

TEST_CASE("brute counts of composites") {
  CHECK(count_brute(*parse_set("prod(N0,N)"), 2) == 20);
  CHECK(count_brute(*parse_set("ffin(N,{1,2})"), 2) == 16);   // 2^4
  CHECK(count_brute(*parse_set("ffin(N,N)"), 2) == 256);      // 4^4
  CHECK(count_brute(*parse_set("union(mult(2),{1})"), 2) == 3);
  CHECK(count_brute(*parse_set("diff(Z,N0)"), 2) == 4);
  CHECK(count_brute(*parse_set("inter(mult(2),mult(3))"), 3) == 7776);  // multiples of 6
  CHECK(count_brute(*parse_set("powers(2)"), 2) == 2);        // 1, 4
  CHECK(count_brute(*parse_set("qint[0,1/2)"), 2) == 2);      // 0, 1/4
}

TEST_CASE("brute errors") {
  CHECK_THROWS_AS(count_brute(*parse_set("rint[0,1)"), 2), Unsupported);
  CHECK_THROWS_AS(count_brute(*parse_set("Q"), 3), ComplexityExceeded);
  BruteConfig tiny;
  tiny.max_ops = 10;
  CHECK_THROWS_AS(count_brute(*parse_set("N"), 3, tiny), ComplexityExceeded);
  CHECK_THROWS_AS(count_brute(*parse_set("pfin(Z)"), 3), ComplexityExceeded);
}

TEST_CASE("level monotonicity of counts under inclusion") {
  auto pairs = {
      std::pair{"mult(6)", "mult(3)"},
      std::pair{"powers(2)", "N"},
      std::pair{"qint[0,1/4)", "qint[0,1/2)"},
      std::pair{"N", "Z"},
  };
  for (auto [small, big] : pairs)
    for (unsigned m = 1; m <= 3; ++m) {
      if (world_of(*parse_set(big)) == World::Rat && m > 2) continue;
      CHECK(count_brute(*parse_set(small), m) <= count_brute(*parse_set(big), m));
    }
}
