#pragma once

#include <cstdint>
#include <optional>

#include "numerositas/numeric.hpp"
#include "numerositas/setlang.hpp"

namespace numerositas {

// Levels above this are never materialized as integers (n_9 has ~2.9e6
// digits; n_12 would not fit in memory). Divisibility and magnitude tests
// still work above it where possible.
inline constexpr unsigned kMaxMaterializedLevel = 8;

// n_m = m!^{m!}. n_1 = 1, n_2 = 4, n_3 = 46656.
BigInt level_value(unsigned m);

struct LabelIndex {
  unsigned m;
  BigInt n;
  static LabelIndex at(unsigned m) { return {m, level_value(m)}; }
};

// d >= 1 divides n_m? Decided from prime valuations, no materialization.
bool divides_level(const BigInt& d, unsigned m);

// Least m with d | n_m (and, if floor is given, m >= floor).
unsigned least_level_with_divisor(const BigInt& d, unsigned floor = 1);

// q (lowest terms) lies on the level-m grid H_{n_m} = {a/n_m : |a| <= n_m^2}:
// denominator divides n_m and |q| <= n_m.
bool grid_contains(unsigned m, const Rational& q);

// Least m whose grid contains q.
unsigned least_level_containing(const Rational& q);

// Scalar universe a set enumerates over: {0..n}, {-n..n}, or H_n. Composite
// constructors (product, pfin, ffin) count structurally instead.
enum class World { Nat, Int, Rat, Composite };
World world_of(const SetExpr& e);

// Membership of a rational in a scalar-world set expression. Total on the
// scalar fragment (composites other than union/intersect/diff are rejected
// upstream).
bool contains(const SetExpr& e, const Rational& q);

struct BruteConfig {
  // Membership-test budget, default 1e8; NUMEROSITAS_MAX_OPS overrides.
  std::uint64_t max_ops = 100'000'000;
  static BruteConfig from_env();
};

// |E intersected with the level-m universe|, by enumeration. Throws
// ComplexityExceeded past the budget and Unsupported for real-interval atoms.
BigInt count_brute(const SetExpr& e, unsigned m, const BruteConfig& cfg = BruteConfig::from_env());

}  // namespace numerositas
