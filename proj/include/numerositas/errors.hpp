#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace numerositas {

// Malformed input text. `position` is 1-based character offset; `expected`
// lists the token spellings that would have been accepted there.
struct SyntaxError : std::runtime_error {
  std::size_t position;
  std::vector<std::string> expected;
  SyntaxError(std::size_t pos, std::vector<std::string> exp, const std::string& what)
      : std::runtime_error(what), position(pos), expected(std::move(exp)) {}
};

// The expression is outside the family with a certified closed form.
struct Unsupported : std::runtime_error {
  explicit Unsupported(const std::string& what) : std::runtime_error(what) {}
};

// Brute-force enumeration would exceed the configured membership-test budget.
struct ComplexityExceeded : std::runtime_error {
  explicit ComplexityExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : std::runtime_error {
  DivisionByZero() : std::runtime_error("division by zero") {}
};

// The value mentions the unit b, which has no finite-level model.
struct BetaNotEvaluable : std::runtime_error {
  BetaNotEvaluable() : std::runtime_error("value contains unit b; no finite level evaluates it") {}
};

// A fractional exponent whose denominator does not divide m! at the requested level.
struct ExponentNotIntegralAtLevel : std::runtime_error {
  explicit ExponentNotIntegralAtLevel(const std::string& what) : std::runtime_error(what) {}
};

// ffin(X, E) with provably empty E.
struct EmptyTarget : std::runtime_error {
  explicit EmptyTarget(const std::string& what) : std::runtime_error(what) {}
};

// Ordinal result would not fit the hereditary-CNF representation budget.
struct ResultAboveEpsilon0 : std::runtime_error {
  explicit ResultAboveEpsilon0(const std::string& what) : std::runtime_error(what) {}
};

struct ArgumentNotBelowThetaJPlus1 : std::runtime_error {
  explicit ArgumentNotBelowThetaJPlus1(const std::string& what) : std::runtime_error(what) {}
};

// embed() requires every CNF exponent to be a finite natural (argument < w^w).
struct ExponentNotFinite : std::runtime_error {
  explicit ExponentNotFinite(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace numerositas
