#pragma once

#include <string>
#include <vector>

#include "numerositas/euclid.hpp"
#include "numerositas/label_net.hpp"
#include "numerositas/setlang.hpp"

namespace numerositas {

// An eventual closed form: for every m >= threshold, |E ∩ λ_m| equals `form`
// evaluated at n := n_m. The form is b-free; its unit a is read as the formal
// symbol n (format with unit_symbol 'n').
struct CountForm {
  unsigned threshold = 1;
  EuclideanValue form;
};

// Structural recursion producing the closed counting form with the smallest
// threshold the recursion can certify. Throws Unsupported / EmptyTarget.
CountForm count_form(const SetExpr& e);

// The numerosity num(E): the count form with n read as a. Real plurinterval
// expressions (rint atoms closed under union/inter/diff, and products of
// such) take the exact b-linear route instead.
EuclideanValue num(const SetExpr& e);

struct VerifyRow {
  unsigned m = 0;
  BigInt n;
  bool skipped = false;   // enumeration over budget; never a failure
  BigInt brute;
  BigInt closed;
  bool match = false;
};

struct VerifyReport {
  CountForm form;
  std::vector<VerifyRow> rows;
  bool pass = true;  // all non-skipped rows match
};

// Check brute counts against the closed form for m in [threshold, m_max].
VerifyReport verify(const SetExpr& e, unsigned m_max,
                    const BruteConfig& cfg = BruteConfig::from_env());

// One line per level: "m<TAB>n_m<TAB>brute<TAB>closed<TAB>match", then
// "PASS"/"FAIL".
std::string format_report_text(const VerifyReport& r);

}  // namespace numerositas
