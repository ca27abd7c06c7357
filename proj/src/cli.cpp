#include "numerositas/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <ostream>
#include <string>

#include "numerositas/errors.hpp"
#include "numerositas/measure.hpp"
#include "numerositas/numerosity.hpp"
#include "numerositas/ordinal.hpp"
#include "numerositas/setlang.hpp"

namespace numerositas {

namespace {

using Json = nlohmann::ordered_json;

bool looks_like_plurinterval(const std::string& s) {
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '[' || c == '(';
  }
  return false;
}

// Split "E1 / E2" at a top-level slash; rationals and interval brackets keep
// their slashes nested.
std::optional<std::pair<std::string, std::string>> split_ratio(const std::string& s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    else if (c == ')' || c == ']' || c == '}') --depth;
    else if (c == '/' && depth == 0)
      return std::make_pair(s.substr(0, i), s.substr(i + 1));
  }
  return std::nullopt;
}

std::string format_standard_part(const StandardPart& sp) {
  switch (sp.kind) {
    case StandardPart::Finite: return to_string(sp.value);
    case StandardPart::PlusInfinity: return "+inf";
    case StandardPart::MinusInfinity: return "-inf";
    default: return "unknown";
  }
}

struct Options {
  std::string expr;
  unsigned level = 2;
  unsigned max_level = 3;
  std::string unit = "beta";
  int theta_base = -1;
  std::string format = "text";
  bool json() const { return format == "json"; }
};

int cmd_num(const Options& opt, std::ostream& out) {
  SetExprPtr e = parse_set(opt.expr);
  if (as_plurinterval(*e)) {
    EuclideanValue v = num(*e);
    if (opt.json()) {
      Json j;
      j["value"] = format_value(v);
      j["threshold"] = nullptr;
      j["axiomatic"] = true;
      out << j.dump() << '\n';
    } else {
      out << format_value(v) << "\nthreshold: axiomatic\n";
    }
    return 0;
  }
  EuclideanValue v = num(*e);
  // the threshold comes from the counting form when one exists
  unsigned threshold = 1;
  bool have_threshold = true;
  try {
    threshold = count_form(*e).threshold;
  } catch (const Unsupported&) {
    have_threshold = false;  // exponential-tower values reachable by num only
  }
  if (opt.json()) {
    Json j;
    j["value"] = format_value(v);
    if (have_threshold) j["threshold"] = threshold;
    else j["threshold"] = nullptr;
    out << j.dump() << '\n';
  } else {
    out << format_value(v) << '\n';
    if (have_threshold) out << "threshold: " << threshold << '\n';
  }
  return 0;
}

int cmd_count(const Options& opt, std::ostream& out) {
  SetExprPtr e = parse_set(opt.expr);
  BigInt c = count_brute(*e, opt.level);
  if (opt.json()) {
    Json j;
    j["value"] = to_string(c);
    j["level"] = opt.level;
    j["n"] = to_string(level_value(opt.level));
    out << j.dump() << '\n';
  } else {
    out << to_string(c) << '\n';
  }
  return 0;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  SetExprPtr e = parse_set(opt.expr);
  VerifyReport r = verify(*e, opt.max_level);
  if (opt.json()) {
    Json j;
    j["value"] = format_value(r.form.form, 'n');
    j["threshold"] = r.form.threshold;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
      Json jr;
      jr["m"] = row.m;
      if (row.n != 0) jr["n"] = to_string(row.n);
      if (row.skipped) {
        jr["skipped"] = true;
      } else {
        jr["brute"] = to_string(row.brute);
        jr["closed"] = to_string(row.closed);
        jr["match"] = row.match;
      }
      rows.push_back(std::move(jr));
    }
    j["report"] = std::move(rows);
    j["pass"] = r.pass;
    out << j.dump() << '\n';
  } else {
    out << "form: " << format_value(r.form.form, 'n') << " (threshold " << r.form.threshold
        << ")\n";
    out << format_report_text(r);
  }
  return 0;
}

int cmd_ord(const Options& opt, std::ostream& out) {
  OrdExprPtr e = parse_ordinal(opt.expr);
  OrdinalCNF t = eval_ord_expr(*e);
  std::string theta_text;
  if (opt.theta_base >= 0)
    theta_text = format_theta(to_theta_base(t, static_cast<unsigned>(opt.theta_base)));
  if (opt.json()) {
    Json j;
    j["value"] = format_ordinal(t);
    if (opt.theta_base >= 0) j["theta_base"] = theta_text;
    out << j.dump() << '\n';
  } else {
    out << format_ordinal(t) << '\n';
    if (opt.theta_base >= 0) out << theta_text << '\n';
  }
  return 0;
}

int cmd_measure(const Options& opt, std::ostream& out) {
  if (opt.unit != "alpha" && opt.unit != "beta")
    throw Unsupported("unit must be alpha or beta");
  MeasureValue v;
  if (looks_like_plurinterval(opt.expr)) {
    PlurInterval p = parse_plurinterval(opt.expr);
    v = opt.unit == "beta" ? lebesgue_measure(p) : pj_measure(p);
  } else {
    SetExprPtr e = parse_set(opt.expr);
    EuclideanValue unit =
        opt.unit == "beta" ? EuclideanValue::beta() : EuclideanValue::alpha();
    if (auto p = as_plurinterval(*e)) {
      v = opt.unit == "beta" ? lebesgue_measure(*p) : pj_measure(*p);
    } else {
      v = mu_set(*e, unit);
    }
  }
  if (opt.json()) {
    Json j;
    j["measure"] = format_measure(v);
    out << j.dump() << '\n';
  } else {
    out << format_measure(v) << '\n';
  }
  return 0;
}

EuclideanValue value_of_operand(const std::string& text) {
  if (looks_like_plurinterval(text)) return num_plurinterval(parse_plurinterval(text));
  return num(*parse_set(text));
}

int cmd_st(const Options& opt, std::ostream& out) {
  StandardPart sp;
  if (auto parts = split_ratio(opt.expr)) {
    EuclideanValue n = value_of_operand(parts->first);
    EuclideanValue d = value_of_operand(parts->second);
    auto ratio = divide(n, d);
    sp = std::holds_alternative<EuclideanValue>(ratio)
             ? standard_part(std::get<EuclideanValue>(ratio))
             : standard_part(std::get<Quotient>(ratio));
  } else {
    sp = standard_part(value_of_operand(opt.expr));
  }
  if (opt.json()) {
    Json j;
    j["value"] = format_standard_part(sp);
    out << j.dump() << '\n';
  } else {
    out << format_standard_part(sp) << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"numerositas: exact numerosities, ordinal calculus and counting measures"};
  app.require_subcommand(1);

  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("expr", opt.expr, "expression")->required();
    sub->add_option("--format", opt.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* num_cmd = app.add_subcommand("num", "numerosity of a definable set");
  add_common(num_cmd);
  CLI::App* count_cmd = app.add_subcommand("count", "brute-force count at a label level");
  add_common(count_cmd);
  count_cmd->add_option("--level", opt.level, "label level m")->required();
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "check the closed form against brute counts");
  add_common(verify_cmd);
  verify_cmd->add_option("--max-level", opt.max_level, "last level to check");
  CLI::App* ord_cmd = app.add_subcommand("ord", "ordinal expression to Cantor normal form");
  add_common(ord_cmd);
  ord_cmd->add_option("--theta-base", opt.theta_base, "also print the base-theta(J) form");
  CLI::App* measure_cmd = app.add_subcommand("measure", "numerosity measure");
  add_common(measure_cmd);
  measure_cmd->add_option("--unit", opt.unit, "measure unit: alpha or beta")
      ->check(CLI::IsMember({"alpha", "beta"}));
  CLI::App* st_cmd = app.add_subcommand("st", "standard part of num(E) or num(E1)/num(E2)");
  add_common(st_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (num_cmd->parsed()) return cmd_num(opt, out);
    if (count_cmd->parsed()) return cmd_count(opt, out);
    if (verify_cmd->parsed()) return cmd_verify(opt, out);
    if (ord_cmd->parsed()) return cmd_ord(opt, out);
    if (measure_cmd->parsed()) return cmd_measure(opt, out);
    if (st_cmd->parsed()) return cmd_st(opt, out);
    err << "error: no subcommand\n";
    return 2;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << '\n';
    return 1;
  } catch (const ComplexityExceeded& e) {
    err << "complexity exceeded: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace numerositas
