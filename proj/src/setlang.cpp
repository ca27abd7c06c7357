#include "numerositas/setlang.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "numerositas/errors.hpp"

namespace numerositas {

namespace {

SetExprPtr make(SetKind k) {
  auto e = std::make_shared<SetExpr>();
  e->kind = k;
  return e;
}

}  // namespace

SetExprPtr SetExpr::finite(std::vector<Rational> xs) {
  for (auto& x : xs) x.canonicalize();
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  auto e = std::make_shared<SetExpr>();
  e->kind = SetKind::Finite;
  e->elements = std::move(xs);
  return e;
}

SetExprPtr SetExpr::naturals() { return make(SetKind::Naturals); }
SetExprPtr SetExpr::naturals0() { return make(SetKind::Naturals0); }
SetExprPtr SetExpr::integers() { return make(SetKind::Integers); }
SetExprPtr SetExpr::rationals() { return make(SetKind::Rationals); }

SetExprPtr SetExpr::nat_prog(BigInt a, BigInt d) {
  if (a < 0) throw Unsupported("natprog anchor must be >= 0");
  if (d < 1) throw Unsupported("progression step must be >= 1");
  auto e = std::make_shared<SetExpr>();
  e->kind = SetKind::NatProg;
  e->a = std::move(a);
  e->d = std::move(d);
  return e;
}

SetExprPtr SetExpr::int_prog(BigInt a, BigInt d) {
  if (d < 1) throw Unsupported("progression step must be >= 1");
  auto e = std::make_shared<SetExpr>();
  e->kind = SetKind::IntProg;
  e->a = std::move(a);
  e->d = std::move(d);
  return e;
}

SetExprPtr SetExpr::powers(BigInt k) {
  if (k < 1) throw Unsupported("powers exponent must be >= 1");
  auto e = std::make_shared<SetExpr>();
  e->kind = SetKind::Powers;
  e->d = std::move(k);
  return e;
}

static SetExprPtr interval(SetKind kind, Rational lo, Rational hi, bool lc, bool rc) {
  lo.canonicalize();
  hi.canonicalize();
  if (lo > hi || (lo == hi && !(lc && rc)))
    throw Unsupported("interval endpoints must satisfy lo < hi (or a closed singleton)");
  auto e = std::make_shared<SetExpr>();
  e->kind = kind;
  e->lo = std::move(lo);
  e->hi = std::move(hi);
  e->lo_closed = lc;
  e->hi_closed = rc;
  return e;
}

SetExprPtr SetExpr::q_interval(Rational lo, Rational hi, bool lc, bool rc) {
  return interval(SetKind::QInterval, std::move(lo), std::move(hi), lc, rc);
}
SetExprPtr SetExpr::r_interval(Rational lo, Rational hi, bool lc, bool rc) {
  return interval(SetKind::RInterval, std::move(lo), std::move(hi), lc, rc);
}

static SetExprPtr binary(SetKind k, SetExprPtr l, SetExprPtr r) {
  auto e = std::make_shared<SetExpr>();
  e->kind = k;
  e->left = std::move(l);
  e->right = std::move(r);
  return e;
}

SetExprPtr SetExpr::set_union(SetExprPtr e, SetExprPtr f) { return binary(SetKind::Union, e, f); }
SetExprPtr SetExpr::intersect(SetExprPtr e, SetExprPtr f) { return binary(SetKind::Intersect, e, f); }
SetExprPtr SetExpr::diff(SetExprPtr e, SetExprPtr f) { return binary(SetKind::Diff, e, f); }
SetExprPtr SetExpr::product(SetExprPtr e, SetExprPtr f) { return binary(SetKind::Product, e, f); }

SetExprPtr SetExpr::pfin(SetExprPtr e) {
  auto r = std::make_shared<SetExpr>();
  r->kind = SetKind::PFin;
  r->left = std::move(e);
  return r;
}

SetExprPtr SetExpr::ffin(SetExprPtr x, SetExprPtr e) {
  if (e->kind == SetKind::Finite && e->elements.empty())
    throw EmptyTarget("ffin target set is empty");
  return binary(SetKind::FFin, std::move(x), std::move(e));
}

bool SetExpr::equals(const SetExpr& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case SetKind::Finite:
      return elements == o.elements;
    case SetKind::Naturals:
    case SetKind::Naturals0:
    case SetKind::Integers:
    case SetKind::Rationals:
      return true;
    case SetKind::NatProg:
    case SetKind::IntProg:
      return a == o.a && d == o.d;
    case SetKind::Powers:
      return d == o.d;
    case SetKind::QInterval:
    case SetKind::RInterval:
      return lo == o.lo && hi == o.hi && lo_closed == o.lo_closed && hi_closed == o.hi_closed;
    case SetKind::PFin:
      return left->equals(*o.left);
    default:
      return left->equals(*o.left) && right->equals(*o.right);
  }
}

OrdExprPtr OrdExpr::omega() {
  auto e = std::make_shared<OrdExpr>();
  e->kind = OrdKind::Omega;
  return e;
}
OrdExprPtr OrdExpr::nat_const(BigInt k) {
  if (k < 0) throw Unsupported("ordinal naturals are >= 0");
  auto e = std::make_shared<OrdExpr>();
  e->kind = OrdKind::Nat;
  e->nat = std::move(k);
  return e;
}
OrdExprPtr OrdExpr::theta(BigInt j) {
  if (j < 0) throw Unsupported("theta index must be >= 0");
  auto e = std::make_shared<OrdExpr>();
  e->kind = OrdKind::Theta;
  e->nat = std::move(j);
  return e;
}
OrdExprPtr OrdExpr::binary(OrdKind op, OrdExprPtr l, OrdExprPtr r) {
  auto e = std::make_shared<OrdExpr>();
  e->kind = op;
  e->left = std::move(l);
  e->right = std::move(r);
  return e;
}

bool OrdExpr::equals(const OrdExpr& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case OrdKind::Omega:
      return true;
    case OrdKind::Nat:
    case OrdKind::Theta:
      return nat == o.nat;
    default:
      return left->equals(*o.left) && right->equals(*o.right);
  }
}

// ---------------------------------------------------------------------------
// Lexer shared by both grammars.

namespace {

enum class Tok {
  Ident,     // keyword or name
  Int,       // digit run (sign handled in the grammar)
  LParen, RParen, LBracket, RBracket, LBrace, RBrace,
  Comma, Slash, Minus, Plus, Star, Caret,
  NatPlus,   // <+>
  NatStar,   // <*>
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;  // 1-based position of first character
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      std::size_t pos = i_ + 1;
      if (i_ >= s_.size()) {
        out.push_back({Tok::End, "", pos});
        return out;
      }
      char c = s_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i_;
        while (j < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
          ++j;
        out.push_back({Tok::Ident, s_.substr(i_, j - i_), pos});
        i_ = j;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i_;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        out.push_back({Tok::Int, s_.substr(i_, j - i_), pos});
        i_ = j;
        continue;
      }
      if (c == '<') {
        if (i_ + 2 < s_.size() && s_[i_ + 2] == '>' && (s_[i_ + 1] == '+' || s_[i_ + 1] == '*')) {
          out.push_back({s_[i_ + 1] == '+' ? Tok::NatPlus : Tok::NatStar,
                         s_.substr(i_, 3), pos});
          i_ += 3;
          continue;
        }
        throw SyntaxError(pos, {"<+>", "<*>"}, "stray '<' at position " + std::to_string(pos));
      }
      Tok k;
      switch (c) {
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '[': k = Tok::LBracket; break;
        case ']': k = Tok::RBracket; break;
        case '{': k = Tok::LBrace; break;
        case '}': k = Tok::RBrace; break;
        case ',': k = Tok::Comma; break;
        case '/': k = Tok::Slash; break;
        case '-': k = Tok::Minus; break;
        case '+': k = Tok::Plus; break;
        case '*': k = Tok::Star; break;
        case '^': k = Tok::Caret; break;
        default:
          throw SyntaxError(pos, {},
                            std::string("unexpected character '") + c + "' at position " +
                                std::to_string(pos));
      }
      out.push_back({k, std::string(1, c), pos});
      ++i_;
    }
  }

 private:
  void skip_space() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  const std::string& s_;
  std::size_t i_ = 0;
};

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_ == toks_.size() - 1 ? i_ : i_++]; }
  bool at_end() const { return toks_[i_].kind == Tok::End; }

  Token expect(Tok k, const std::string& spelling) {
    if (peek().kind != k)
      throw SyntaxError(peek().pos, {spelling},
                        "expected " + spelling + " at position " + std::to_string(peek().pos));
    return next();
  }

  void expect_end() {
    if (!at_end())
      throw SyntaxError(peek().pos, {"end of input"},
                        "trailing input at position " + std::to_string(peek().pos));
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

BigInt parse_int(TokenStream& ts) {
  bool neg = false;
  if (ts.peek().kind == Tok::Minus) {
    ts.next();
    neg = true;
  }
  Token t = ts.expect(Tok::Int, "integer");
  BigInt v(t.text);
  return neg ? BigInt(-v) : v;
}

Rational parse_rat(TokenStream& ts) {
  BigInt num = parse_int(ts);
  if (ts.peek().kind == Tok::Slash) {
    ts.next();
    Token t = ts.expect(Tok::Int, "positive integer");
    BigInt den(t.text);
    if (den == 0)
      throw SyntaxError(t.pos, {"positive integer"},
                        "zero denominator at position " + std::to_string(t.pos));
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  return Rational(num);
}

// ---------------------------------------------------------------------------
// Set grammar.

class SetParser {
 public:
  explicit SetParser(TokenStream& ts) : ts_(ts) {}

  SetExprPtr parse() {
    auto e = expr();
    ts_.expect_end();
    return e;
  }

 private:
  TokenStream& ts_;

  SetExprPtr expr() {
    const Token& t = ts_.peek();
    switch (t.kind) {
      case Tok::Ident: return keyword();
      case Tok::LBrace: return finite();
      default:
        throw SyntaxError(t.pos, {"N", "N0", "Z", "Q", "{", "mult", "natprog",
                                  "intprog", "powers", "qint", "rint", "union", "inter",
                                  "diff", "prod", "pfin", "ffin"},
                          "expected a set expression at position " + std::to_string(t.pos));
    }
  }

  SetExprPtr keyword() {
    Token t = ts_.next();
    const std::string& w = t.text;
    if (w == "N") return SetExpr::naturals();
    if (w == "N0") return SetExpr::naturals0();
    if (w == "Z") return SetExpr::integers();
    if (w == "Q") return SetExpr::rationals();
    if (w == "mult") {
      args_open();
      BigInt d = parse_int(ts_);
      args_close();
      if (d < 1)
        throw SyntaxError(t.pos, {}, "mult argument must be >= 1 at position " +
                                         std::to_string(t.pos));
      return SetExpr::nat_prog(d, d);  // positive multiples {d, 2d, ...}
    }
    if (w == "natprog") {
      args_open();
      BigInt a = parse_int(ts_);
      comma();
      BigInt d = parse_int(ts_);
      args_close();
      check_args(t, a >= 0 && d >= 1, "natprog needs a >= 0 and d >= 1");
      return SetExpr::nat_prog(a, d);
    }
    if (w == "intprog") {
      args_open();
      BigInt a = parse_int(ts_);
      comma();
      BigInt d = parse_int(ts_);
      args_close();
      check_args(t, d >= 1, "intprog needs d >= 1");
      return SetExpr::int_prog(a, d);
    }
    if (w == "powers") {
      args_open();
      BigInt k = parse_int(ts_);
      args_close();
      check_args(t, k >= 1, "powers needs k >= 1");
      return SetExpr::powers(k);
    }
    if (w == "qint" || w == "rint") return interval(w == "qint");
    if (w == "union" || w == "inter" || w == "diff" || w == "prod" || w == "ffin") {
      args_open();
      auto l = expr();
      comma();
      auto r = expr();
      args_close();
      if (w == "union") return SetExpr::set_union(l, r);
      if (w == "inter") return SetExpr::intersect(l, r);
      if (w == "diff") return SetExpr::diff(l, r);
      if (w == "prod") return SetExpr::product(l, r);
      try {
        return SetExpr::ffin(l, r);
      } catch (const EmptyTarget&) {
        throw SyntaxError(t.pos, {}, "ffin target is empty at position " +
                                         std::to_string(t.pos));
      }
    }
    if (w == "pfin") {
      args_open();
      auto l = expr();
      args_close();
      return SetExpr::pfin(l);
    }
    throw SyntaxError(t.pos, {"N", "N0", "Z", "Q", "mult", "natprog", "intprog",
                              "powers", "qint", "rint", "union", "inter", "diff",
                              "prod", "pfin", "ffin"},
                      "unknown set constructor '" + w + "' at position " + std::to_string(t.pos));
  }

  SetExprPtr finite() {
    ts_.expect(Tok::LBrace, "{");
    std::vector<Rational> xs;
    if (ts_.peek().kind != Tok::RBrace) {
      xs.push_back(parse_rat(ts_));
      while (ts_.peek().kind == Tok::Comma) {
        ts_.next();
        xs.push_back(parse_rat(ts_));
      }
    }
    ts_.expect(Tok::RBrace, "}");
    return SetExpr::finite(std::move(xs));
  }

  SetExprPtr interval(bool rational_world) {
    bool lc, rc;
    const Token& open = ts_.peek();
    if (open.kind == Tok::LBracket) lc = true;
    else if (open.kind == Tok::LParen) lc = false;
    else
      throw SyntaxError(open.pos, {"[", "("},
                        "expected interval bracket at position " + std::to_string(open.pos));
    ts_.next();
    Rational lo = parse_rat(ts_);
    comma();
    Rational hi = parse_rat(ts_);
    const Token& close = ts_.peek();
    if (close.kind == Tok::RBracket) rc = true;
    else if (close.kind == Tok::RParen) rc = false;
    else
      throw SyntaxError(close.pos, {"]", ")"},
                        "expected interval bracket at position " + std::to_string(close.pos));
    ts_.next();
    try {
      return rational_world ? SetExpr::q_interval(lo, hi, lc, rc)
                            : SetExpr::r_interval(lo, hi, lc, rc);
    } catch (const Unsupported& u) {
      throw SyntaxError(close.pos, {}, std::string(u.what()) + " at position " +
                                           std::to_string(close.pos));
    }
  }

  void args_open() { ts_.expect(Tok::LParen, "("); }
  void args_close() { ts_.expect(Tok::RParen, ")"); }
  void comma() { ts_.expect(Tok::Comma, ","); }
  void check_args(const Token& t, bool ok, const std::string& msg) {
    if (!ok) throw SyntaxError(t.pos, {}, msg + " at position " + std::to_string(t.pos));
  }
};

// ---------------------------------------------------------------------------
// Ordinal grammar: sum over (<+> | +), product over (<*> | *), right-assoc ^.

class OrdParser {
 public:
  explicit OrdParser(TokenStream& ts) : ts_(ts) {}

  OrdExprPtr parse() {
    auto e = sum();
    ts_.expect_end();
    return e;
  }

 private:
  TokenStream& ts_;

  OrdExprPtr sum() {
    auto l = prod();
    while (true) {
      Tok k = ts_.peek().kind;
      if (k == Tok::Plus || k == Tok::NatPlus) {
        ts_.next();
        l = OrdExpr::binary(k == Tok::Plus ? OrdKind::OrdAdd : OrdKind::NatAdd, l, prod());
      } else {
        return l;
      }
    }
  }

  OrdExprPtr prod() {
    auto l = power();
    while (true) {
      Tok k = ts_.peek().kind;
      if (k == Tok::Star || k == Tok::NatStar) {
        ts_.next();
        l = OrdExpr::binary(k == Tok::Star ? OrdKind::OrdMul : OrdKind::NatMul, l, power());
      } else {
        return l;
      }
    }
  }

  OrdExprPtr power() {
    auto base = atom();
    if (ts_.peek().kind == Tok::Caret) {
      ts_.next();
      return OrdExpr::binary(OrdKind::OrdPow, base, power());
    }
    return base;
  }

  OrdExprPtr atom() {
    const Token& t = ts_.peek();
    if (t.kind == Tok::Ident && t.text == "w") {
      ts_.next();
      return OrdExpr::omega();
    }
    if (t.kind == Tok::Ident && t.text == "theta") {
      ts_.next();
      ts_.expect(Tok::LParen, "(");
      Token n = ts_.expect(Tok::Int, "natural number");
      ts_.expect(Tok::RParen, ")");
      return OrdExpr::theta(BigInt(n.text));
    }
    if (t.kind == Tok::Int) {
      ts_.next();
      return OrdExpr::nat_const(BigInt(t.text));
    }
    if (t.kind == Tok::LParen) {
      ts_.next();
      auto e = sum();
      ts_.expect(Tok::RParen, ")");
      return e;
    }
    throw SyntaxError(t.pos, {"w", "theta", "natural number", "("},
                      "expected an ordinal atom at position " + std::to_string(t.pos));
  }
};

}  // namespace

SetExprPtr parse_set(const std::string& text) {
  TokenStream ts(Lexer(text).run());
  return SetParser(ts).parse();
}

OrdExprPtr parse_ordinal(const std::string& text) {
  TokenStream ts(Lexer(text).run());
  return OrdParser(ts).parse();
}

Rational parse_rational_text(const std::string& text) {
  TokenStream ts(Lexer(text).run());
  Rational q = parse_rat(ts);
  ts.expect_end();
  return q;
}

std::string render_rational(const Rational& q) { return to_string(q); }

// ---------------------------------------------------------------------------
// Rendering. parse(render(e)) is structurally e.

std::string render(const SetExpr& e) {
  std::ostringstream os;
  switch (e.kind) {
    case SetKind::Finite: {
      os << '{';
      for (std::size_t i = 0; i < e.elements.size(); ++i) {
        if (i) os << ',';
        os << to_string(e.elements[i]);
      }
      os << '}';
      break;
    }
    case SetKind::Naturals: os << 'N'; break;
    case SetKind::Naturals0: os << "N0"; break;
    case SetKind::Integers: os << 'Z'; break;
    case SetKind::Rationals: os << 'Q'; break;
    case SetKind::NatProg:
      if (e.a == e.d) os << "mult(" << e.d << ')';
      else os << "natprog(" << e.a << ',' << e.d << ')';
      break;
    case SetKind::IntProg: os << "intprog(" << e.a << ',' << e.d << ')'; break;
    case SetKind::Powers: os << "powers(" << e.d << ')'; break;
    case SetKind::QInterval:
    case SetKind::RInterval:
      os << (e.kind == SetKind::QInterval ? "qint" : "rint")
         << (e.lo_closed ? '[' : '(') << to_string(e.lo) << ',' << to_string(e.hi)
         << (e.hi_closed ? ']' : ')');
      break;
    case SetKind::Union: os << "union(" << render(*e.left) << ',' << render(*e.right) << ')'; break;
    case SetKind::Intersect: os << "inter(" << render(*e.left) << ',' << render(*e.right) << ')'; break;
    case SetKind::Diff: os << "diff(" << render(*e.left) << ',' << render(*e.right) << ')'; break;
    case SetKind::Product: os << "prod(" << render(*e.left) << ',' << render(*e.right) << ')'; break;
    case SetKind::PFin: os << "pfin(" << render(*e.left) << ')'; break;
    case SetKind::FFin: os << "ffin(" << render(*e.left) << ',' << render(*e.right) << ')'; break;
  }
  return os.str();
}

namespace {

int ord_precedence(OrdKind k) {
  switch (k) {
    case OrdKind::OrdAdd:
    case OrdKind::NatAdd: return 1;
    case OrdKind::OrdMul:
    case OrdKind::NatMul: return 2;
    case OrdKind::OrdPow: return 3;
    default: return 4;  // atoms
  }
}

void render_ord(const OrdExpr& e, std::ostringstream& os, int parent_prec) {
  int prec = ord_precedence(e.kind);
  switch (e.kind) {
    case OrdKind::Omega: os << 'w'; return;
    case OrdKind::Nat: os << e.nat; return;
    case OrdKind::Theta: os << "theta(" << e.nat << ')'; return;
    default: break;
  }
  bool paren = prec < parent_prec ||
               // ^ is right-associative; parenthesize a left-nested power.
               (e.kind == OrdKind::OrdPow && parent_prec == 3);
  if (paren) os << '(';
  const char* op = e.kind == OrdKind::OrdAdd ? " + "
                 : e.kind == OrdKind::NatAdd ? " <+> "
                 : e.kind == OrdKind::OrdMul ? " * "
                 : e.kind == OrdKind::NatMul ? " <*> "
                                             : "^";
  if (e.kind == OrdKind::OrdPow) {
    render_ord(*e.left, os, prec + 1);  // base binds tighter
    os << op;
    render_ord(*e.right, os, prec);
  } else {
    render_ord(*e.left, os, prec);
    os << op;
    render_ord(*e.right, os, prec + 1);  // left-assoc chain
  }
  if (paren) os << ')';
}

}  // namespace

std::string render(const OrdExpr& e) {
  std::ostringstream os;
  render_ord(e, os, 0);
  return os.str();
}

}  // namespace numerositas
