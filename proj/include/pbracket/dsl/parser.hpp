#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbracket/classical.hpp"
#include "pbracket/element.hpp"
#include "pbracket/errors.hpp"
#include "pbracket/pmech.hpp"

namespace pbracket::dsl {

/// Grammar (whitespace insignificant):
///   expr   := term (('+' | '-') term)*
///   term   := factor ('*' factor)*
///   factor := '-' factor | atom ('^' uint)?
///   atom   := number | 'i' | csym | delta | '(' expr ')'
///   number := digits ('/' digits | '.' digits)?
///   csym   := ('q' | 'p') digit digit?
///   delta  := 'delta' '[' var (',' var)* ']'
///   var    := 's' digit | ('x' | 'y') digit digit?
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct DeltaVar {
  char kind;  // 's', 'x', 'y'
  int sector;
  int dof;  // 0 for s
  friend bool operator==(const DeltaVar&, const DeltaVar&) = default;
};

struct Expr {
  enum class Kind { kNumber, kImag, kSymbol, kDelta, kAdd, kSub, kMul, kPow, kNeg };

  Kind kind;
  SourcePos pos;
  Rational number;            // kNumber
  char symbol = 0;            // kSymbol: 'q' or 'p'
  int sector = 0;             // kSymbol
  int dof = 0;                // kSymbol
  std::vector<DeltaVar> vars;  // kDelta
  unsigned exponent = 0;      // kPow
  ExprPtr lhs;                // operand of kNeg and kPow, left of binaries
  ExprPtr rhs;

  bool uses_delta() const {
    if (kind == Kind::kDelta) return true;
    return (lhs && lhs->uses_delta()) || (rhs && rhs->uses_delta());
  }
  /// First classical symbol in source order, if any.
  const Expr* first_symbol() const {
    if (kind == Kind::kSymbol) return this;
    if (lhs)
      if (const Expr* s = lhs->first_symbol()) return s;
    if (rhs) return rhs->first_symbol();
    return nullptr;
  }
  const Expr* first_delta() const {
    if (kind == Kind::kDelta) return this;
    if (lhs)
      if (const Expr* s = lhs->first_delta()) return s;
    if (rhs) return rhs->first_delta();
    return nullptr;
  }
};

/// Structural equality; source positions are ignored.
inline bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::kNumber: return a.number == b.number;
    case Expr::Kind::kImag: return true;
    case Expr::Kind::kSymbol: return a.symbol == b.symbol && a.sector == b.sector && a.dof == b.dof;
    case Expr::Kind::kDelta: return a.vars == b.vars;
    case Expr::Kind::kPow: return a.exponent == b.exponent && equal(*a.lhs, *b.lhs);
    case Expr::Kind::kNeg: return equal(*a.lhs, *b.lhs);
    default: return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
  }
}

namespace detail {

struct Token {
  enum class Kind { kNumber, kIdent, kPunct, kEnd };
  Kind kind;
  std::string text;
  Rational value;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      SourcePos start = pos_;
      if (at_end()) {
        out.push_back({Token::Kind::kEnd, "", 0, start});
        return out;
      }
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        out.push_back(number(start));
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string text;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) text += get();
        out.push_back({Token::Kind::kIdent, text, 0, start});
      } else if (std::string_view("+-*^()[],").find(c) != std::string_view::npos) {
        get();
        out.push_back({Token::Kind::kPunct, std::string(1, c), 0, start});
      } else {
        throw SyntaxError(std::string("unexpected character '") + c + "'", start.line, start.column);
      }
    }
  }

 private:
  bool at_end() const { return i_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const { return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0'; }
  char get() {
    char c = src_[i_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    return c;
  }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) get();
  }
  std::string digits() {
    std::string d;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) d += get();
    return d;
  }

  Token number(SourcePos start) {
    std::string whole = digits();
    Rational value{Integer(whole)};
    std::string text = whole;
    if (peek() == '/' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      get();
      std::string den = digits();
      if (Integer(den) == 0) throw SyntaxError("zero denominator", start.line, start.column);
      value = Rational(Integer(whole), Integer(den));
      text += "/" + den;
    } else if (peek() == '/') {
      get();
      throw SyntaxError("expected denominator after '/'", pos_.line, pos_.column);
    } else if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      get();
      std::string frac = digits();
      Integer scale = 1;
      for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
      value = Rational(Integer(whole) * scale + Integer(frac), scale);
      text += "." + frac;
    }
    return {Token::Kind::kNumber, text, value, start};
  }

  std::string_view src_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, int dof) : tokens_(std::move(tokens)), dof_(dof) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    if (cur().kind != Token::Kind::kEnd) fail("unexpected '" + cur().text + "'");
    return e;
  }

 private:
  const Token& cur() const { return tokens_[k_]; }
  bool is_punct(char c) const { return cur().kind == Token::Kind::kPunct && cur().text[0] == c; }
  [[noreturn]] void fail(const std::string& what) const {
    if (cur().kind == Token::Kind::kEnd) throw SyntaxError(what + " (end of input)", cur().pos.line, cur().pos.column);
    throw SyntaxError(what, cur().pos.line, cur().pos.column);
  }
  void expect(char c) {
    if (!is_punct(c)) fail(std::string("expected '") + c + "'");
    ++k_;
  }

  static ExprPtr binary(Expr::Kind kind, SourcePos pos, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<Expr>(Expr{kind, pos});
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
  }

  ExprPtr expr() {
    ExprPtr left = term();
    while (is_punct('+') || is_punct('-')) {
      SourcePos pos = cur().pos;
      Expr::Kind kind = is_punct('+') ? Expr::Kind::kAdd : Expr::Kind::kSub;
      ++k_;
      left = binary(kind, pos, left, term());
    }
    return left;
  }

  ExprPtr term() {
    ExprPtr left = factor();
    while (is_punct('*')) {
      SourcePos pos = cur().pos;
      ++k_;
      left = binary(Expr::Kind::kMul, pos, left, factor());
    }
    return left;
  }

  ExprPtr factor() {
    if (is_punct('-')) {
      SourcePos pos = cur().pos;
      ++k_;
      auto e = std::make_shared<Expr>(Expr{Expr::Kind::kNeg, pos});
      e->lhs = factor();
      return e;
    }
    ExprPtr base = atom();
    if (!is_punct('^')) return base;
    SourcePos pos = cur().pos;
    ++k_;
    if (cur().kind != Token::Kind::kNumber || cur().text.find_first_of("/.") != std::string::npos)
      fail("expected a nonnegative integer exponent after '^'");
    if (cur().value > 64) fail("exponent too large");
    auto e = std::make_shared<Expr>(Expr{Expr::Kind::kPow, pos});
    e->exponent = static_cast<unsigned>(numerator(cur().value));
    e->lhs = base;
    ++k_;
    return e;
  }

  ExprPtr atom() {
    const Token& t = cur();
    if (t.kind == Token::Kind::kNumber) {
      auto e = std::make_shared<Expr>(Expr{Expr::Kind::kNumber, t.pos});
      e->number = t.value;
      ++k_;
      return e;
    }
    if (is_punct('(')) {
      ++k_;
      ExprPtr inner = expr();
      expect(')');
      return inner;
    }
    if (t.kind == Token::Kind::kIdent) {
      if (t.text == "i") {
        ++k_;
        return std::make_shared<Expr>(Expr{Expr::Kind::kImag, t.pos});
      }
      if (t.text == "delta") return delta();
      if ((t.text[0] == 'q' || t.text[0] == 'p') && t.text.size() >= 2 && t.text.size() <= 3 &&
          all_digits(t.text.substr(1))) {
        auto e = std::make_shared<Expr>(Expr{Expr::Kind::kSymbol, t.pos});
        e->symbol = t.text[0];
        e->sector = t.text[1] - '0';
        e->dof = t.text.size() == 3 ? t.text[2] - '0' : 1;
        check_indices(e->sector, e->dof, t);
        ++k_;
        return e;
      }
      throw UnknownSymbol("unknown symbol '" + t.text + "'", t.pos.line, t.pos.column);
    }
    fail(t.kind == Token::Kind::kEnd ? "expected an operand" : "unexpected '" + t.text + "'");
  }

  ExprPtr delta() {
    auto e = std::make_shared<Expr>(Expr{Expr::Kind::kDelta, cur().pos});
    ++k_;
    expect('[');
    while (true) {
      const Token& t = cur();
      if (t.kind != Token::Kind::kIdent) fail("expected a delta variable");
      e->vars.push_back(delta_var(t));
      ++k_;
      if (is_punct(']')) break;
      expect(',');
    }
    ++k_;
    return e;
  }

  DeltaVar delta_var(const Token& t) const {
    const std::string& s = t.text;
    char kind = s[0];
    bool ok = s.size() >= 2 && all_digits(s.substr(1)) &&
              ((kind == 's' && s.size() == 2) || ((kind == 'x' || kind == 'y') && s.size() <= 3));
    if (!ok) throw UnknownSymbol("unknown delta variable '" + s + "'", t.pos.line, t.pos.column);
    int sector = s[1] - '0';
    int dof = kind == 's' ? 0 : (s.size() == 3 ? s[2] - '0' : 1);
    check_indices(sector, kind == 's' ? 1 : dof, t);
    return {kind, sector, dof};
  }

  void check_indices(int sector, int dof, const Token& t) const {
    if (sector < 1 || sector > 2)
      throw IndexOutOfRange("sector index out of range in '" + t.text + "'", t.pos.line, t.pos.column);
    if (dof < 1 || dof > dof_)
      throw IndexOutOfRange("degree-of-freedom index out of range in '" + t.text + "'", t.pos.line, t.pos.column);
  }

  static bool all_digits(const std::string& s) {
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return !s.empty();
  }

  std::vector<Token> tokens_;
  std::size_t k_ = 0;
  int dof_;
};

}  // namespace detail

/// Parses DSL source; indices are checked against `dof` degrees of freedom per sector.
inline ExprPtr parse(std::string_view src, int dof = 1) {
  return detail::Parser(detail::Lexer(src).run(), dof).parse_all();
}

namespace detail {

inline int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kAdd:
    case Expr::Kind::kSub: return 1;
    case Expr::Kind::kMul: return 2;
    case Expr::Kind::kNeg: return 3;
    case Expr::Kind::kPow: return 4;
    default: return 5;
  }
}

}  // namespace detail

/// Canonical text; parse(print(e)) is structurally equal to e.
inline std::string print(const Expr& e) {
  using K = Expr::Kind;
  auto wrap = [](const Expr& sub, bool paren) { return paren ? "(" + print(sub) + ")" : print(sub); };
  switch (e.kind) {
    case K::kNumber: return to_string(e.number);
    case K::kImag: return "i";
    case K::kSymbol: {
      std::string s = std::string(1, e.symbol) + std::to_string(e.sector);
      if (e.dof != 1) s += std::to_string(e.dof);
      return s;
    }
    case K::kDelta: {
      std::string s = "delta[";
      for (std::size_t k = 0; k < e.vars.size(); ++k) {
        if (k) s += ",";
        s += std::string(1, e.vars[k].kind) + std::to_string(e.vars[k].sector);
        if (e.vars[k].kind != 's' && e.vars[k].dof != 1) s += std::to_string(e.vars[k].dof);
      }
      return s + "]";
    }
    case K::kNeg: return "-" + wrap(*e.lhs, detail::precedence(*e.lhs) < 3);
    case K::kPow: {
      // Rational literals print with '/', which would otherwise read as part of the base.
      bool paren = detail::precedence(*e.lhs) < 5 ||
                   (e.lhs->kind == K::kNumber && denominator(e.lhs->number) != 1);
      return wrap(*e.lhs, paren) + "^" + std::to_string(e.exponent);
    }
    default: {
      int p = detail::precedence(e);
      std::string op = e.kind == K::kAdd ? " + " : e.kind == K::kSub ? " - " : "*";
      return wrap(*e.lhs, detail::precedence(*e.lhs) < p) + op + wrap(*e.rhs, detail::precedence(*e.rhs) <= p);
    }
  }
}

/// Evaluates a purely classical expression.
inline ClassicalPoly eval_classical(const Expr& e, int dof) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::kNumber: return ClassicalPoly::constant(dof, Complex(e.number));
    case K::kImag: return ClassicalPoly::constant(dof, Complex::i());
    case K::kSymbol:
      return e.symbol == 'q' ? ClassicalPoly::q(dof, e.sector, e.dof) : ClassicalPoly::p(dof, e.sector, e.dof);
    case K::kDelta: throw SyntaxError("delta term in a classical expression", e.pos.line, e.pos.column);
    case K::kNeg: return -eval_classical(*e.lhs, dof);
    case K::kPow: return eval_classical(*e.lhs, dof).pow(e.exponent);
    case K::kAdd: return eval_classical(*e.lhs, dof) + eval_classical(*e.rhs, dof);
    case K::kSub: return eval_classical(*e.lhs, dof) - eval_classical(*e.rhs, dof);
    case K::kMul: return eval_classical(*e.lhs, dof) * eval_classical(*e.rhs, dof);
  }
  throw Error("unreachable");
}

/// Evaluates a delta expression in the group algebra (products in written order).
inline Element eval_delta(const Expr& e, const GroupSignature& sig) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::kNumber: return Element::constant(sig, Coefficient(Complex(e.number)));
    case K::kImag: return Element::constant(sig, Coefficient(Complex::i()));
    case K::kSymbol: throw SyntaxError("classical symbol in a delta expression", e.pos.line, e.pos.column);
    case K::kDelta: {
      DeltaIndex alpha(sig.generator_count());
      for (const auto& v : e.vars) {
        std::size_t g = v.kind == 's' ? sig.s_index(v.sector)
                        : v.kind == 'x' ? sig.x_index(v.sector, v.dof)
                                        : sig.y_index(v.sector, v.dof);
        alpha[g] += 1;
      }
      return delta_to_element(sig, alpha);
    }
    case K::kNeg: return -eval_delta(*e.lhs, sig);
    case K::kPow: {
      Element base = eval_delta(*e.lhs, sig);
      Element out = Element::one(sig);
      for (unsigned k = 0; k < e.exponent; ++k) out = out * base;
      return out;
    }
    case K::kAdd: return eval_delta(*e.lhs, sig) + eval_delta(*e.rhs, sig);
    case K::kSub: return eval_delta(*e.lhs, sig) - eval_delta(*e.rhs, sig);
    case K::kMul: return eval_delta(*e.lhs, sig) * eval_delta(*e.rhs, sig);
  }
  throw Error("unreachable");
}

/// An element from either kind of expression: delta expressions directly,
/// classical ones through the named mechanisation rule. Mixing is rejected.
inline Element eval_element(const Expr& e, const GroupSignature& sig, std::string_view rule = "weyl",
                            const MechanisationRegistry& registry = builtin_rules()) {
  if (e.uses_delta()) {
    if (const Expr* s = e.first_symbol())
      throw SyntaxError("cannot mix classical symbols and delta terms", s->pos.line, s->pos.column);
    return eval_delta(e, sig);
  }
  return mechanise_plugin(eval_classical(e, sig.dof()), rule, sig, registry);
}

}  // namespace pbracket::dsl
