#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "lql/errors.hpp"
#include "lql/program.hpp"

namespace lql {

namespace detail {

enum class TokKind {
  Ident, Number, Label,  // Label: quoted set-of-values state
  Turnstile,             // |-
  Assign,                // :=
  EqEq, NotEq,           // == !=
  Arrow, Iff,            // -> <->
  Plus, Minus, Star, Slash, Caret,
  Bang, Question, Dollar, Bar,
  Amp, LParen, RParen, LBrace, RBrace,
  Comma, Semicolon, DotDot,
  End,
};

struct Token {
  TokKind kind;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      Token t = next();
      out.push_back(t);
      if (t.kind == TokKind::End) break;
    }
    return out;
  }

private:
  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(msg, line_, col_); }

  Token make(TokKind k, std::string text, int len) {
    Token t{k, std::move(text), line_, col_};
    pos_ += static_cast<std::size_t>(len);
    col_ += len;
    return t;
  }

  bool starts_with(const char* s) const {
    return src_.compare(pos_, std::char_traits<char>::length(s), s) == 0;
  }

  Token next() {
    if (pos_ >= src_.size()) return Token{TokKind::End, "", line_, col_};
    char c = src_[pos_];

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
        ++end;
      return make(TokKind::Ident, src_.substr(pos_, end - pos_),
                  static_cast<int>(end - pos_));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end])))
        ++end;
      return make(TokKind::Number, src_.substr(pos_, end - pos_),
                  static_cast<int>(end - pos_));
    }
    if (c == '"') {
      std::size_t end = pos_ + 1;
      while (end < src_.size() && src_[end] != '"' && src_[end] != '\n') ++end;
      if (end >= src_.size() || src_[end] != '"') fail("unterminated quoted label");
      return make(TokKind::Label, src_.substr(pos_ + 1, end - pos_ - 1),
                  static_cast<int>(end - pos_ + 1));
    }

    if (starts_with("<->")) return make(TokKind::Iff, "<->", 3);
    // '|' closing a cardinality expression |$p| never starts a turnstile,
    // even when a '-' follows immediately
    if (starts_with("|-") && bar_depth_ == 0) return make(TokKind::Turnstile, "|-", 2);
    if (starts_with(":=")) return make(TokKind::Assign, ":=", 2);
    if (starts_with("==")) return make(TokKind::EqEq, "==", 2);
    if (starts_with("!=")) return make(TokKind::NotEq, "!=", 2);
    if (starts_with("->")) return make(TokKind::Arrow, "->", 2);
    if (starts_with("..")) return make(TokKind::DotDot, "..", 2);

    switch (c) {
      case '+': return make(TokKind::Plus, "+", 1);
      case '-': return make(TokKind::Minus, "-", 1);
      case '*': return make(TokKind::Star, "*", 1);
      case '/': return make(TokKind::Slash, "/", 1);
      case '^': return make(TokKind::Caret, "^", 1);
      case '!': return make(TokKind::Bang, "!", 1);
      case '?': return make(TokKind::Question, "?", 1);
      case '$': return make(TokKind::Dollar, "$", 1);
      case '|':
        if (bar_depth_ == 1)
          bar_depth_ = 0;
        else if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '$')
          bar_depth_ = 1;
        return make(TokKind::Bar, "|", 1);
      case '&': return make(TokKind::Amp, "&", 1);
      case '(': return make(TokKind::LParen, "(", 1);
      case ')': return make(TokKind::RParen, ")", 1);
      case '{': return make(TokKind::LBrace, "{", 1);
      case '}': return make(TokKind::RBrace, "}", 1);
      case ',': return make(TokKind::Comma, ",", 1);
      case ';': return make(TokKind::Semicolon, ";", 1);
      case '=': fail("'=' is not an operator; use '==' for constraints or ':=' for updates");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  int bar_depth_ = 0;  // inside |$p| cardinality bars
};

class Parser {
public:
  explicit Parser(const std::string& src) : toks_(Lexer(src).run()) {}

  Program parse_program() {
    Program prog;
    while (!at(TokKind::End)) statement(prog);
    validate(prog);
    return prog;
  }

  // entry point for --query strings
  TExprPtr parse_single_expression() {
    TExprPtr e = texpr();
    expect(TokKind::End, "end of expression");
    return e;
  }

  FormulaPtr parse_single_formula() {
    FormulaPtr f = formula();
    expect(TokKind::End, "end of formula");
    return f;
  }

private:
  const Token& cur() const { return toks_[idx_]; }
  bool at(TokKind k) const { return cur().kind == k; }

  Token advance() { return toks_[idx_++]; }

  bool accept(TokKind k) {
    if (!at(k)) return false;
    ++idx_;
    return true;
  }

  Token expect(TokKind k, const std::string& what) {
    if (!at(k))
      throw SyntaxError("expected " + what + ", found '" + cur().text + "'",
                        cur().line, cur().column);
    return advance();
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw SyntaxError(msg, cur().line, cur().column);
  }

  void declare_name(Program& prog, const std::string& name) {
    if (prog.find_var(name) || prog.find_param(name))
      throw DuplicateDeclaration("identifier '" + name + "' is already declared");
  }

  void require_declared(const Program& prog, const std::string& name) {
    if (!prog.find_var(name) && !prog.find_param(name))
      throw UndeclaredIdentifier("identifier '" + name + "' used before declaration");
  }

  void statement(Program& prog) {
    if (at(TokKind::Ident) && cur().text == "var") {
      advance();
      var_decl(prog);
      return;
    }
    if (at(TokKind::Ident) && cur().text == "parameter") {
      advance();
      param_decl(prog);
      return;
    }
    if (accept(TokKind::Turnstile)) {
      FormulaPtr f = formula();
      for_each_atom(*f, [&](const std::string& n) { require_declared(prog, n); });
      prog.judgments.push_back(f);
      expect(TokKind::Semicolon, "';'");
      return;
    }
    if (at(TokKind::Ident) && cur().text == "query") {
      advance();
      TExprPtr q = texpr();
      check_used_names(prog, *q);
      prog.queries.push_back(q);
      expect(TokKind::Semicolon, "';'");
      return;
    }
    // update: ident := expr ;
    if (at(TokKind::Ident) && idx_ + 1 < toks_.size() &&
        toks_[idx_ + 1].kind == TokKind::Assign) {
      std::string target = advance().text;
      require_declared(prog, target);
      advance();  // :=
      TExprPtr e = texpr();
      check_used_names(prog, *e);
      prog.updates.emplace_back(target, e);
      expect(TokKind::Semicolon, "';'");
      return;
    }
    // otherwise: constraint  lhs == rhs ;
    TExprPtr e = texpr();
    if (e->kind != TExprKind::Eq)
      fail("expected a statement (declaration, '|-' axiom, constraint '==', update ':=', or query)");
    check_used_names(prog, *e);
    prog.constraints.emplace_back(e->kids[0], e->kids[1]);
    expect(TokKind::Semicolon, "';'");
  }

  template <class F>
  void for_each_atom(const Formula& f, F&& fn) {
    std::vector<std::string> atoms;
    f.collect_atoms(atoms);
    for (const auto& a : atoms) fn(a);
  }

  void check_used_names(const Program& prog, const TExpr& e) {
    if (e.kind == TExprKind::Ident || e.kind == TExprKind::Svs ||
        e.kind == TExprKind::Card || e.kind == TExprKind::Thm) {
      require_declared(prog, e.name);
      return;
    }
    for (const auto& k : e.kids) check_used_names(prog, *k);
  }

  void var_decl(Program& prog) {
    std::vector<std::string> names;
    names.push_back(expect(TokKind::Ident, "variable name").text);
    while (accept(TokKind::Comma))
      names.push_back(expect(TokKind::Ident, "variable name").text);
    VarKind kind = VarKind::Propositional;
    if (at(TokKind::Ident) && cur().text == "in") {
      advance();
      Token dom = expect(TokKind::Ident, "variable domain");
      if (dom.text == "RR")
        kind = VarKind::Real;
      else
        throw SyntaxError("unknown variable domain '" + dom.text + "' (only RR is supported)",
                          dom.line, dom.column);
    }
    expect(TokKind::Semicolon, "';'");
    for (const auto& n : names) {
      declare_name(prog, n);
      prog.vars.push_back({n, kind});
    }
  }

  StateLit state_literal() {
    if (at(TokKind::Label)) {
      // quoted set-of-values label such as "{0,1}" or "{}"
      std::string text = advance().text;
      Parser inner(text);
      TExprPtr set = inner.parse_single_expression();
      if (set->kind != TExprKind::SetLit)
        fail("quoted state label must be a set literal like \"{0,1}\"");
      return StateLit::of_set(set->set_elems);
    }
    bool neg = accept(TokKind::Minus);
    Token num = expect(TokKind::Number, "state value");
    Rational v{BigInt(num.text)};
    if (accept(TokKind::Slash)) {
      Token den = expect(TokKind::Number, "denominator");
      v = v / Rational(BigInt(den.text));
    }
    return StateLit::of_value(neg ? -v : v);
  }

  void param_decl(Program& prog) {
    std::vector<std::string> names;
    names.push_back(expect(TokKind::Ident, "parameter name").text);
    while (accept(TokKind::Comma))
      names.push_back(expect(TokKind::Ident, "parameter name").text);
    Token kw = expect(TokKind::Ident, "'in'");
    if (kw.text != "in") throw SyntaxError("expected 'in'", kw.line, kw.column);

    ParamDecl decl;
    if (at(TokKind::Ident) && (cur().text == "ZZ" || cur().text == "NN")) {
      decl.domain = cur().text == "ZZ" ? ParamDomainKind::Integers
                                       : ParamDomainKind::Naturals;
      advance();
    } else {
      expect(TokKind::LBrace, "'{'");
      if (!at(TokKind::RBrace)) {
        StateLit first = state_literal();
        if (accept(TokKind::DotDot)) {
          StateLit last = state_literal();
          if (first.is_set || last.is_set || !first.value.is_integer() ||
              !last.value.is_integer() || last.value < first.value)
            fail("ranges need integer bounds lo..hi with lo <= hi");
          for (Rational v = first.value; v <= last.value; v = v + Rational(1))
            decl.states.push_back(StateLit::of_value(v));
        } else {
          decl.states.push_back(first);
          while (accept(TokKind::Comma)) decl.states.push_back(state_literal());
        }
      }
      expect(TokKind::RBrace, "'}'");
      if (decl.states.empty()) fail("parameter domain must not be empty");
      for (std::size_t i = 0; i < decl.states.size(); ++i)
        for (std::size_t j = i + 1; j < decl.states.size(); ++j)
          if (decl.states[i] == decl.states[j])
            fail("duplicate state in parameter domain");
    }
    expect(TokKind::Semicolon, "';'");
    for (const auto& n : names) {
      declare_name(prog, n);
      ParamDecl d = decl;
      d.name = n;
      prog.params.push_back(std::move(d));
    }
  }

  // --- formula grammar: <->, -> (right), |, ^, &, ! -----------------------

  FormulaPtr formula() { return iff(); }

  FormulaPtr iff() {
    FormulaPtr lhs = impl();
    while (accept(TokKind::Iff)) lhs = Formula::binary(BinOp::Iff, lhs, impl());
    return lhs;
  }

  FormulaPtr impl() {
    FormulaPtr lhs = disj();
    if (accept(TokKind::Arrow)) return Formula::binary(BinOp::Implies, lhs, impl());
    return lhs;
  }

  FormulaPtr disj() {
    FormulaPtr lhs = exclusive();
    while (accept(TokKind::Bar)) lhs = Formula::binary(BinOp::Or, lhs, exclusive());
    return lhs;
  }

  FormulaPtr exclusive() {
    FormulaPtr lhs = conj();
    while (accept(TokKind::Caret)) lhs = Formula::binary(BinOp::Xor, lhs, conj());
    return lhs;
  }

  FormulaPtr conj() {
    FormulaPtr lhs = funit();
    while (accept(TokKind::Amp)) lhs = Formula::binary(BinOp::And, lhs, funit());
    return lhs;
  }

  FormulaPtr funit() {
    if (accept(TokKind::Bang)) return Formula::negation(funit());
    if (at(TokKind::Number)) {
      Token t = advance();
      return Formula::constant(std::stoll(t.text));
    }
    if (at(TokKind::Ident)) return Formula::atom(advance().text);
    if (accept(TokKind::LParen)) {
      FormulaPtr f = formula();
      expect(TokKind::RParen, "')'");
      return f;
    }
    fail("expected a formula");
  }

  // --- template/update/query expression grammar -----------------------------
  // ==/!= (loosest), -> (right), +/-, *, / , unary -/!, ^, primary

  TExprPtr texpr() {
    TExprPtr lhs = timpl();
    if (accept(TokKind::EqEq)) return TExpr::make_binary(TExprKind::Eq, lhs, timpl());
    if (accept(TokKind::NotEq)) return TExpr::make_binary(TExprKind::Ne, lhs, timpl());
    return lhs;
  }

  TExprPtr timpl() {
    TExprPtr lhs = tsum();
    if (accept(TokKind::Arrow)) return TExpr::make_binary(TExprKind::Implies, lhs, timpl());
    return lhs;
  }

  TExprPtr tsum() {
    TExprPtr lhs = tprod();
    while (true) {
      if (accept(TokKind::Plus))
        lhs = TExpr::make_binary(TExprKind::Add, lhs, tprod());
      else if (accept(TokKind::Minus))
        lhs = TExpr::make_binary(TExprKind::Sub, lhs, tprod());
      else
        return lhs;
    }
  }

  TExprPtr tprod() {
    TExprPtr lhs = tunary();
    while (true) {
      if (accept(TokKind::Star))
        lhs = TExpr::make_binary(TExprKind::Mul, lhs, tunary());
      else if (accept(TokKind::Slash))
        lhs = TExpr::make_binary(TExprKind::Div, lhs, tunary());
      else
        return lhs;
    }
  }

  TExprPtr tunary() {
    if (accept(TokKind::Minus)) return TExpr::make_unary(TExprKind::Neg, tunary());
    if (accept(TokKind::Bang)) return TExpr::make_unary(TExprKind::Not, tunary());
    return tpow();
  }

  TExprPtr tpow() {
    TExprPtr base = tprimary();
    while (accept(TokKind::Caret)) {
      Token e = expect(TokKind::Number, "exponent");
      base = TExpr::make_pow(base, std::stoll(e.text));
    }
    return base;
  }

  TExprPtr tprimary() {
    if (at(TokKind::Number)) return TExpr::make_number(Rational(BigInt(advance().text)));
    if (at(TokKind::Ident)) return TExpr::make_ident(advance().text);
    if (accept(TokKind::Dollar))
      return TExpr::make_ref(TExprKind::Svs, expect(TokKind::Ident, "objective name").text);
    if (accept(TokKind::Question))
      return TExpr::make_ref(TExprKind::Thm, expect(TokKind::Ident, "objective name").text);
    if (accept(TokKind::Bar)) {
      expect(TokKind::Dollar, "'$'");
      std::string name = expect(TokKind::Ident, "objective name").text;
      expect(TokKind::Bar, "closing '|'");
      return TExpr::make_ref(TExprKind::Card, name);
    }
    if (accept(TokKind::LBrace)) {
      std::vector<Rational> elems;
      if (!at(TokKind::RBrace)) {
        elems.push_back(set_element());
        while (accept(TokKind::Comma)) elems.push_back(set_element());
      }
      expect(TokKind::RBrace, "'}'");
      return TExpr::make_set(std::move(elems));
    }
    if (accept(TokKind::LParen)) {
      TExprPtr e = texpr();
      expect(TokKind::RParen, "')'");
      return e;
    }
    fail("expected an expression");
  }

  Rational set_element() {
    bool neg = accept(TokKind::Minus);
    Token num = expect(TokKind::Number, "set element");
    Rational v{BigInt(num.text)};
    if (accept(TokKind::Slash)) {
      Token den = expect(TokKind::Number, "denominator");
      v = v / Rational(BigInt(den.text));
    }
    return neg ? -v : v;
  }

  std::vector<Token> toks_;
  std::size_t idx_ = 0;
};

}  // namespace detail

// Parses a complete program: declarations, judgments, constraint templates,
// assignment templates and queries.
inline Program parse_program(const std::string& text) {
  return detail::Parser(text).parse_program();
}

inline TExprPtr parse_expression(const std::string& text) {
  return detail::Parser(text).parse_single_expression();
}

inline FormulaPtr parse_formula(const std::string& text) {
  return detail::Parser(text).parse_single_formula();
}

}  // namespace lql
