#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lql/errors.hpp"
#include "lql/field.hpp"
#include "lql/logic.hpp"

namespace lql {

// --- template / update / query expressions ----------------------------------
//
// The expression language shared by raw constraints (`lhs == rhs;`),
// assignment templates (`p := expr;`) and queries.  Constraints and queries
// may use parameters, comparisons and arithmetic; update expressions may
// additionally reference solution-value sets:
//   $p    solution-value set of p
//   |$p|  its cardinality
//   ?p    1 iff $p = {1}

enum class TExprKind {
  Number,   // rational literal
  Ident,    // variable or parameter
  SetLit,   // {v1, v2, ...}
  Add, Sub, Mul, Div,
  Neg, Not,
  Pow,      // kid ^ exponent
  Eq, Ne,   // comparisons, yield 1/0
  Implies,  // material implication on 0/1 operands
  Svs,      // $name
  Card,     // |$name|
  Thm,      // ?name
};

struct TExpr;
using TExprPtr = std::shared_ptr<const TExpr>;

struct TExpr {
  TExprKind kind;
  Rational number;                 // Number
  std::string name;                // Ident, Svs, Card, Thm
  std::vector<TExprPtr> kids;      // operands
  std::vector<Rational> set_elems; // SetLit, sorted ascending
  std::int64_t exponent = 0;       // Pow

  static TExprPtr make_number(Rational v) {
    TExpr e;
    e.kind = TExprKind::Number;
    e.number = std::move(v);
    return std::make_shared<const TExpr>(std::move(e));
  }
  static TExprPtr make_ident(std::string n) {
    TExpr e;
    e.kind = TExprKind::Ident;
    e.name = std::move(n);
    return std::make_shared<const TExpr>(std::move(e));
  }
  static TExprPtr make_set(std::vector<Rational> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    TExpr e;
    e.kind = TExprKind::SetLit;
    e.set_elems = std::move(elems);
    return std::make_shared<const TExpr>(std::move(e));
  }
  static TExprPtr make_unary(TExprKind k, TExprPtr kid) {
    TExpr e;
    e.kind = k;
    e.kids = {std::move(kid)};
    return std::make_shared<const TExpr>(std::move(e));
  }
  static TExprPtr make_binary(TExprKind k, TExprPtr a, TExprPtr b) {
    TExpr e;
    e.kind = k;
    e.kids = {std::move(a), std::move(b)};
    return std::make_shared<const TExpr>(std::move(e));
  }
  static TExprPtr make_pow(TExprPtr kid, std::int64_t exp) {
    TExpr e;
    e.kind = TExprKind::Pow;
    e.kids = {std::move(kid)};
    e.exponent = exp;
    return std::make_shared<const TExpr>(std::move(e));
  }
  static TExprPtr make_ref(TExprKind k, std::string n) {
    TExpr e;
    e.kind = k;
    e.name = std::move(n);
    return std::make_shared<const TExpr>(std::move(e));
  }
};

inline std::string to_string(const TExprPtr& e);

namespace detail {

inline std::string set_to_string(const std::vector<Rational>& elems) {
  std::string out = "{";
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (i) out += ",";
    out += elems[i].to_string();
  }
  return out + "}";
}

inline void print_texpr(const TExpr& e, int parent_prec, std::string& out) {
  auto binary = [&](const char* op, int prec, bool right_assoc = false) {
    bool parens = prec < parent_prec;
    if (parens) out += "(";
    print_texpr(*e.kids[0], right_assoc ? prec + 1 : prec, out);
    out += op;
    print_texpr(*e.kids[1], right_assoc ? prec : prec + 1, out);
    if (parens) out += ")";
  };
  switch (e.kind) {
    case TExprKind::Number: out += e.number.to_string(); return;
    case TExprKind::Ident: out += e.name; return;
    case TExprKind::SetLit: out += set_to_string(e.set_elems); return;
    case TExprKind::Eq: binary(" == ", 1); return;
    case TExprKind::Ne: binary(" != ", 1); return;
    case TExprKind::Implies: binary(" -> ", 2, true); return;
    case TExprKind::Add: binary(" + ", 3); return;
    case TExprKind::Sub: binary(" - ", 3); return;
    case TExprKind::Mul: binary("*", 4); return;
    case TExprKind::Div: binary("/", 4); return;
    case TExprKind::Neg:
      out += "-";
      print_texpr(*e.kids[0], 5, out);
      return;
    case TExprKind::Not:
      out += "!";
      print_texpr(*e.kids[0], 5, out);
      return;
    case TExprKind::Pow: {
      print_texpr(*e.kids[0], 6, out);
      out += "^" + std::to_string(e.exponent);
      return;
    }
    case TExprKind::Svs: out += "$" + e.name; return;
    case TExprKind::Card: out += "|$" + e.name + "|"; return;
    case TExprKind::Thm: out += "?" + e.name; return;
  }
}

}  // namespace detail

inline std::string to_string(const TExprPtr& e) {
  std::string out;
  detail::print_texpr(*e, 0, out);
  return out;
}

// --- declarations and the program object ------------------------------------

enum class VarKind { Propositional, Real };

struct VarDecl {
  std::string name;
  VarKind kind = VarKind::Propositional;
};

// A parameter state: a single value or a set-of-values label.
struct StateLit {
  bool is_set = false;
  Rational value;                   // when !is_set
  std::vector<Rational> elems;      // when is_set, sorted

  static StateLit of_value(Rational v) {
    StateLit s;
    s.value = std::move(v);
    return s;
  }
  static StateLit of_set(std::vector<Rational> e) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    StateLit s;
    s.is_set = true;
    s.elems = std::move(e);
    return s;
  }

  bool operator==(const StateLit& o) const {
    return is_set == o.is_set && value == o.value && elems == o.elems;
  }

  std::string to_string() const {
    return is_set ? detail::set_to_string(elems) : value.to_string();
  }
};

enum class ParamDomainKind { Finite, Integers, Naturals };

struct ParamDecl {
  std::string name;
  ParamDomainKind domain = ParamDomainKind::Finite;
  std::vector<StateLit> states;  // declared order, Finite only
};

struct Program {
  std::vector<VarDecl> vars;
  std::vector<ParamDecl> params;
  std::vector<FormulaPtr> judgments;
  std::vector<std::pair<TExprPtr, TExprPtr>> constraints;       // lhs == rhs
  std::vector<std::pair<std::string, TExprPtr>> updates;        // param := expr
  std::vector<TExprPtr> queries;

  bool is_parametric() const { return !params.empty(); }

  bool has_real_vars() const {
    for (const auto& v : vars)
      if (v.kind == VarKind::Real) return true;
    return false;
  }

  const VarDecl* find_var(const std::string& n) const {
    for (const auto& v : vars)
      if (v.name == n) return &v;
    return nullptr;
  }
  const ParamDecl* find_param(const std::string& n) const {
    for (const auto& p : params)
      if (p.name == n) return &p;
    return nullptr;
  }

  VarSet var_set() const {
    std::vector<std::string> names;
    for (const auto& v : vars) names.push_back(v.name);
    return VarSet(names);
  }
};

// --- validation ---------------------------------------------------------------

namespace detail {

inline void check_formula_names(const Formula& f, const Program& prog) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      const VarDecl* v = prog.find_var(f.atom_name());
      if (!v) throw UndeclaredIdentifier("atom '" + f.atom_name() + "' is not a declared variable");
      if (v->kind == VarKind::Real)
        throw ValidationError("real variable '" + f.atom_name() + "' cannot appear in a formula");
      return;
    }
    case Formula::Kind::Const:
      return;
    case Formula::Kind::Not:
      check_formula_names(*f.lhs(), prog);
      return;
    case Formula::Kind::Bin:
      check_formula_names(*f.lhs(), prog);
      check_formula_names(*f.rhs(), prog);
      return;
  }
}

inline void check_texpr_names(const TExpr& e, const Program& prog, bool allow_refs) {
  switch (e.kind) {
    case TExprKind::Ident:
      if (!prog.find_var(e.name) && !prog.find_param(e.name))
        throw UndeclaredIdentifier("identifier '" + e.name + "' is not declared");
      return;
    case TExprKind::Svs:
    case TExprKind::Card:
    case TExprKind::Thm:
      if (!allow_refs)
        throw ValidationError("solution references ($, |$|, ?) are only allowed in update expressions");
      if (!prog.find_var(e.name) && !prog.find_param(e.name))
        throw UndeclaredIdentifier("objective '" + e.name + "' is not declared");
      return;
    default:
      for (const auto& k : e.kids) check_texpr_names(*k, prog, allow_refs);
      return;
  }
}

}  // namespace detail

// Full semantic validation of a parsed program: declared-before-use is
// enforced by the parser; this checks the rest.
inline void validate(const Program& prog) {
  for (const auto& j : prog.judgments) detail::check_formula_names(*j, prog);
  for (const auto& [lhs, rhs] : prog.constraints) {
    detail::check_texpr_names(*lhs, prog, false);
    detail::check_texpr_names(*rhs, prog, false);
  }
  std::map<std::string, int> update_counts;
  for (const auto& [target, expr] : prog.updates) {
    if (!prog.find_param(target))
      throw UndeclaredIdentifier("update target '" + target + "' is not a declared parameter");
    if (++update_counts[target] > 1)
      throw DuplicateDeclaration("parameter '" + target + "' has two update rules");
    detail::check_texpr_names(*expr, prog, true);
  }
  for (const auto& q : prog.queries) detail::check_texpr_names(*q, prog, false);
}

}  // namespace lql
