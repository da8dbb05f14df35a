#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lql/errors.hpp"
#include "lql/poly.hpp"

namespace lql {

enum class BinOp { And, Or, Xor, Implies, Iff, Nand, Nor };

inline const char* bin_op_symbol(BinOp op) {
  switch (op) {
    case BinOp::And: return "&";
    case BinOp::Or: return "|";
    case BinOp::Xor: return "^";
    case BinOp::Implies: return "->";
    case BinOp::Iff: return "<->";
    case BinOp::Nand: return "!&";
    case BinOp::Nor: return "!|";
  }
  return "?";
}

// Propositional formula tree: atoms, d-valued constants, negation, and the
// standard binary connectives.
class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
public:
  enum class Kind { Atom, Const, Not, Bin };

  static FormulaPtr atom(std::string name) {
    Formula f;
    f.kind_ = Kind::Atom;
    f.name_ = std::move(name);
    return std::make_shared<const Formula>(std::move(f));
  }

  static FormulaPtr constant(std::int64_t value) {
    Formula f;
    f.kind_ = Kind::Const;
    f.value_ = value;
    return std::make_shared<const Formula>(std::move(f));
  }

  static FormulaPtr negation(FormulaPtr inner) {
    Formula f;
    f.kind_ = Kind::Not;
    f.lhs_ = std::move(inner);
    return std::make_shared<const Formula>(std::move(f));
  }

  static FormulaPtr binary(BinOp op, FormulaPtr lhs, FormulaPtr rhs) {
    Formula f;
    f.kind_ = Kind::Bin;
    f.op_ = op;
    f.lhs_ = std::move(lhs);
    f.rhs_ = std::move(rhs);
    return std::make_shared<const Formula>(std::move(f));
  }

  Kind kind() const { return kind_; }
  const std::string& atom_name() const { return name_; }
  std::int64_t const_value() const { return value_; }
  BinOp op() const { return op_; }
  const FormulaPtr& lhs() const { return lhs_; }
  const FormulaPtr& rhs() const { return rhs_; }

  void collect_atoms(std::vector<std::string>& out) const {
    switch (kind_) {
      case Kind::Atom:
        out.push_back(name_);
        break;
      case Kind::Const:
        break;
      case Kind::Not:
        lhs_->collect_atoms(out);
        break;
      case Kind::Bin:
        lhs_->collect_atoms(out);
        rhs_->collect_atoms(out);
        break;
    }
  }

  bool equals(const Formula& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
      case Kind::Atom: return name_ == o.name_;
      case Kind::Const: return value_ == o.value_;
      case Kind::Not: return lhs_->equals(*o.lhs_);
      case Kind::Bin:
        return op_ == o.op_ && lhs_->equals(*o.lhs_) && rhs_->equals(*o.rhs_);
    }
    return false;
  }

private:
  Kind kind_ = Kind::Const;
  std::string name_;
  std::int64_t value_ = 0;
  BinOp op_ = BinOp::And;
  FormulaPtr lhs_;
  FormulaPtr rhs_;
};

// An asserted axiom |- content.
struct Judgment {
  FormulaPtr content;
};

namespace detail {

// Precedence used by both the printer and the parser, loosest first:
// <->, ->, |, ^, &, !.
inline int precedence(BinOp op) {
  switch (op) {
    case BinOp::Iff: return 1;
    case BinOp::Implies: return 2;
    case BinOp::Or: return 3;
    case BinOp::Nor: return 3;
    case BinOp::Xor: return 4;
    case BinOp::And: return 5;
    case BinOp::Nand: return 5;
  }
  return 0;
}

inline void print_formula(const Formula& f, int parent_prec, bool rhs_of_parent,
                          std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out += f.atom_name();
      return;
    case Formula::Kind::Const:
      out += std::to_string(f.const_value());
      return;
    case Formula::Kind::Not:
      out += "!";
      print_formula(*f.lhs(), 6, false, out);
      return;
    case Formula::Kind::Bin: {
      int prec = precedence(f.op());
      // -> is right-associative; the other connectives left-associative.
      bool need_parens =
          prec < parent_prec ||
          (prec == parent_prec && (f.op() == BinOp::Implies ? !rhs_of_parent : rhs_of_parent));
      // Nand/Nor have no input syntax of their own; print via negation.
      if (f.op() == BinOp::Nand || f.op() == BinOp::Nor) {
        out += "!(";
        print_formula(*f.lhs(), 0, false, out);
        out += f.op() == BinOp::Nand ? " & " : " | ";
        print_formula(*f.rhs(), 0, true, out);
        out += ")";
        return;
      }
      if (need_parens) out += "(";
      print_formula(*f.lhs(), prec, false, out);
      out += " ";
      out += bin_op_symbol(f.op());
      out += " ";
      print_formula(*f.rhs(), prec, true, out);
      if (need_parens) out += ")";
      return;
    }
  }
}

}  // namespace detail

inline std::string to_string(const FormulaPtr& f) {
  std::string out;
  detail::print_formula(*f, 0, false, out);
  return out;
}

// A map (Z_d)^n -> Z_d tabulated in the fixed index-vector order.
struct FiniteIntegerFunction {
  std::int64_t order;             // d
  std::size_t arity;              // n
  std::vector<std::int64_t> values;  // length d^n, entries in [0, d-1]

  FiniteIntegerFunction(std::int64_t d, std::size_t n, std::vector<std::int64_t> vals)
      : order(d), arity(n), values(std::move(vals)) {
    std::uint64_t expected = 1;
    for (std::size_t i = 0; i < n; ++i) expected *= static_cast<std::uint64_t>(d);
    if (values.size() != expected)
      throw ArityMismatch("finite-integer function of order " + std::to_string(d) +
                          " and arity " + std::to_string(n) + " needs " +
                          std::to_string(expected) + " values");
    for (auto v : values)
      if (v < 0 || v >= d)
        throw ValidationError("function value " + std::to_string(v) +
                              " outside [0, " + std::to_string(d - 1) + "]");
  }
};

namespace detail {

inline std::int64_t eval_formula(const Formula& f,
                                 const std::vector<std::int64_t>& env,
                                 const VarSet& vars, std::int64_t d) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return env[vars.index_of(f.atom_name())];
    case Formula::Kind::Const: {
      std::int64_t v = f.const_value();
      if (v < 0 || v >= d)
        throw ValidationError("constant " + std::to_string(v) +
                              " outside truth values of d = " + std::to_string(d));
      return v;
    }
    case Formula::Kind::Not: {
      if (d != 2) throw UnsupportedArity("negation needs d = 2");
      return 1 - eval_formula(*f.lhs(), env, vars, d);
    }
    case Formula::Kind::Bin: {
      if (d != 2) throw UnsupportedArity("binary connectives need d = 2");
      std::int64_t a = eval_formula(*f.lhs(), env, vars, d);
      std::int64_t b = eval_formula(*f.rhs(), env, vars, d);
      switch (f.op()) {
        case BinOp::And: return a & b;
        case BinOp::Or: return a | b;
        case BinOp::Xor: return a ^ b;
        case BinOp::Implies: return (1 - a) | b;
        case BinOp::Iff: return 1 - (a ^ b);
        case BinOp::Nand: return 1 - (a & b);
        case BinOp::Nor: return 1 - (a | b);
      }
      return 0;
    }
  }
  return 0;
}

}  // namespace detail

// Tabulates a formula over (Z_d)^n in index-vector order: for n = 2 and
// d = 2 the rows are (1,1), (1,0), (0,1), (0,0).
inline FiniteIntegerFunction truth_table(const FormulaPtr& f, const VarSet& vars,
                                         std::int64_t d = 2) {
  std::vector<std::int64_t> values;
  for (const auto& point : index_vectors(d, vars.size()))
    values.push_back(detail::eval_formula(*f, point, vars, d));
  return FiniteIntegerFunction(d, vars.size(), std::move(values));
}

}  // namespace lql
