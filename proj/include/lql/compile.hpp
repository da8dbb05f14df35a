#pragma once

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "lql/errors.hpp"
#include "lql/program.hpp"
#include "lql/solve.hpp"
#include "lql/translate.hpp"

namespace lql {

template <class K>
K from_rational(const Rational& r, const typename K::Context& ctx) {
  if constexpr (std::is_same_v<K, Rational>) {
    (void)ctx;
    return r;
  } else {
    Fp num(r.numerator().template convert_to<std::int64_t>(), ctx);
    if (r.is_integer()) return num;
    Fp den(r.denominator().template convert_to<std::int64_t>(), ctx);
    return num * den.inverse();  // throws InverseOfZero when d divides q
  }
}

// A parameter state: either a plain value of the coefficient domain or a
// set-of-values label (solution-value-set payload).
template <class K>
struct StateVal {
  bool is_set = false;
  K value;
  std::vector<K> elems;  // sorted ascending

  static StateVal of_value(K v) { return StateVal{false, std::move(v), {}}; }
  static StateVal of_set(std::vector<K> e, const typename K::Context& ctx) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return StateVal{true, K::zero(ctx), std::move(e)};
  }

  bool operator==(const StateVal& o) const {
    if (is_set != o.is_set) return false;
    return is_set ? elems == o.elems : value == o.value;
  }
  bool operator!=(const StateVal& o) const { return !(*this == o); }
  bool operator<(const StateVal& o) const {
    if (is_set != o.is_set) return is_set < o.is_set;
    return is_set ? elems < o.elems : value < o.value;
  }

  std::string to_string() const {
    if (!is_set) return value.to_string();
    std::string out = "{";
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (i) out += ",";
      out += elems[i].to_string();
    }
    return out + "}";
  }
};

template <class K>
StateVal<K> state_from_literal(const StateLit& lit, const typename K::Context& ctx) {
  if (!lit.is_set) return StateVal<K>::of_value(from_rational<K>(lit.value, ctx));
  std::vector<K> elems;
  for (const auto& r : lit.elems) elems.push_back(from_rational<K>(r, ctx));
  return StateVal<K>::of_set(std::move(elems), ctx);
}

template <class K>
using ParamEnv = std::map<std::string, StateVal<K>>;

// --- instantiating template expressions into polynomials --------------------

namespace detail {

// Intermediate value while instantiating: a polynomial over the declared
// variables, or a set of elementary values.
template <class K>
struct IValue {
  bool is_set = false;
  Poly<K> poly;
  std::vector<K> elems;

  static IValue of_poly(Poly<K> p) { return IValue{false, std::move(p), {}}; }
  static IValue of_set(std::vector<K> e, const typename K::Context& ctx,
                       const VarSet& vars) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return IValue{true, Poly<K>::zero(ctx, vars), std::move(e)};
  }
};

template <class K>
Poly<K> implies_poly(const Poly<K>& a, const Poly<K>& b, const typename K::Context& ctx,
                     const VarSet& vars) {
  // 1 - a + a*b; over F_2 this coincides with 1 + a + a*b
  return Poly<K>::constant(K::one(ctx), vars) - a + a * b;
}

template <class K>
IValue<K> instantiate_value(const TExpr& e, const Program& prog,
                            const ParamEnv<K>& env, const typename K::Context& ctx,
                            const VarSet& vars) {
  using IV = IValue<K>;
  auto poly_of = [&](const TExpr& kid) {
    IV v = instantiate_value<K>(kid, prog, env, ctx, vars);
    if (v.is_set)
      throw ValidationError("set value used where a polynomial is required in '" +
                            to_string(std::make_shared<const TExpr>(kid)) + "'");
    return v.poly;
  };
  switch (e.kind) {
    case TExprKind::Number:
      return IV::of_poly(Poly<K>::constant(from_rational<K>(e.number, ctx), vars));
    case TExprKind::Ident: {
      if (prog.find_var(e.name))
        return IV::of_poly(Poly<K>::variable(e.name, ctx, vars));
      auto it = env.find(e.name);
      if (it == env.end())
        throw UndeclaredIdentifier("parameter '" + e.name + "' has no value here");
      if (it->second.is_set) return IV::of_set(it->second.elems, ctx, vars);
      return IV::of_poly(Poly<K>::constant(it->second.value, vars));
    }
    case TExprKind::SetLit: {
      std::vector<K> elems;
      for (const auto& r : e.set_elems) elems.push_back(from_rational<K>(r, ctx));
      return IV::of_set(std::move(elems), ctx, vars);
    }
    case TExprKind::Add:
      return IV::of_poly(poly_of(*e.kids[0]) + poly_of(*e.kids[1]));
    case TExprKind::Sub:
      return IV::of_poly(poly_of(*e.kids[0]) - poly_of(*e.kids[1]));
    case TExprKind::Mul:
      return IV::of_poly(poly_of(*e.kids[0]) * poly_of(*e.kids[1]));
    case TExprKind::Div: {
      Poly<K> num = poly_of(*e.kids[0]);
      Poly<K> den = poly_of(*e.kids[1]);
      if (!den.is_constant() || den.is_zero())
        throw ValidationError("division needs a nonzero constant divisor");
      return IV::of_poly(num.scaled(den.constant_value().inverse()));
    }
    case TExprKind::Neg:
      return IV::of_poly(-poly_of(*e.kids[0]));
    case TExprKind::Not:
      return IV::of_poly(Poly<K>::constant(K::one(ctx), vars) - poly_of(*e.kids[0]));
    case TExprKind::Pow: {
      Poly<K> base = poly_of(*e.kids[0]);
      Poly<K> acc = Poly<K>::constant(K::one(ctx), vars);
      for (std::int64_t i = 0; i < e.exponent; ++i) acc = acc * base;
      return IV::of_poly(acc);
    }
    case TExprKind::Implies:
      return IV::of_poly(
          implies_poly(poly_of(*e.kids[0]), poly_of(*e.kids[1]), ctx, vars));
    case TExprKind::Eq:
    case TExprKind::Ne: {
      IV a = instantiate_value<K>(*e.kids[0], prog, env, ctx, vars);
      IV b = instantiate_value<K>(*e.kids[1], prog, env, ctx, vars);
      bool equal;
      if (a.is_set && b.is_set) {
        equal = a.elems == b.elems;
      } else if (!a.is_set && !b.is_set && a.poly.is_constant() && b.poly.is_constant()) {
        equal = a.poly.constant_value() == b.poly.constant_value();
      } else {
        throw ValidationError("comparison operands must instantiate to constants or sets");
      }
      bool truth = (e.kind == TExprKind::Eq) ? equal : !equal;
      return IV::of_poly(
          Poly<K>::constant(truth ? K::one(ctx) : K::zero(ctx), vars));
    }
    case TExprKind::Svs:
    case TExprKind::Card:
    case TExprKind::Thm:
      throw ValidationError("solution references cannot appear in constraints or queries");
  }
  throw ValidationError("unreachable expression kind");
}

}  // namespace detail

// Instantiates a template expression into a polynomial over the declared
// variables, substituting the given parameter values.
template <class K>
Poly<K> instantiate_poly(const TExprPtr& e, const Program& prog, const ParamEnv<K>& env,
                         const typename K::Context& ctx, const VarSet& vars) {
  auto v = detail::instantiate_value<K>(*e, prog, env, ctx, vars);
  if (v.is_set) throw ValidationError("expected a polynomial, found a set literal");
  return v.poly;
}

// --- update-expression evaluation -------------------------------------------

// Supplies solution-value sets during hypothetico-deductive analysis: for a
// parameter the hypothesized value, for a variable the image of the current
// instantiated system's solution set.
template <class K>
struct SolutionOracle {
  std::function<SolutionValueSet<K>(const std::string&)> svs;
};

template <class K>
StateVal<K> eval_update(const TExpr& e, const Program& prog, const ParamEnv<K>& env,
                        const SolutionOracle<K>& oracle,
                        const typename K::Context& ctx) {
  using SV = StateVal<K>;
  auto value_of = [&](const TExpr& kid) {
    SV v = eval_update<K>(kid, prog, env, oracle, ctx);
    if (v.is_set)
      throw ValidationError("set value used where a field value is required");
    return v.value;
  };
  switch (e.kind) {
    case TExprKind::Number:
      return SV::of_value(from_rational<K>(e.number, ctx));
    case TExprKind::Ident: {
      auto it = env.find(e.name);
      if (it != env.end()) return it->second;
      if (prog.find_var(e.name))
        throw ValidationError("variable '" + e.name +
                              "' can appear in updates only behind $, |$...| or ?");
      throw UndeclaredIdentifier("identifier '" + e.name + "' has no value here");
    }
    case TExprKind::SetLit: {
      std::vector<K> elems;
      for (const auto& r : e.set_elems) elems.push_back(from_rational<K>(r, ctx));
      std::sort(elems.begin(), elems.end());
      SV s;
      s.is_set = true;
      s.value = K::zero(ctx);
      s.elems = std::move(elems);
      return s;
    }
    case TExprKind::Add:
      return SV::of_value(value_of(*e.kids[0]) + value_of(*e.kids[1]));
    case TExprKind::Sub:
      return SV::of_value(value_of(*e.kids[0]) - value_of(*e.kids[1]));
    case TExprKind::Mul:
      return SV::of_value(value_of(*e.kids[0]) * value_of(*e.kids[1]));
    case TExprKind::Div:
      return SV::of_value(value_of(*e.kids[0]) / value_of(*e.kids[1]));
    case TExprKind::Neg:
      return SV::of_value(-value_of(*e.kids[0]));
    case TExprKind::Not:
      return SV::of_value(K::one(ctx) - value_of(*e.kids[0]));
    case TExprKind::Pow:
      return SV::of_value(value_of(*e.kids[0]).pow(e.exponent));
    case TExprKind::Implies: {
      K a = value_of(*e.kids[0]);
      K b = value_of(*e.kids[1]);
      return SV::of_value(K::one(ctx) - a + a * b);
    }
    case TExprKind::Eq:
    case TExprKind::Ne: {
      SV a = eval_update<K>(*e.kids[0], prog, env, oracle, ctx);
      SV b = eval_update<K>(*e.kids[1], prog, env, oracle, ctx);
      bool equal;
      if (a.is_set != b.is_set)
        throw ValidationError("comparison between a set and a field value");
      equal = a.is_set ? a.elems == b.elems : a.value == b.value;
      bool truth = (e.kind == TExprKind::Eq) ? equal : !equal;
      return SV::of_value(truth ? K::one(ctx) : K::zero(ctx));
    }
    case TExprKind::Svs: {
      SolutionValueSet<K> s = oracle.svs(e.name);
      if (!s.exact)
        throw IrrationalSolution("solution-value set of '" + e.name +
                                 "' has irrational members");
      SV out;
      out.is_set = true;
      out.value = K::zero(ctx);
      out.elems = s.values;
      return out;
    }
    case TExprKind::Card: {
      SolutionValueSet<K> s = oracle.svs(e.name);
      Rational count(static_cast<std::int64_t>(s.size));
      return SV::of_value(from_rational<K>(count, ctx));
    }
    case TExprKind::Thm: {
      SolutionValueSet<K> s = oracle.svs(e.name);
      bool is_theorem = s.exact && s.size == 1 && s.values[0] == K::one(ctx);
      return SV::of_value(is_theorem ? K::one(ctx) : K::zero(ctx));
    }
  }
  throw ValidationError("unreachable expression kind");
}

// --- compiling non-parametric programs ---------------------------------------

template <class K>
struct CompiledSystem {
  typename K::Context ctx;
  VarSet vars;
  EquationSystem<K> system;
  std::vector<Poly<K>> axiom_polys;  // one per judgment, the q_i of q_i = 1
};

namespace detail {

template <class K>
VarDomain<K> domain_for_var(const VarDecl& v, const typename K::Context& ctx) {
  if (v.kind == VarKind::Real) {
    if constexpr (std::is_same_v<K, Rational>) {
      return VarDomain<Rational>::reals();
    } else {
      throw ModeIncompatibility("real-domain variables need Boole (rational) mode");
    }
  }
  if constexpr (std::is_same_v<K, Fp>) {
    std::vector<Fp> all;
    for (std::int64_t i = 0; i < ctx.modulus; ++i) all.emplace_back(i, ctx);
    return VarDomain<Fp>::finite(std::move(all));
  } else {
    return VarDomain<Rational>::finite({Rational(0), Rational(1)});
  }
}

template <class K>
Poly<K> translate_judgment(const FormulaPtr& f, const typename K::Context& ctx,
                           const VarSet& vars) {
  if constexpr (std::is_same_v<K, Fp>) {
    return translate_formula(f, ctx, vars).poly;
  } else {
    return translate_formula(f, vars).poly;
  }
}

}  // namespace detail

// Builds the equation system of a program's judgments and raw constraints,
// with the given parameter environment substituted into the templates (use
// an empty environment for non-parametric programs).
template <class K>
CompiledSystem<K> compile_system(const Program& prog, const ParamEnv<K>& env,
                                 const typename K::Context& ctx) {
  CompiledSystem<K> out{ctx, prog.var_set(), {}, {}};
  out.system.vars = out.vars;
  for (const auto& v : prog.vars)
    out.system.domains.push_back(detail::domain_for_var<K>(v, ctx));

  for (const auto& j : prog.judgments) {
    Poly<K> q = detail::translate_judgment<K>(j, ctx, out.vars);
    out.axiom_polys.push_back(q);
    out.system.add_constraint(q, K::one(ctx));
  }
  for (const auto& [lhs, rhs] : prog.constraints) {
    Poly<K> l = instantiate_poly<K>(lhs, prog, env, ctx, out.vars);
    Poly<K> r = instantiate_poly<K>(rhs, prog, env, ctx, out.vars);
    if (r.is_constant())
      out.system.add_constraint(l, r.constant_value());
    else
      out.system.add_constraint(l - r, K::zero(ctx));
  }
  if constexpr (std::is_same_v<K, Rational>) {
    // Boole's special law x^2 = x for every propositional variable
    for (const auto& v : prog.vars) {
      if (v.kind != VarKind::Propositional) continue;
      Poly<Rational> x = Poly<Rational>::variable(v.name, {}, out.vars);
      out.system.add_constraint(x * x - x, Rational(0));
    }
  }
  return out;
}

// Solution-value set of an instantiated system, routing real-domain systems
// through the quadratic oracle.
template <class K>
SolutionValueSet<K> system_svs(const EquationSystem<K>& sys, const Poly<K>& objective,
                               std::uint64_t budget = 1000000) {
  if constexpr (std::is_same_v<K, Rational>) {
    if (sys.has_real_vars()) return solution_value_set_real(sys, objective, budget);
  }
  return solution_value_set(sys, objective, budget);
}

}  // namespace lql
