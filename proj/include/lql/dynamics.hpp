#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lql/compile.hpp"
#include "lql/errors.hpp"
#include "lql/program.hpp"
#include "lql/solve.hpp"
#include "lql/translate.hpp"

namespace lql {

template <class K>
struct ParamSpec {
  std::string name;
  bool unbounded = false;           // ZZ / NN domains
  std::vector<StateVal<K>> states;  // declared order, finite domains only
};

// A program's parametric view: constraint and assignment templates over a
// finite (or symbolic) parameter state space.
template <class K>
struct ParametricSystem {
  typename K::Context ctx;
  Program prog;
  VarSet vars;
  std::vector<ParamSpec<K>> params;
  std::uint64_t budget = 1000000;

  bool finite_state_space() const {
    for (const auto& p : params)
      if (p.unbounded) return false;
    return true;
  }
};

template <class K>
using State = std::vector<StateVal<K>>;  // one entry per parameter, declared order

template <class K>
std::string state_to_string(const State<K>& s) {
  if (s.size() == 1) return s[0].to_string();
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s[i].to_string();
  }
  return out + ")";
}

template <class K>
ParametricSystem<K> make_parametric(const Program& prog, const typename K::Context& ctx,
                                    std::uint64_t budget = 1000000) {
  ParametricSystem<K> sys{ctx, prog, prog.var_set(), {}, budget};
  for (const auto& p : prog.params) {
    ParamSpec<K> spec;
    spec.name = p.name;
    if (p.domain != ParamDomainKind::Finite) {
      spec.unbounded = true;
    } else {
      for (const auto& st : p.states)
        spec.states.push_back(state_from_literal<K>(st, ctx));
    }
    sys.params.push_back(std::move(spec));
  }
  return sys;
}

// The extracted evolution function.  `tabulated` is present for finite state
// spaces; `symbolic` when every update is algebraic in the parameters alone;
// `interpolation` when the single-parameter state space sits inside the
// coefficient domain as {0, ..., m-1}.
template <class K>
struct EvolutionFunction {
  std::vector<State<K>> states;              // U, declared-order product
  std::vector<std::size_t> successor;        // tabulated map, index into states
  bool tabulated = false;
  std::vector<Poly<K>> symbolic;             // over the parameter ring
  bool has_symbolic = false;
  std::optional<Poly<K>> interpolation;
};

namespace detail {

inline bool is_algebraic_update(const TExpr& e, const Program& prog) {
  switch (e.kind) {
    case TExprKind::Number:
      return true;
    case TExprKind::Ident:
      return prog.find_param(e.name) != nullptr;
    case TExprKind::Add:
    case TExprKind::Sub:
    case TExprKind::Mul:
    case TExprKind::Div:
    case TExprKind::Neg:
    case TExprKind::Not:
    case TExprKind::Pow:
    case TExprKind::Implies: {
      for (const auto& k : e.kids)
        if (!is_algebraic_update(*k, prog)) return false;
      return true;
    }
    default:
      return false;
  }
}

// Shadow program that re-declares every parameter as a variable, used to
// instantiate update/constraint templates over the extended ring.
inline Program promote_params(const Program& prog) {
  Program shadow = prog;
  for (const auto& p : prog.params)
    shadow.vars.push_back({p.name, VarKind::Propositional});
  shadow.params.clear();
  shadow.updates.clear();
  return shadow;
}

template <class K>
std::vector<State<K>> state_product(const ParametricSystem<K>& sys) {
  std::vector<State<K>> states{{}};
  for (const auto& p : sys.params) {
    std::vector<State<K>> next;
    for (const auto& partial : states)
      for (const auto& st : p.states) {
        State<K> s = partial;
        s.push_back(st);
        next.push_back(std::move(s));
      }
    states = std::move(next);
  }
  return states;
}

template <class K>
TExprPtr update_expr_for(const ParametricSystem<K>& sys, const std::string& name) {
  for (const auto& [target, expr] : sys.prog.updates)
    if (target == name) return expr;
  return TExpr::make_ident(name);  // identity default
}

// Per-state hypothetico-deductive step: instantiate, solve on demand, and
// evaluate every assignment template.
template <class K>
struct StateStep {
  EquationSystem<K> system;
  std::map<std::string, SolutionValueSet<K>> svs_cache;
  State<K> successor;
};

template <class K>
SolutionValueSet<K> objective_svs_by_name(const ParametricSystem<K>& sys,
                                          const EquationSystem<K>& eqsys,
                                          const ParamEnv<K>& env,
                                          const std::string& name) {
  if (sys.prog.find_param(name)) {
    // the hypothesized value of the current state
    const StateVal<K>& v = env.at(name);
    if (v.is_set) {
      SolutionValueSet<K> out;
      out.values = v.elems;
      out.size = v.elems.size();
      return out;
    }
    return SolutionValueSet<K>::of({v.value});
  }
  Poly<K> objective = Poly<K>::variable(name, sys.ctx, sys.vars);
  return system_svs(eqsys, objective, sys.budget);
}

template <class K>
StateStep<K> analyze_state(const ParametricSystem<K>& sys, const State<K>& state) {
  ParamEnv<K> env;
  for (std::size_t i = 0; i < sys.params.size(); ++i)
    env[sys.params[i].name] = state[i];

  StateStep<K> step;
  step.system = compile_system<K>(sys.prog, env, sys.ctx).system;

  SolutionOracle<K> oracle;
  oracle.svs = [&](const std::string& name) {
    auto it = step.svs_cache.find(name);
    if (it != step.svs_cache.end()) return it->second;
    auto svs = objective_svs_by_name(sys, step.system, env, name);
    step.svs_cache.emplace(name, svs);
    return svs;
  };

  for (std::size_t i = 0; i < sys.params.size(); ++i) {
    TExprPtr expr = update_expr_for(sys, sys.params[i].name);
    step.successor.push_back(eval_update<K>(*expr, sys.prog, env, oracle, sys.ctx));
  }
  return step;
}

// Attach a closed-form interpolation when there is exactly one parameter and
// its states are the values {0, ..., m-1} (prime m required in modular mode).
template <class K>
std::optional<Poly<K>> try_interpolation(const ParametricSystem<K>& sys,
                                         const std::vector<State<K>>& states,
                                         const std::vector<std::size_t>& successor) {
  if (sys.params.size() != 1) return std::nullopt;
  const auto& spec = sys.params[0];
  std::vector<Rational> values;
  for (const auto& st : spec.states) {
    if (st.is_set) return std::nullopt;
    if constexpr (std::is_same_v<K, Rational>) {
      values.push_back(st.value);
    } else {
      values.push_back(Rational(st.value.value()));
    }
  }
  std::sort(values.begin(), values.end());
  const std::int64_t m = static_cast<std::int64_t>(values.size());
  for (std::int64_t i = 0; i < m; ++i)
    if (values[static_cast<std::size_t>(i)] != Rational(i)) return std::nullopt;
  if constexpr (std::is_same_v<K, Fp>) {
    if (m != sys.ctx.modulus) return std::nullopt;
  } else {
    if (m < 2) return std::nullopt;
  }

  // table in descending index order
  auto value_of = [&](const StateVal<K>& v) -> std::int64_t {
    if constexpr (std::is_same_v<K, Rational>) {
      return v.value.numerator().template convert_to<std::int64_t>();
    } else {
      return v.value.value();
    }
  };
  std::map<std::int64_t, std::int64_t> map;
  for (std::size_t i = 0; i < states.size(); ++i)
    map[value_of(states[i][0])] = value_of(states[successor[i]][0]);
  std::vector<std::int64_t> tvals;
  for (std::int64_t a = m - 1; a >= 0; --a) tvals.push_back(map.at(a));
  FiniteIntegerFunction T(m, 1, tvals);
  VarSet ring({spec.name});
  try {
    return interpolate<K>(T, sys.ctx, ring).poly;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace detail

// Extracts the evolution function.  Case 1: all updates algebraic in the
// parameters, reported symbolically (and also tabulated when the state space
// is finite).  Case 2: finite state space, hypothetico-deductive analysis
// state by state.
template <class K>
EvolutionFunction<K> extract_evolution(const ParametricSystem<K>& sys) {
  EvolutionFunction<K> evo;

  bool algebraic = true;
  for (const auto& p : sys.params) {
    TExprPtr expr = detail::update_expr_for(sys, p.name);
    if (!detail::is_algebraic_update(*expr, sys.prog)) algebraic = false;
  }
  if (algebraic) {
    std::vector<std::string> param_names;
    for (const auto& p : sys.params) param_names.push_back(p.name);
    VarSet ring(param_names);
    Program shadow = detail::promote_params(sys.prog);
    shadow.vars.clear();
    for (const auto& n : param_names) shadow.vars.push_back({n, VarKind::Propositional});
    for (const auto& p : sys.params) {
      TExprPtr expr = detail::update_expr_for(sys, p.name);
      evo.symbolic.push_back(instantiate_poly<K>(expr, shadow, {}, sys.ctx, ring));
    }
    evo.has_symbolic = true;
  }

  if (!sys.finite_state_space()) {
    if (!algebraic)
      throw InfiniteStateSpace(
          "updates reference solutions but the parameter state space is infinite");
    return evo;  // symbolic-only report
  }

  evo.states = detail::state_product(sys);
  BigInt u = static_cast<unsigned>(evo.states.size());
  if (u > sys.budget)
    throw BudgetExceeded("state space has " + u.str() + " states, budget is " +
                             std::to_string(sys.budget),
                         u.str());
  for (const auto& state : evo.states) {
    detail::StateStep<K> step = detail::analyze_state(sys, state);
    auto it = std::find(evo.states.begin(), evo.states.end(), step.successor);
    if (it == evo.states.end()) {
      std::string msg = "update maps state " + state_to_string(state) +
                        " to " + state_to_string(step.successor) +
                        ", outside the declared domain";
      throw UpdateOutOfDomain(msg);
    }
    evo.successor.push_back(static_cast<std::size_t>(it - evo.states.begin()));
  }
  evo.tabulated = true;
  evo.interpolation = detail::try_interpolation(sys, evo.states, evo.successor);
  return evo;
}

enum class Steadiness { Steady, Unsteady, Contingent };

inline std::string to_string(Steadiness s) {
  switch (s) {
    case Steadiness::Steady: return "steady";
    case Steadiness::Unsteady: return "unsteady";
    case Steadiness::Contingent: return "contingent";
  }
  return "?";
}

template <class K>
struct Transition {
  std::size_t from;
  std::size_t to;
  SolutionValueSet<K> label;  // objective's solution-value set at the source
};

template <class K>
struct DynamicalSystem {
  std::vector<State<K>> states;
  std::vector<Transition<K>> transitions;  // one per state, in state order
  std::vector<std::size_t> fixed_points;   // ascending state indices
  Steadiness steadiness = Steadiness::Steady;
  EvolutionFunction<K> evolution;
};

namespace detail {

// Objective evaluation at a state: a bare parameter reports its hypothesized
// value; anything else is instantiated and pushed through the solution set.
template <class K>
SolutionValueSet<K> objective_label(const ParametricSystem<K>& sys,
                                    const TExprPtr& objective, const State<K>& state,
                                    const EquationSystem<K>& eqsys) {
  ParamEnv<K> env;
  for (std::size_t i = 0; i < sys.params.size(); ++i)
    env[sys.params[i].name] = state[i];
  if (objective->kind == TExprKind::Ident && sys.prog.find_param(objective->name))
    return objective_svs_by_name(sys, eqsys, env, objective->name);
  Poly<K> p = instantiate_poly<K>(objective, sys.prog, env, sys.ctx, sys.vars);
  return system_svs(eqsys, p, sys.budget);
}

}  // namespace detail

// The discrete dynamical system derived from a parametric program, with each
// transition labeled by the objective's solution-value set at its source.  A
// parameterless program yields the single empty-tuple state, trivially steady.
template <class K>
DynamicalSystem<K> build_dynamics(const ParametricSystem<K>& sys,
                                  const TExprPtr& objective) {
  if (!sys.finite_state_space())
    throw InfiniteStateSpace("dynamics need a finite parameter state space");
  DynamicalSystem<K> dyn;
  dyn.evolution = extract_evolution(sys);
  dyn.states = dyn.evolution.states;
  for (std::size_t i = 0; i < dyn.states.size(); ++i) {
    detail::StateStep<K> step = detail::analyze_state(sys, dyn.states[i]);
    SolutionValueSet<K> label =
        detail::objective_label(sys, objective, dyn.states[i], step.system);
    dyn.transitions.push_back({i, dyn.evolution.successor[i], label});
    if (dyn.evolution.successor[i] == i) dyn.fixed_points.push_back(i);
  }
  dyn.steadiness = dyn.fixed_points.size() == 1
                       ? Steadiness::Steady
                       : (dyn.fixed_points.empty() ? Steadiness::Unsteady
                                                   : Steadiness::Contingent);
  return dyn;
}

// One eventually-periodic orbit of solution-value sets, in minimal
// (prefix, cycle) form.
template <class K>
struct ValueSequence {
  State<K> initial;
  std::vector<SolutionValueSet<K>> prefix;
  std::vector<SolutionValueSet<K>> cycle;  // non-empty, primitive period
};

template <class K>
using SequenceCollection = std::vector<ValueSequence<K>>;

namespace detail {

template <class K>
void minimize_sequence(std::vector<SolutionValueSet<K>>& prefix,
                       std::vector<SolutionValueSet<K>>& cycle) {
  // primitive period
  for (std::size_t len = 1; len < cycle.size(); ++len) {
    if (cycle.size() % len != 0) continue;
    bool periodic = true;
    for (std::size_t i = len; i < cycle.size() && periodic; ++i)
      if (!(cycle[i] == cycle[i % len])) periodic = false;
    if (periodic) {
      cycle.resize(len);
      break;
    }
  }
  // absorb a prefix tail equal to the cycle tail
  while (!prefix.empty() && prefix.back() == cycle.back()) {
    prefix.pop_back();
    cycle.insert(cycle.begin(), cycle.back());
    cycle.pop_back();
  }
}

}  // namespace detail

// For every initial state, the orbit's value sequence represented as a
// minimal prefix plus primitive cycle.
template <class K>
SequenceCollection<K> sequences(const ParametricSystem<K>& sys,
                                const TExprPtr& objective) {
  DynamicalSystem<K> dyn = build_dynamics(sys, objective);
  SequenceCollection<K> out;
  for (std::size_t start = 0; start < dyn.states.size(); ++start) {
    std::map<std::size_t, std::size_t> seen;  // state index -> position
    std::vector<SolutionValueSet<K>> values;
    std::size_t cur = start;
    while (!seen.count(cur)) {
      seen[cur] = values.size();
      values.push_back(dyn.transitions[cur].label);
      cur = dyn.transitions[cur].to;
    }
    std::size_t loop_at = seen[cur];
    ValueSequence<K> seq;
    seq.initial = dyn.states[start];
    seq.prefix.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(loop_at));
    seq.cycle.assign(values.begin() + static_cast<std::ptrdiff_t>(loop_at), values.end());
    detail::minimize_sequence(seq.prefix, seq.cycle);
    out.push_back(std::move(seq));
  }
  return out;
}

// Static transcription: parameters become variables, each assignment
// template theta := F(...) becomes the simultaneous equation theta = F; the
// solutions of the result are the fixed-point solutions.
template <class K>
EquationSystem<K> static_transcription(const ParametricSystem<K>& sys) {
  for (const auto& p : sys.params)
    for (const auto& st : p.states)
      if (st.is_set)
        throw NonNumericStates("parameter '" + p.name +
                               "' has set-valued states; no polynomial transcription");

  std::vector<std::string> all_names = sys.vars.names();
  for (const auto& p : sys.params) all_names.push_back(p.name);
  VarSet ext(all_names);

  Program shadow = detail::promote_params(sys.prog);

  EquationSystem<K> out;
  out.vars = ext;
  for (const auto& name : ext.names()) {
    const ParamDecl* p = sys.prog.find_param(name);
    if (!p) {
      out.domains.push_back(detail::domain_for_var<K>(*sys.prog.find_var(name), sys.ctx));
      continue;
    }
    if (p->domain != ParamDomainKind::Finite) {
      VarDomain<K> d;
      d.integer_line = true;
      out.domains.push_back(d);
      continue;
    }
    std::vector<K> vals;
    for (const auto& st : p->states) vals.push_back(from_rational<K>(st.value, sys.ctx));
    out.domains.push_back(VarDomain<K>::finite(std::move(vals)));
  }

  for (const auto& j : sys.prog.judgments)
    out.add_constraint(detail::translate_judgment<K>(j, sys.ctx, ext), K::one(sys.ctx));
  for (const auto& [lhs, rhs] : sys.prog.constraints) {
    Poly<K> l = instantiate_poly<K>(lhs, shadow, {}, sys.ctx, ext);
    Poly<K> r = instantiate_poly<K>(rhs, shadow, {}, sys.ctx, ext);
    if (r.is_constant())
      out.add_constraint(l, r.constant_value());
    else
      out.add_constraint(l - r, K::zero(sys.ctx));
  }
  if constexpr (std::is_same_v<K, Rational>) {
    for (const auto& v : sys.prog.vars) {
      if (v.kind != VarKind::Propositional) continue;
      Poly<Rational> x = Poly<Rational>::variable(v.name, {}, ext);
      out.add_constraint(x * x - x, Rational(0));
    }
  }

  // theta = lambda for every parameter
  std::optional<EvolutionFunction<K>> evo;  // computed lazily for interpolations
  for (const auto& p : sys.params) {
    TExprPtr expr = detail::update_expr_for(sys, p.name);
    Poly<K> theta = Poly<K>::variable(p.name, sys.ctx, ext);
    if (detail::is_algebraic_update(*expr, sys.prog)) {
      Poly<K> lambda = instantiate_poly<K>(expr, shadow, {}, sys.ctx, ext);
      out.add_constraint(theta - lambda, K::zero(sys.ctx));
      continue;
    }
    if (sys.params.size() != 1)
      throw ValidationError(
          "static transcription needs polynomial updates or a single parameter");
    if (!evo) evo = extract_evolution(sys);
    if (!evo->interpolation)
      throw ValidationError("update of '" + p.name +
                            "' has no polynomial interpolation over its states");
    // re-express the interpolation over the extended ring
    Poly<K> lambda(sys.ctx, ext);
    for (const auto& [m, c] : evo->interpolation->terms()) {
      Monomial nm(ext.size(), 0);
      nm[ext.index_of(p.name)] = m[0];
      lambda.add_term(nm, c);
    }
    out.add_constraint(theta - lambda, K::zero(sys.ctx));
  }
  return out;
}

// --- DOT rendering of the transition graph -----------------------------------

template <class K>
std::string to_dot(const DynamicalSystem<K>& dyn) {
  std::string out = "digraph dynamics {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < dyn.states.size(); ++i) {
    bool fixed = std::find(dyn.fixed_points.begin(), dyn.fixed_points.end(), i) !=
                 dyn.fixed_points.end();
    out += "  \"" + state_to_string(dyn.states[i]) + "\"";
    out += fixed ? " [peripheries=2];\n" : ";\n";
  }
  for (const auto& t : dyn.transitions) {
    out += "  \"" + state_to_string(dyn.states[t.from]) + "\" -> \"" +
           state_to_string(dyn.states[t.to]) + "\" [label=\"" + t.label.to_string() +
           "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace lql
