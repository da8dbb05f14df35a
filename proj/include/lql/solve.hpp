#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lql/errors.hpp"
#include "lql/logic.hpp"
#include "lql/poly.hpp"
#include "lql/system.hpp"
#include "lql/translate.hpp"

namespace lql {

// The image of the solution set under an objective polynomial.  `exact` is
// false only on the continuous-quadratic path when some real root is
// irrational; the cardinality is still known exactly.
template <class K>
struct SolutionValueSet {
  std::vector<K> values;  // sorted ascending
  bool exact = true;
  std::size_t size = 0;

  static SolutionValueSet of(std::vector<K> vals) {
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    SolutionValueSet s;
    s.size = vals.size();
    s.values = std::move(vals);
    return s;
  }

  static SolutionValueSet inexact(std::size_t count) {
    SolutionValueSet s;
    s.exact = false;
    s.size = count;
    return s;
  }

  bool empty() const { return size == 0; }

  bool operator==(const SolutionValueSet& o) const {
    if (exact != o.exact) return false;
    if (!exact) return size == o.size;
    return values == o.values;
  }
  bool operator!=(const SolutionValueSet& o) const { return !(*this == o); }
  bool operator<(const SolutionValueSet& o) const {
    if (exact != o.exact) return exact < o.exact;
    if (!exact) return size < o.size;
    return values < o.values;
  }

  std::string to_string() const {
    if (!exact)
      return "{" + std::to_string(size) + " irrational values}";
    std::string out = "{";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ",";
      out += values[i].to_string();
    }
    return out + "}";
  }
};

enum class ClassificationTag { Necessarily, Ambiguous, Unsatisfiable };

template <class K>
struct Classification {
  ClassificationTag tag;
  std::optional<K> value;  // set for Necessarily(k)

  std::string to_string() const {
    switch (tag) {
      case ClassificationTag::Necessarily: return "necessarily " + value->to_string();
      case ClassificationTag::Ambiguous: return "ambiguous";
      case ClassificationTag::Unsatisfiable: return "unsatisfiable";
    }
    return "?";
  }
};

template <class K>
Classification<K> classify_set(const SolutionValueSet<K>& s) {
  if (s.size == 0) return {ClassificationTag::Unsatisfiable, std::nullopt};
  if (s.size > 1) return {ClassificationTag::Ambiguous, std::nullopt};
  if (!s.exact)
    throw IrrationalSolution("single irrational value cannot be reported exactly");
  return {ClassificationTag::Necessarily, s.values[0]};
}

// --- Quadratic root oracle -------------------------------------------------

struct QuadraticReport {
  Rational a, b, c;
  int real_root_count = 0;          // by the sign of b^2 - 4ac
  Rational discriminant;
  std::vector<Rational> rational_roots;  // ascending; populated only when exact
};

// Real roots of a x^2 + b x + c = 0 with exact rational arithmetic; roots
// are listed only when the discriminant is a perfect rational square.
inline QuadraticReport quadratic_real_roots(const Rational& a, const Rational& b,
                                            const Rational& c) {
  if (a.is_zero()) throw DegenerateQuadratic("leading coefficient is zero");
  QuadraticReport rep;
  rep.a = a;
  rep.b = b;
  rep.c = c;
  rep.discriminant = b * b - Rational(4) * a * c;
  if (rep.discriminant.is_negative()) {
    rep.real_root_count = 0;
    return rep;
  }
  if (rep.discriminant.is_zero()) {
    rep.real_root_count = 1;
    rep.rational_roots.push_back(-b / (Rational(2) * a));
    return rep;
  }
  rep.real_root_count = 2;
  Rational root;
  if (rational_sqrt(rep.discriminant, root)) {
    Rational twoa = Rational(2) * a;
    rep.rational_roots.push_back((-b - root) / twoa);
    rep.rational_roots.push_back((-b + root) / twoa);
    std::sort(rep.rational_roots.begin(), rep.rational_roots.end());
  }
  return rep;
}

// Real solutions of a univariate polynomial constraint p(x) = 0, degree <= 2.
// Returns the count plus the rational roots (all of them when exact).
inline QuadraticReport univariate_real_roots(const RatPoly& p) {
  if (p.vars().size() != 1)
    throw ValidationError("univariate root query on a multivariate polynomial");
  Rational a(0), b(0), c(0);
  for (const auto& [m, coeff] : p.terms()) {
    if (m[0] == 0) c = coeff;
    else if (m[0] == 1) b = coeff;
    else if (m[0] == 2) a = coeff;
    else
      throw ValidationError("real-domain constraints must have degree <= 2");
  }
  if (a.is_zero()) {
    QuadraticReport rep;
    rep.a = a;
    rep.b = b;
    rep.c = c;
    if (b.is_zero()) {
      if (c.is_zero())
        throw InfiniteSolutionSet("constraint vanishes identically on the real line");
      rep.real_root_count = 0;
      return rep;
    }
    rep.real_root_count = 1;
    rep.rational_roots.push_back(-c / b);
    rep.discriminant = Rational(0);
    return rep;
  }
  return quadratic_real_roots(a, b, c);
}

// --- Exhaustive solving ----------------------------------------------------

namespace detail {

template <class K>
void enumerate_points(const EquationSystem<K>& sys, std::uint64_t budget,
                      std::vector<Point<K>>& out) {
  BigInt total = 1;
  for (const auto& d : sys.domains) {
    if (d.values.empty()) return;  // empty domain: no points at all
    total *= static_cast<unsigned>(d.values.size());
  }
  if (total > budget)
    throw BudgetExceeded("point enumeration needs " + total.str() +
                             " candidates, budget is " + std::to_string(budget),
                         total.str());
  Point<K> cur;
  cur.reserve(sys.domains.size());
  // ascending lexicographic order over the (sorted) domains
  std::vector<std::size_t> idx(sys.domains.size(), 0);
  while (true) {
    cur.clear();
    for (std::size_t i = 0; i < sys.domains.size(); ++i)
      cur.push_back(sys.domains[i].values[idx[i]]);
    out.push_back(cur);
    std::size_t i = sys.domains.size();
    while (i > 0) {
      --i;
      if (++idx[i] < sys.domains[i].values.size()) break;
      idx[i] = 0;
      if (i == 0) return;
    }
    if (sys.domains.empty()) return;
  }
}

}  // namespace detail

// All and only the points of the declared domains satisfying every
// constraint, in ascending lexicographic order.  With n = 0 the result is
// {()} exactly when the (constant) constraints hold.
template <class K>
std::vector<Point<K>> solution_set(const EquationSystem<K>& sys,
                                   std::uint64_t budget = 1000000) {
  if (sys.has_real_vars())
    throw ValidationError("solution_set over a real-domain variable; use solve_real");
  for (const auto& d : sys.domains)
    if (d.integer_line)
      throw BudgetExceeded("a variable ranges over all integers; exhaustive "
                           "solving needs finite domains",
                           "infinite");
  std::vector<Point<K>> candidates;
  detail::enumerate_points(sys, budget, candidates);
  std::vector<Point<K>> out;
  for (const auto& pt : candidates) {
    bool ok = true;
    for (const auto& c : sys.constraints) {
      if (c.poly.eval(pt) != c.rhs) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(pt);
  }
  return out;
}

template <class K>
SolutionValueSet<K> solution_value_set(const EquationSystem<K>& sys, const Poly<K>& p,
                                       std::uint64_t budget = 1000000) {
  std::vector<K> vals;
  for (const auto& pt : solution_set(sys, budget)) vals.push_back(p.eval(pt));
  return SolutionValueSet<K>::of(std::move(vals));
}

template <class K>
Classification<K> classify(const EquationSystem<K>& sys, const Poly<K>& p,
                           std::uint64_t budget = 1000000) {
  return classify_set(solution_value_set(sys, p, budget));
}

// --- Value worksheet -------------------------------------------------------

struct WorksheetRow {
  FpPoly poly;
  std::vector<Fp> values;  // one per point
  SolutionValueSet<Fp> svs;
};

// Exhaustive table of every reduced ring polynomial evaluated at every point
// of (F_d)^n, with infeasible points marked.
struct ValueWorksheet {
  VarSet vars;
  FieldSpec field;
  std::vector<Point<Fp>> points;   // ascending
  std::vector<bool> infeasible;    // one per point
  std::vector<WorksheetRow> rows;  // ring order
};

inline ValueWorksheet value_worksheet(const EquationSystem<Fp>& sys, const FieldSpec& field,
                                      std::uint64_t budget = 1000000) {
  const std::size_t n = sys.vars.size();
  BigInt rows_count = ring_size(field.modulus, n);
  BigInt cols = 1;
  for (std::size_t i = 0; i < n; ++i) cols *= field.modulus;
  BigInt entries = rows_count * cols;
  if (entries > budget)
    throw BudgetExceeded("worksheet needs " + entries.str() + " entries, budget is " +
                             std::to_string(budget),
                         entries.str());

  ValueWorksheet ws{sys.vars, field, {}, {}, {}};
  // full affine space, ascending
  EquationSystem<Fp> full = full_field_system(field, sys.vars);
  detail::enumerate_points(full, budget, ws.points);

  ws.infeasible.assign(ws.points.size(), false);
  for (std::size_t k = 0; k < ws.points.size(); ++k)
    for (const auto& c : sys.constraints)
      if (c.poly.eval(ws.points[k]) != c.rhs) ws.infeasible[k] = true;

  RingEnumerator en(field, sys.vars, budget);
  while (!en.done()) {
    WorksheetRow row{en.next(), {}, {}};
    std::vector<Fp> feasible_vals;
    for (std::size_t k = 0; k < ws.points.size(); ++k) {
      row.values.push_back(row.poly.eval(ws.points[k]));
      if (!ws.infeasible[k]) feasible_vals.push_back(row.values.back());
    }
    row.svs = SolutionValueSet<Fp>::of(std::move(feasible_vals));
    ws.rows.push_back(std::move(row));
  }
  return ws;
}

// --- Inverse-value sets and theorem discovery ------------------------------

// Exactly the reduced polynomials whose solution-value set is `query`, in
// ring enumeration order.  When the system is infeasible the empty query
// returns the whole ring and every non-empty query returns nothing.
inline std::vector<FpPoly> inverse_value_set(const EquationSystem<Fp>& sys,
                                             const SolutionValueSet<Fp>& query,
                                             const FieldSpec& field,
                                             std::uint64_t budget = 1000000) {
  std::vector<Point<Fp>> solutions = solution_set(sys, budget);
  std::vector<FpPoly> out;
  RingEnumerator en(field, sys.vars, budget);
  while (!en.done()) {
    FpPoly p = en.next();
    std::vector<Fp> vals;
    for (const auto& pt : solutions) vals.push_back(p.eval(pt));
    if (SolutionValueSet<Fp>::of(std::move(vals)) == query) out.push_back(std::move(p));
  }
  return out;
}

// Back-translation of an F_d polynomial into a representative formula using
// the fixed transliteration: product -> conjunction, sum -> exclusive
// disjunction.
inline FormulaPtr polynomial_to_formula(const FpPoly& p) {
  if (p.is_zero()) return Formula::constant(0);
  FormulaPtr acc;
  // terms arrive leading-first; fold them with XOR
  for (const auto& [m, c] : p.terms()) {
    FormulaPtr term;
    if (!c.is_one()) term = Formula::constant(c.value());
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::uint32_t e = 0; e < m[i]; ++e) {
        FormulaPtr atom = Formula::atom(p.vars().name(i));
        term = term ? Formula::binary(BinOp::And, term, atom) : atom;
      }
    }
    if (!term) term = Formula::constant(1);
    acc = acc ? Formula::binary(BinOp::Xor, acc, term) : term;
  }
  return acc;
}

struct Theorem {
  FpPoly poly;
  FormulaPtr formula;
};

// All polynomials whose only feasible value is 1, with default
// back-translations.
inline std::vector<Theorem> theorems(const EquationSystem<Fp>& sys, const FieldSpec& field,
                                     std::uint64_t budget = 1000000) {
  SolutionValueSet<Fp> one = SolutionValueSet<Fp>::of({Fp(1, field)});
  std::vector<Theorem> out;
  for (auto& p : inverse_value_set(sys, one, field, budget)) {
    FormulaPtr f = polynomial_to_formula(p);
    out.push_back({std::move(p), std::move(f)});
  }
  return out;
}

// --- Modal operators over solution-value sets -------------------------------

enum class ModalOp {
  NecessarilyK,   // []_k : S = {k}
  PossiblyK,      // <>_k : k in S
  AmbiguousOp,    // |S| > 1
  UnsatisfiableOp,  // S = {}
  DefiniteOp,     // |S| = 1
};

template <class K>
bool modal_eval_set(const SolutionValueSet<K>& s, ModalOp op, const K* k = nullptr) {
  switch (op) {
    case ModalOp::NecessarilyK:
      return s.exact && s.size == 1 && s.values[0] == *k;
    case ModalOp::PossiblyK:
      if (!s.exact)
        throw IrrationalSolution("membership query on an inexact value set");
      return std::find(s.values.begin(), s.values.end(), *k) != s.values.end();
    case ModalOp::AmbiguousOp:
      return s.size > 1;
    case ModalOp::UnsatisfiableOp:
      return s.size == 0;
    case ModalOp::DefiniteOp:
      return s.size == 1;
  }
  return false;
}

template <class K>
bool modal_eval(const EquationSystem<K>& sys, const Poly<K>& p, ModalOp op,
                const K* k = nullptr, std::uint64_t budget = 1000000) {
  return modal_eval_set(solution_value_set(sys, p, budget), op, k);
}

// --- Systems with real-domain variables -------------------------------------

// Solutions of a rational-mode system in which some variables range over the
// real line.  Supported shape: after substituting every finite-domain
// assignment, each residual constraint must be constant or univariate of
// degree <= 2 in a single real variable (the quadratic demos).  Points are
// materialized when every needed root is rational; otherwise only the count
// survives, which is all the dynamics engine needs.
struct RealSolveResult {
  std::size_t count = 0;
  bool exact = true;                     // all points materialized
  std::vector<Point<Rational>> points;   // ascending, when exact
};

inline RealSolveResult solve_real(const EquationSystem<Rational>& sys,
                                  std::uint64_t budget = 1000000) {
  for (const auto& d : sys.domains)
    if (d.integer_line)
      throw BudgetExceeded("a variable ranges over all integers; exhaustive "
                           "solving needs finite domains",
                           "infinite");
  std::vector<std::size_t> finite_axes, real_axes;
  for (std::size_t i = 0; i < sys.domains.size(); ++i)
    (sys.domains[i].real_line ? real_axes : finite_axes).push_back(i);

  // enumerate the finite part
  EquationSystem<Rational> finite_part;
  std::vector<std::string> finite_names;
  for (auto i : finite_axes) finite_names.push_back(sys.vars.name(i));
  finite_part.vars = VarSet(finite_names);
  for (auto i : finite_axes) finite_part.domains.push_back(sys.domains[i]);
  std::vector<Point<Rational>> assignments;
  detail::enumerate_points(finite_part, budget, assignments);

  RealSolveResult result;
  for (const auto& asg : assignments) {
    std::vector<std::pair<std::string, Rational>> bindings;
    for (std::size_t j = 0; j < finite_axes.size(); ++j)
      bindings.push_back({finite_part.vars.name(j), asg[j]});

    bool feasible = true;
    // residual roots per real variable; empty optional = unconstrained
    std::map<std::string, std::optional<std::vector<Rational>>> roots;
    std::map<std::string, int> root_counts;
    for (auto i : real_axes) roots[sys.vars.name(i)] = std::nullopt;
    bool all_exact = true;

    for (const auto& c : sys.constraints) {
      RatPoly sub = c.poly.substitute(bindings);
      RatPoly residual = sub - RatPoly::constant(c.rhs, sub.vars());
      if (residual.is_constant()) {
        if (!residual.constant_value().is_zero()) {
          feasible = false;
          break;
        }
        continue;
      }
      if (residual.vars().size() != 1)
        throw ValidationError(
            "real-domain constraints must be univariate after instantiation");
      std::string var = residual.vars().name(0);
      QuadraticReport rep = univariate_real_roots(residual);
      bool rep_exact =
          static_cast<int>(rep.rational_roots.size()) == rep.real_root_count;
      auto& slot = roots[var];
      if (!slot.has_value()) {
        root_counts[var] = rep.real_root_count;
        if (rep_exact) {
          slot = rep.rational_roots;
        } else {
          all_exact = false;
          slot = std::vector<Rational>{};  // count known, values not
        }
      } else {
        // intersect with previous constraints on the same variable
        if (!rep_exact)
          throw IrrationalSolution("cannot intersect irrational root sets");
        std::vector<Rational> merged;
        for (const auto& r : *slot)
          if (std::find(rep.rational_roots.begin(), rep.rational_roots.end(), r) !=
              rep.rational_roots.end())
            merged.push_back(r);
        slot = merged;
        root_counts[var] = static_cast<int>(merged.size());
      }
      if (root_counts[var] == 0) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;

    // every real variable must end up constrained to finitely many values
    for (auto i : real_axes)
      if (!roots[sys.vars.name(i)].has_value())
        throw InfiniteSolutionSet("real variable '" + sys.vars.name(i) +
                                  "' is unconstrained");

    std::size_t combo = 1;
    for (auto i : real_axes)
      combo *= static_cast<std::size_t>(root_counts[sys.vars.name(i)]);
    result.count += combo;
    if (!all_exact) {
      result.exact = false;
      continue;
    }
    // expand the Cartesian product of root lists into full points
    std::vector<Point<Rational>> expanded{{}};
    for (std::size_t vi = 0; vi < sys.vars.size(); ++vi) {
      std::vector<Point<Rational>> next;
      const std::string& name = sys.vars.name(vi);
      std::vector<Rational> options;
      if (std::find(real_axes.begin(), real_axes.end(), vi) != real_axes.end()) {
        options = *roots[name];
      } else {
        for (std::size_t j = 0; j < finite_axes.size(); ++j)
          if (finite_part.vars.name(j) == name) options = {asg[j]};
      }
      for (const auto& partial : expanded)
        for (const auto& opt : options) {
          Point<Rational> pt = partial;
          pt.push_back(opt);
          next.push_back(std::move(pt));
        }
      expanded = std::move(next);
    }
    for (auto& pt : expanded) result.points.push_back(std::move(pt));
  }
  std::sort(result.points.begin(), result.points.end());
  return result;
}

// Image of the (possibly real-domain) solution set under an objective.
inline SolutionValueSet<Rational> solution_value_set_real(
    const EquationSystem<Rational>& sys, const RatPoly& p,
    std::uint64_t budget = 1000000) {
  RealSolveResult r = solve_real(sys, budget);
  if (!r.exact) {
    // only count information survives; the objective must be a plain variable
    // for the count to transfer
    bool plain_var = p.terms().size() == 1 && total_degree(p.terms().begin()->first) == 1 &&
                     p.terms().begin()->second.is_one();
    if (!plain_var)
      throw IrrationalSolution("objective over irrational solutions");
    return SolutionValueSet<Rational>::inexact(r.count);
  }
  std::vector<Rational> vals;
  for (const auto& pt : r.points) vals.push_back(p.eval(pt));
  return SolutionValueSet<Rational>::of(std::move(vals));
}

}  // namespace lql
