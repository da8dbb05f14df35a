#pragma once

#include <string>
#include <vector>

#include "lql/errors.hpp"
#include "lql/field.hpp"
#include "lql/logic.hpp"
#include "lql/poly.hpp"
#include "lql/system.hpp"

namespace lql {

// Formula translation, coefficient domain K = Rational (Boole's original
// scheme over Q, idempotence imposed by explicit x^2 = x constraints) or
// K = Fp (modular scheme, no side constraints needed).
//
// The recursive substitutions:
//              Q[x]               F_2[x]
//   t          1                  1
//   f          0                  0
//   !p         1 - p              1 + p
//   p & q      p*q                p*q
//   p ^ q      p + q - 2pq        p + q
//   p | q      p + q - pq         p + q + pq
//   p -> q     1 - p + pq         1 + p + pq
//   p <-> q    1 - p - q + 2pq    1 + p + q
//   nand       1 - pq             1 + pq
//   nor        1 - p - q + pq     1 + p + q + pq

namespace detail {

template <class K>
Poly<K> translate_node(const Formula& f, const typename K::Context& ctx,
                       const VarSet& vars);

template <class K>
Poly<K> translate_bin(BinOp op, const Poly<K>& p, const Poly<K>& q,
                      const typename K::Context& ctx, const VarSet& vars) {
  const Poly<K> one = Poly<K>::constant(K::one(ctx), vars);
  const Poly<K> pq = p * q;
  const bool modular2 = std::is_same_v<K, Fp>;
  switch (op) {
    case BinOp::And:
      return pq;
    case BinOp::Xor:
      if (modular2) return p + q;
      return p + q - pq.scaled(K::one(ctx) + K::one(ctx));
    case BinOp::Or:
      if (modular2) return p + q + pq;
      return p + q - pq;
    case BinOp::Implies:
      if (modular2) return one + p + pq;
      return one - p + pq;
    case BinOp::Iff:
      if (modular2) return one + p + q;
      return one - p - q + pq.scaled(K::one(ctx) + K::one(ctx));
    case BinOp::Nand:
      if (modular2) return one + pq;
      return one - pq;
    case BinOp::Nor:
      if (modular2) return one + p + q + pq;
      return one - p - q + pq;
  }
  return pq;
}

template <class K>
Poly<K> translate_node(const Formula& f, const typename K::Context& ctx,
                       const VarSet& vars) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return Poly<K>::variable(f.atom_name(), ctx, vars);
    case Formula::Kind::Const: {
      K value = K::zero(ctx);
      const K one = K::one(ctx);
      for (std::int64_t i = 0; i < f.const_value(); ++i) value = value + one;
      return Poly<K>::constant(value, vars);
    }
    case Formula::Kind::Not: {
      // 1 - p over Q; 1 + p over F_2 (same thing mod 2)
      Poly<K> inner = translate_node<K>(*f.lhs(), ctx, vars);
      if (std::is_same_v<K, Fp>)
        return Poly<K>::constant(K::one(ctx), vars) + inner;
      return Poly<K>::constant(K::one(ctx), vars) - inner;
    }
    case Formula::Kind::Bin: {
      Poly<K> p = translate_node<K>(*f.lhs(), ctx, vars);
      Poly<K> q = translate_node<K>(*f.rhs(), ctx, vars);
      return translate_bin(f.op(), p, q, ctx, vars);
    }
  }
  return Poly<K>::zero(ctx, vars);
}

inline void check_formula(const Formula& f, std::int64_t d) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return;
    case Formula::Kind::Const:
      if (f.const_value() < 0 || f.const_value() >= d)
        throw ValidationError("constant " + std::to_string(f.const_value()) +
                              " outside truth values of d = " + std::to_string(d));
      return;
    case Formula::Kind::Not:
      if (d != 2) throw UnsupportedArity("standard connectives are defined for d = 2 only");
      check_formula(*f.lhs(), d);
      return;
    case Formula::Kind::Bin:
      if (d != 2) throw UnsupportedArity("standard connectives are defined for d = 2 only");
      check_formula(*f.lhs(), d);
      check_formula(*f.rhs(), d);
      return;
  }
}

}  // namespace detail

template <class K>
struct Translation {
  Poly<K> poly;
  std::vector<Constraint<K>> side_constraints;  // x^2 - x = 0, Boole mode only
};

// Modular mode.  Connectives demand d = 2; constants and atoms are fine for
// any prime order.
inline Translation<Fp> translate_formula(const FormulaPtr& f, const FieldSpec& field,
                                         const VarSet& vars) {
  detail::check_formula(*f, field.modulus);
  return {detail::translate_node<Fp>(*f, field, vars), {}};
}

// Boole mode: rational coefficients plus one idempotence constraint
// x^2 - x = 0 per atom occurring in the formula.
inline Translation<Rational> translate_formula(const FormulaPtr& f, const VarSet& vars) {
  detail::check_formula(*f, 2);
  Translation<Rational> t{detail::translate_node<Rational>(*f, {}, vars), {}};
  std::vector<std::string> atoms;
  f->collect_atoms(atoms);
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  for (const auto& a : atoms) {
    Poly<Rational> x = Poly<Rational>::variable(a, {}, vars);
    t.side_constraints.push_back({x * x - x, Rational(0)});
  }
  return t;
}

// --- Axiom sets -> equation systems ---------------------------------------

// Each axiom |- q becomes the equation q = 1.  With `conjoin` set (modular
// d = 2 only) the equations are replaced by the single constraint q* = 0
// where q* = (q_1)(q_2)...(q_m) - 1; zero axioms give the tautology 0 = 0.
inline EquationSystem<Fp> axioms_to_system(const std::vector<Judgment>& axioms,
                                           const FieldSpec& field, const VarSet& vars,
                                           bool conjoin = false) {
  EquationSystem<Fp> sys = full_field_system(field, vars);
  if (conjoin) {
    if (field.modulus != 2)
      throw ConjoinUnsupported("the conjunction transform needs F_2 coefficients");
    FpPoly product = FpPoly::constant(Fp(1, field), vars);
    for (const auto& j : axioms)
      product = product * translate_formula(j.content, field, vars).poly;
    FpPoly qstar = product - FpPoly::constant(Fp(1, field), vars);
    sys.add_constraint(qstar, Fp(0, field));
    return sys;
  }
  for (const auto& j : axioms)
    sys.add_constraint(translate_formula(j.content, field, vars).poly, Fp(1, field));
  return sys;
}

inline EquationSystem<Rational> axioms_to_system(const std::vector<Judgment>& axioms,
                                                 const VarSet& vars) {
  EquationSystem<Rational> sys = boolean_rational_system(vars);
  for (const auto& j : axioms)
    sys.add_constraint(translate_formula(j.content, vars).poly, Rational(1));
  // idempotence constraints for every declared variable
  for (const auto& name : vars.names()) {
    Poly<Rational> x = Poly<Rational>::variable(name, {}, vars);
    sys.add_constraint(x * x - x, Rational(0));
  }
  return sys;
}

// --- Interpolation (polynomial encoding by exact linear algebra) ----------

template <class K>
struct Interpolation {
  std::vector<K> coeffs;  // one per monomial of the basis, basis order
  Poly<K> poly;
};

namespace detail {

// Solve M c = z by Gaussian elimination over an exact field.
template <class K>
std::vector<K> solve_linear(std::vector<std::vector<K>> m, std::vector<K> z,
                            const typename K::Context& ctx) {
  const std::size_t n = z.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw SingularMatrix("interpolation matrix is singular");
    std::swap(m[pivot], m[col]);
    std::swap(z[pivot], z[col]);
    K inv = m[col][col].inverse();
    for (std::size_t j = col; j < n; ++j) m[col][j] = m[col][j] * inv;
    z[col] = z[col] * inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col].is_zero()) continue;
      K factor = m[row][col];
      for (std::size_t j = col; j < n; ++j)
        m[row][j] = m[row][j] - factor * m[col][j];
      z[row] = z[row] - factor * z[col];
    }
  }
  return z;
}

template <class K>
K from_integer(std::int64_t v, const typename K::Context& ctx) {
  if constexpr (std::is_same_v<K, Fp>) {
    return Fp(v, ctx);
  } else {
    return Rational(v);
  }
}

// Matrix M with M[i][j] = monomial t_j evaluated at point a_i (0^0 = 1),
// over the index vectors of (Z_d)^n in their fixed descending order.
template <class K>
std::vector<std::vector<K>> interpolation_matrix(std::int64_t d, std::size_t n,
                                                 const typename K::Context& ctx) {
  auto points = index_vectors(d, n);
  const std::size_t size = points.size();
  std::vector<std::vector<K>> m(size, std::vector<K>(size, K::zero(ctx)));
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      K entry = K::one(ctx);
      for (std::size_t v = 0; v < n; ++v) {
        std::int64_t base = points[i][v];
        std::int64_t exp = points[j][v];
        if (exp > 0) entry = entry * from_integer<K>(base, ctx).pow(exp);
      }
      m[i][j] = entry;
    }
  }
  return m;
}

}  // namespace detail

// Finds the unique reduced polynomial agreeing with T at all d^n points, by
// solving the d^n x d^n linear system M c = z exactly.
template <class K>
Interpolation<K> interpolate(const FiniteIntegerFunction& T,
                             const typename K::Context& ctx, const VarSet& vars) {
  if (vars.size() != T.arity)
    throw ArityMismatch("variable set does not match function arity");
  if constexpr (std::is_same_v<K, Fp>) {
    if (ctx.modulus != T.order)
      throw DomainMismatch("function order does not match the field order");
  }
  auto m = detail::interpolation_matrix<K>(T.order, T.arity, ctx);
  std::vector<K> z;
  z.reserve(T.values.size());
  for (auto v : T.values) z.push_back(detail::from_integer<K>(v, ctx));
  std::vector<K> coeffs = detail::solve_linear(std::move(m), std::move(z), ctx);
  auto basis = monomial_basis(T.order, T.arity);
  Poly<K> p(ctx, vars);
  for (std::size_t j = 0; j < basis.size(); ++j) p.add_term(basis[j], coeffs[j]);
  return {std::move(coeffs), std::move(p)};
}

// Fully parametric interpolation: the table values are left indeterminate as
// fresh variables z_1 .. z_{d^n}, indexed by points in ascending order.  The
// result is sum_k z_k * chi_k with chi_k the indicator polynomial of the
// k-th point; substituting concrete values reproduces interpolate().
template <class K>
Poly<K> interpolate_indeterminate(std::int64_t d, const VarSet& vars,
                                  const typename K::Context& ctx,
                                  std::uint64_t budget = 1000000) {
  const std::size_t n = vars.size();
  BigInt points_count = 1;
  for (std::size_t i = 0; i < n; ++i) points_count *= d;
  if (points_count > budget)
    throw BudgetExceeded("indeterminate interpolation needs " + points_count.str() +
                             " z-variables, budget is " + std::to_string(budget),
                         points_count.str());
  const std::size_t m = points_count.convert_to<std::size_t>();

  std::vector<std::string> names = vars.names();
  for (std::size_t k = 1; k <= m; ++k) {
    std::string zname = "z" + std::to_string(k);
    if (vars.contains(zname))
      throw DuplicateDeclaration("variable '" + zname + "' collides with a z-coefficient");
    names.push_back(zname);
  }
  VarSet ext(names);

  auto points = index_vectors(d, n);           // descending
  std::reverse(points.begin(), points.end());  // z-variables label ascending points

  Poly<K> result = Poly<K>::zero(ctx, ext);
  for (std::size_t k = 0; k < m; ++k) {
    // indicator of points[k]: product over coordinates
    Poly<K> chi = Poly<K>::constant(K::one(ctx), ext);
    for (std::size_t v = 0; v < n; ++v) {
      Poly<K> x = Poly<K>::variable(vars.name(v), ctx, ext);
      K a = detail::from_integer<K>(points[k][v], ctx);
      if constexpr (std::is_same_v<K, Fp>) {
        // 1 - (x - a)^(d-1)
        Poly<K> diff = x - Poly<K>::constant(a, ext);
        Poly<K> pw = Poly<K>::constant(K::one(ctx), ext);
        for (std::int64_t e = 0; e < d - 1; ++e) pw = pw * diff;
        chi = chi * (Poly<K>::constant(K::one(ctx), ext) - pw);
      } else {
        // Lagrange factor prod_{b != a} (x - b)/(a - b)
        Poly<K> factor = Poly<K>::constant(K::one(ctx), ext);
        for (std::int64_t b = 0; b < d; ++b) {
          if (b == points[k][v]) continue;
          K bk = detail::from_integer<K>(b, ctx);
          factor = factor * (x - Poly<K>::constant(bk, ext)).scaled((a - bk).inverse());
        }
        chi = chi * factor;
      }
    }
    Poly<K> zk = Poly<K>::variable("z" + std::to_string(k + 1), ctx, ext);
    result = result + zk * chi;
  }
  return result;
}

// Substitutes a concrete table into an indeterminate interpolation.  The
// table is given in the usual descending index order; z_k belongs to the
// k-th ascending point, so the values are matched up in reverse.
template <class K>
Poly<K> substitute_table(const Poly<K>& indeterminate, const FiniteIntegerFunction& T) {
  std::vector<std::pair<std::string, K>> bindings;
  const std::size_t m = T.values.size();
  for (std::size_t k = 1; k <= m; ++k)
    bindings.push_back({"z" + std::to_string(k),
                        detail::from_integer<K>(T.values[m - k], indeterminate.context())});
  return indeterminate.substitute(bindings);
}

}  // namespace lql
