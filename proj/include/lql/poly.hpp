#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lql/errors.hpp"
#include "lql/field.hpp"

namespace lql {

// Ordered set of variable names.  Names are kept sorted so that index
// vectors, monomial order, and rendering are stable for a computation.
class VarSet {
public:
  VarSet() = default;

  explicit VarSet(std::vector<std::string> names) : names_(std::move(names)) {
    std::sort(names_.begin(), names_.end());
    for (std::size_t i = 1; i < names_.size(); ++i)
      if (names_[i] == names_[i - 1])
        throw DuplicateDeclaration("variable '" + names_[i] + "' declared twice");
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }

  bool contains(const std::string& n) const {
    return std::binary_search(names_.begin(), names_.end(), n);
  }

  std::size_t index_of(const std::string& n) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), n);
    if (it == names_.end() || *it != n)
      throw UndeclaredIdentifier("variable '" + n + "' is not declared");
    return static_cast<std::size_t>(it - names_.begin());
  }

  bool operator==(const VarSet& o) const { return names_ == o.names_; }
  bool operator!=(const VarSet& o) const { return names_ != o.names_; }

private:
  std::vector<std::string> names_;
};

// Exponent vector, one entry per variable of the owning VarSet.
using Monomial = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Monomial& m) {
  std::uint64_t d = 0;
  for (auto e : m) d += e;
  return d;
}

// Graded lexicographic, descending: higher total degree first, ties broken
// by lexicographically larger exponent vector first.  Map iteration in this
// order yields the canonical leading-term-first rendering.
struct MonomialOrderDesc {
  bool operator()(const Monomial& a, const Monomial& b) const {
    std::uint64_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

namespace detail {

// Exponent reduction in F_d: rewrite e >= d to ((e-1) mod (d-1)) + 1, which
// leaves the function on F_d unchanged (a^d = a).
inline std::uint32_t reduce_exponent(std::uint32_t e, std::int64_t d) {
  if (e < static_cast<std::uint64_t>(d)) return e;
  return static_cast<std::uint32_t>((e - 1) % (d - 1) + 1);
}

template <class K>
struct CoeffOps;

template <>
struct CoeffOps<Fp> {
  static Monomial reduce(Monomial m, const FieldSpec& ctx) {
    for (auto& e : m) e = reduce_exponent(e, ctx.modulus);
    return m;
  }
};

template <>
struct CoeffOps<Rational> {
  // Rational-mode polynomials are not exponent-reduced (x^2 != x in Q[x]).
  static Monomial reduce(Monomial m, const Rational::Context&) { return m; }
};

}  // namespace detail

// Reduced multivariate polynomial over a coefficient domain K (Fp or
// Rational).  Zero coefficients are never stored; in modular mode every
// exponent is kept below the field order.
template <class K>
class Poly {
public:
  using Context = typename K::Context;
  using Terms = std::map<Monomial, K, MonomialOrderDesc>;

  Poly(Context ctx, VarSet vars) : ctx_(std::move(ctx)), vars_(std::move(vars)) {}

  static Poly zero(const Context& ctx, const VarSet& vars) { return Poly(ctx, vars); }

  static Poly constant(const K& value, const VarSet& vars) {
    Poly p(value.context(), vars);
    p.add_term(Monomial(vars.size(), 0), value);
    return p;
  }

  static Poly variable(const std::string& name, const Context& ctx, const VarSet& vars) {
    Poly p(ctx, vars);
    Monomial m(vars.size(), 0);
    m[vars.index_of(name)] = 1;
    p.add_term(m, K::one(ctx));
    return p;
  }

  static Poly monomial_term(const Monomial& m, const K& coeff, const VarSet& vars) {
    Poly p(coeff.context(), vars);
    p.add_term(m, coeff);
    return p;
  }

  const Context& context() const { return ctx_; }
  const VarSet& vars() const { return vars_; }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }

  K constant_value() const {
    if (terms_.empty()) return K::zero(ctx_);
    return terms_.begin()->second;
  }

  std::uint64_t degree() const {
    return terms_.empty() ? 0 : total_degree(terms_.begin()->first);
  }

  void add_term(const Monomial& m, const K& c) {
    if (m.size() != vars_.size())
      throw ArityMismatch("monomial arity does not match variable set");
    if (c.is_zero()) return;
    Monomial r = detail::CoeffOps<K>::reduce(m, ctx_);
    auto it = terms_.find(r);
    if (it == terms_.end()) {
      terms_.emplace(std::move(r), c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Poly operator+(const Poly& o) const {
    check(o);
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }

  Poly operator-(const Poly& o) const {
    check(o);
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
  }

  Poly operator-() const {
    Poly r(ctx_, vars_);
    for (const auto& [m, c] : terms_) r.add_term(m, -c);
    return r;
  }

  Poly operator*(const Poly& o) const {
    check(o);
    Poly r(ctx_, vars_);
    for (const auto& [ma, ca] : terms_) {
      for (const auto& [mb, cb] : o.terms_) {
        Monomial m(ma.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    }
    return r;
  }

  Poly scaled(const K& k) const {
    Poly r(ctx_, vars_);
    for (const auto& [m, c] : terms_) r.add_term(m, c * k);
    return r;
  }

  bool operator==(const Poly& o) const {
    return ctx_ == o.ctx_ && vars_ == o.vars_ && terms_ == o.terms_;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  bool operator<(const Poly& o) const {
    return std::lexicographical_compare(
        terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
        [](const auto& a, const auto& b) {
          if (a.first != b.first) return MonomialOrderDesc{}(a.first, b.first);
          return a.second < b.second;
        });
  }

  K eval(const std::vector<K>& point) const {
    if (point.size() != vars_.size())
      throw ArityMismatch("evaluation point has " + std::to_string(point.size()) +
                          " coordinates, polynomial has " +
                          std::to_string(vars_.size()) + " variables");
    K acc = K::zero(ctx_);
    for (const auto& [m, c] : terms_) {
      K term = c;
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0) term = term * point[i].pow(m[i]);
      acc = acc + term;
    }
    return acc;
  }

  // Evaluate against a subset of the variables, producing a polynomial over
  // the remaining ones (used for template instantiation).
  Poly substitute(const std::vector<std::pair<std::string, K>>& bindings) const {
    std::vector<std::string> rest;
    std::vector<int> bound(vars_.size(), -1);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      for (std::size_t b = 0; b < bindings.size(); ++b)
        if (bindings[b].first == vars_.name(i)) bound[i] = static_cast<int>(b);
      if (bound[i] < 0) rest.push_back(vars_.name(i));
    }
    VarSet new_vars(rest);
    Poly r(ctx_, new_vars);
    for (const auto& [m, c] : terms_) {
      K coeff = c;
      Monomial nm(new_vars.size(), 0);
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (bound[i] >= 0)
          coeff = coeff * bindings[static_cast<std::size_t>(bound[i])].second.pow(m[i]);
        else
          nm[new_vars.index_of(vars_.name(i))] = m[i];
      }
      r.add_term(nm, coeff);
    }
    return r;
  }

  // Canonical text form: terms in monomial order, '+'-separated, coefficients
  // printed only when != 1, e.g. "x*y + x + 1".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string cs = c.to_string();
      bool negative = !cs.empty() && cs[0] == '-';
      std::string mag = negative ? cs.substr(1) : cs;
      if (first) {
        if (negative) out += "-";
        first = false;
      } else {
        out += negative ? " - " : " + ";
      }
      std::string vars_part;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!vars_part.empty()) vars_part += "*";
        vars_part += vars_.name(i);
        if (m[i] > 1) vars_part += "^" + std::to_string(m[i]);
      }
      if (vars_part.empty()) {
        out += mag;
      } else if (mag == "1") {
        out += vars_part;
      } else {
        out += mag + "*" + vars_part;
      }
    }
    return out;
  }

private:
  void check(const Poly& o) const {
    if (ctx_ != o.ctx_)
      throw DomainMismatch("polynomials have different coefficient domains");
    if (vars_ != o.vars_)
      throw DomainMismatch("polynomials have different variable sets");
  }

  Context ctx_;
  VarSet vars_;
  Terms terms_;
};

using FpPoly = Poly<Fp>;
using RatPoly = Poly<Rational>;

// A point of the affine space, one coordinate per variable.
template <class K>
using Point = std::vector<K>;

// Index vectors of (Z_d)^n in descending order: (d-1,...,d-1) down to
// (0,...,0).  This is the fixed order used for truth tables, interpolation
// and monomial bases.
inline std::vector<std::vector<std::int64_t>> index_vectors(std::int64_t d, std::size_t n) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur(n, d - 1);
  while (true) {
    out.push_back(cur);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (cur[i] > 0) {
        --cur[i];
        for (std::size_t j = i + 1; j < n; ++j) cur[j] = d - 1;
        break;
      }
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

// The d^n monomials of the reduced ring, one per index vector (the vector
// supplies the exponents).
inline std::vector<Monomial> monomial_basis(std::int64_t d, std::size_t n) {
  std::vector<Monomial> out;
  for (const auto& iv : index_vectors(d, n)) {
    Monomial m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<std::uint32_t>(iv[i]);
    out.push_back(std::move(m));
  }
  return out;
}

// d^(d^n), the number of reduced polynomials in F_d over n variables.
// Only computed exactly while d^n stays small; anything larger dwarfs every
// feasible enumeration budget and is reported as a power formula instead.
inline std::string ring_size_string(std::int64_t d, std::size_t n) {
  BigInt monomials = 1;
  for (std::size_t i = 0; i < n; ++i) monomials *= d;
  if (monomials <= 4096) {
    BigInt count = boost::multiprecision::pow(BigInt(d), monomials.convert_to<unsigned>());
    return count.str();
  }
  return std::to_string(d) + "^" + monomials.str();
}

inline BigInt ring_size(std::int64_t d, std::size_t n) {
  BigInt monomials = 1;
  for (std::size_t i = 0; i < n; ++i) monomials *= d;
  if (monomials > 4096)
    throw BudgetExceeded("ring of F_" + std::to_string(d) + " over " +
                             std::to_string(n) + " variables is far too large",
                         ring_size_string(d, n));
  BigInt count = boost::multiprecision::pow(BigInt(d), monomials.convert_to<unsigned>());
  return count;
}

// Streams all d^(d^n) reduced polynomials of F_d[vars] in a deterministic
// order: coefficient tuples counted lexicographically over the monomial
// basis, last monomial (the constant) varying fastest.
class RingEnumerator {
public:
  RingEnumerator(FieldSpec field, VarSet vars, std::uint64_t budget = 1000000)
      : field_(field), vars_(std::move(vars)),
        basis_(monomial_basis(field.modulus, vars_.size())) {
    std::string required = ring_size_string(field_.modulus, vars_.size());
    bool over = true;
    if (required.find('^') == std::string::npos) {
      BigInt count(required);
      if (count <= budget) {
        over = false;
        count_ = count.convert_to<std::uint64_t>();
      }
    }
    if (over)
      throw BudgetExceeded("ring enumeration needs " + required +
                               " polynomials, budget is " + std::to_string(budget),
                           required);
    digits_.assign(basis_.size(), 0);
  }

  std::uint64_t count() const { return count_; }
  bool done() const { return emitted_ == count_; }

  FpPoly next() {
    FpPoly p(field_, vars_);
    for (std::size_t j = 0; j < basis_.size(); ++j)
      if (digits_[j] != 0) p.add_term(basis_[j], Fp(digits_[j], field_));
    ++emitted_;
    // increment the coefficient tuple, last digit fastest
    for (std::size_t j = basis_.size(); j > 0;) {
      --j;
      if (++digits_[j] < field_.modulus) break;
      digits_[j] = 0;
    }
    return p;
  }

private:
  FieldSpec field_;
  VarSet vars_;
  std::vector<Monomial> basis_;
  std::vector<std::int64_t> digits_;
  std::uint64_t count_ = 0;
  std::uint64_t emitted_ = 0;
};

inline std::vector<FpPoly> enumerate_ring(FieldSpec field, const VarSet& vars,
                                          std::uint64_t budget = 1000000) {
  RingEnumerator en(field, vars, budget);
  std::vector<FpPoly> out;
  out.reserve(en.count());
  while (!en.done()) out.push_back(en.next());
  return out;
}

}  // namespace lql
