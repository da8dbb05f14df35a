#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lql/errors.hpp"
#include "lql/poly.hpp"

namespace lql {

// Per-variable value domain: an explicit finite set, or the real line (the
// latter only in rational mode, solved through the quadratic root oracle).
template <class K>
struct VarDomain {
  bool real_line = false;
  bool integer_line = false;  // unbounded ZZ/NN domain; not enumerable
  std::vector<K> values;      // finite domain, ascending; empty when unbounded

  static VarDomain finite(std::vector<K> vals) {
    VarDomain d;
    d.values = std::move(vals);
    std::sort(d.values.begin(), d.values.end());
    d.values.erase(std::unique(d.values.begin(), d.values.end()), d.values.end());
    return d;
  }
  static VarDomain reals() {
    VarDomain d;
    d.real_line = true;
    return d;
  }

  bool operator==(const VarDomain& o) const {
    return real_line == o.real_line && integer_line == o.integer_line &&
           values == o.values;
  }
};

// One constraint: polynomial = required constant.
template <class K>
struct Constraint {
  Poly<K> poly;
  K rhs;

  std::string to_string() const { return poly.to_string() + " = " + rhs.to_string(); }
};

// Variables with domain declarations plus a list of polynomial constraints.
template <class K>
struct EquationSystem {
  VarSet vars;
  std::vector<VarDomain<K>> domains;  // one per variable, in VarSet order
  std::vector<Constraint<K>> constraints;

  void add_constraint(Poly<K> p, K rhs) { constraints.push_back({std::move(p), std::move(rhs)}); }

  bool has_real_vars() const {
    for (const auto& d : domains)
      if (d.real_line) return true;
    return false;
  }
};

// All variables over the full field F_d.
inline EquationSystem<Fp> full_field_system(const FieldSpec& field, const VarSet& vars) {
  EquationSystem<Fp> sys;
  sys.vars = vars;
  std::vector<Fp> all;
  for (std::int64_t v = 0; v < field.modulus; ++v) all.emplace_back(v, field);
  for (std::size_t i = 0; i < vars.size(); ++i)
    sys.domains.push_back(VarDomain<Fp>::finite(all));
  return sys;
}

// All variables over {0, 1} (Boole mode).
inline EquationSystem<Rational> boolean_rational_system(const VarSet& vars) {
  EquationSystem<Rational> sys;
  sys.vars = vars;
  for (std::size_t i = 0; i < vars.size(); ++i)
    sys.domains.push_back(VarDomain<Rational>::finite({Rational(0), Rational(1)}));
  return sys;
}

}  // namespace lql
