#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lql/translate.hpp"

using namespace lql;

namespace {

const FieldSpec f2(2);
const FieldSpec f3(3);

FormulaPtr P() { return Formula::atom("p"); }
FormulaPtr Q() { return Formula::atom("q"); }

std::string modular(const FormulaPtr& f, const VarSet& vs) {
  return translate_formula(f, f2, vs).poly.to_string();
}
std::string boole(const FormulaPtr& f, const VarSet& vs) {
  return translate_formula(f, vs).poly.to_string();
}

FormulaPtr random_formula(std::mt19937& rng, const std::vector<std::string>& atoms,
                          int depth) {
  std::uniform_int_distribution<int> pick(0, depth == 0 ? 1 : 9);
  int k = pick(rng);
  if (k == 0) return Formula::constant(std::uniform_int_distribution<int>(0, 1)(rng));
  if (k == 1 || depth == 0) {
    std::uniform_int_distribution<std::size_t> ai(0, atoms.size() - 1);
    return Formula::atom(atoms[ai(rng)]);
  }
  if (k == 2) return Formula::negation(random_formula(rng, atoms, depth - 1));
  static const BinOp ops[] = {BinOp::And,     BinOp::Or,   BinOp::Xor, BinOp::Implies,
                              BinOp::Iff,     BinOp::Nand, BinOp::Nor};
  return Formula::binary(ops[(k - 3) % 7], random_formula(rng, atoms, depth - 1),
                         random_formula(rng, atoms, depth - 1));
}

}  // namespace

TEST_CASE("the full translation table, both modes") {
  VarSet vs({"p", "q"});
  struct Row {
    FormulaPtr f;
    std::string rational;
    std::string modular2;
  };
  std::vector<Row> table = {
      {Formula::constant(1), "1", "1"},
      {Formula::constant(0), "0", "0"},
      {Formula::negation(P()), "-p + 1", "p + 1"},
      {Formula::binary(BinOp::And, P(), Q()), "p*q", "p*q"},
      {Formula::binary(BinOp::Xor, P(), Q()), "-2*p*q + p + q", "p + q"},
      {Formula::binary(BinOp::Or, P(), Q()), "-p*q + p + q", "p*q + p + q"},
      {Formula::binary(BinOp::Implies, P(), Q()), "p*q - p + 1", "p*q + p + 1"},
      {Formula::binary(BinOp::Iff, P(), Q()), "2*p*q - p - q + 1", "p + q + 1"},
      {Formula::binary(BinOp::Nand, P(), Q()), "-p*q + 1", "p*q + 1"},
      {Formula::binary(BinOp::Nor, P(), Q()), "p*q - p - q + 1", "p*q + p + q + 1"},
  };
  for (const auto& row : table) {
    CHECK(boole(row.f, vs) == row.rational);
    CHECK(modular(row.f, vs) == row.modular2);
  }
}

TEST_CASE("Boole mode emits idempotence side constraints per atom") {
  VarSet vs({"x", "y"});
  auto t = translate_formula(Formula::binary(BinOp::Implies, Formula::atom("x"),
                                             Formula::atom("y")),
                             vs);
  CHECK(t.poly.to_string() == "x*y - x + 1");
  REQUIRE(t.side_constraints.size() == 2);
  CHECK(t.side_constraints[0].to_string() == "x^2 - x = 0");
  CHECK(t.side_constraints[1].to_string() == "y^2 - y = 0");

  auto m = translate_formula(Formula::binary(BinOp::Implies, Formula::atom("x"),
                                             Formula::atom("y")),
                             f2, vs);
  CHECK(m.poly.to_string() == "x*y + x + 1");
  CHECK(m.side_constraints.empty());
}

TEST_CASE("conjunction of xor inside and") {
  VarSet vs({"w", "y", "z"});
  auto f = Formula::binary(BinOp::And, Formula::atom("y"),
                           Formula::binary(BinOp::Xor, Formula::atom("z"),
                                           Formula::atom("w")));
  // y AND (z XOR w) => yz + yw - 2yzw
  CHECK(boole(f, vs) == "-2*w*y*z + w*y + y*z");
}

TEST_CASE("translation soundness against truth tables") {
  std::mt19937 rng(2024);
  std::vector<std::string> atoms = {"x", "y", "z"};
  VarSet vs(atoms);
  auto points = index_vectors(2, 3);
  for (int trial = 0; trial < 200; ++trial) {
    FormulaPtr f = random_formula(rng, atoms, 5);
    auto table = truth_table(f, vs);
    auto mp = translate_formula(f, f2, vs).poly;
    auto rp = translate_formula(f, vs).poly;
    for (std::size_t i = 0; i < points.size(); ++i) {
      Point<Fp> fpt;
      Point<Rational> rpt;
      for (auto v : points[i]) {
        fpt.emplace_back(v, f2);
        rpt.emplace_back(v);
      }
      CHECK(mp.eval(fpt) == Fp(table.values[i], f2));
      // mode agreement: the two translations agree pointwise on {0,1}^n
      CHECK(rp.eval(rpt) == Rational(table.values[i]));
    }
  }
}

TEST_CASE("axioms become equations q = 1") {
  VarSet vs({"x", "y"});
  std::vector<Judgment> axioms = {
      {Formula::atom("x")},
      {Formula::binary(BinOp::Implies, Formula::atom("x"), Formula::atom("y"))}};
  auto sys = axioms_to_system(axioms, f2, vs, false);
  REQUIRE(sys.constraints.size() == 2);
  CHECK(sys.constraints[0].to_string() == "x = 1");
  CHECK(sys.constraints[1].to_string() == "x*y + x + 1 = 1");

  auto conjoined = axioms_to_system(axioms, f2, vs, true);
  REQUIRE(conjoined.constraints.size() == 1);
  CHECK(conjoined.constraints[0].to_string() == "x*y + 1 = 0");
}

TEST_CASE("Carroll's axioms conjoin to abc + ab + a") {
  VarSet vs({"a", "b", "c"});
  auto ax1 = Formula::binary(
      BinOp::Implies, Formula::atom("c"),
      Formula::binary(BinOp::Implies, Formula::atom("a"),
                      Formula::negation(Formula::atom("b"))));
  auto ax2 = Formula::binary(BinOp::Implies, Formula::atom("a"), Formula::atom("b"));
  CHECK(modular(ax1, vs) == "a*b*c + 1");
  CHECK(modular(ax2, vs) == "a*b + a + 1");
  auto sys = axioms_to_system({{ax1}, {ax2}}, f2, vs, true);
  REQUIRE(sys.constraints.size() == 1);
  CHECK(sys.constraints[0].to_string() == "a*b*c + a*b + a = 0");
}

TEST_CASE("empty axiom set conjoins to the tautology 0 = 0") {
  VarSet vs({"x"});
  auto sys = axioms_to_system({}, f2, vs, true);
  REQUIRE(sys.constraints.size() == 1);
  CHECK(sys.constraints[0].poly.is_zero());
  CHECK(sys.constraints[0].rhs == Fp(0, f2));
}

TEST_CASE("conjoining needs F_2") {
  VarSet vs({"x"});
  CHECK_THROWS_AS(axioms_to_system({{Formula::atom("x")}}, f3, vs, true),
                  ConjoinUnsupported);
}

TEST_CASE("Boole-mode systems materialize idempotence equations") {
  VarSet vs({"x", "y"});
  auto sys = axioms_to_system({{Formula::atom("x")}}, vs);
  REQUIRE(sys.constraints.size() == 3);  // x = 1, x^2 - x = 0, y^2 - y = 0
  CHECK(sys.constraints[0].to_string() == "x = 1");
  CHECK(sys.constraints[1].to_string() == "x^2 - x = 0");
  CHECK(sys.constraints[2].to_string() == "y^2 - y = 0");
}

TEST_CASE("XOR interpolation: rational coefficients (-2,1,1,0)") {
  VarSet vs({"x", "y"});
  FiniteIntegerFunction T(2, 2, {0, 1, 1, 0});
  auto r = interpolate<Rational>(T, {}, vs);
  REQUIRE(r.coeffs.size() == 4);
  CHECK(r.coeffs[0] == Rational(-2));
  CHECK(r.coeffs[1] == Rational(1));
  CHECK(r.coeffs[2] == Rational(1));
  CHECK(r.coeffs[3] == Rational(0));
  CHECK(r.poly.to_string() == "-2*x*y + x + y");

  auto m = interpolate<Fp>(T, f2, vs);
  CHECK(m.poly.to_string() == "x + y");
  CHECK(m.coeffs == std::vector<Fp>{Fp(0, f2), Fp(1, f2), Fp(1, f2), Fp(0, f2)});
}

TEST_CASE("quadratic-demo interpolation: -c^2 + c + 2") {
  VarSet vs({"c"});
  FiniteIntegerFunction T(3, 1, {0, 2, 2});  // T(2)=0, T(1)=2, T(0)=2
  auto r = interpolate<Rational>(T, {}, vs);
  CHECK(r.poly.to_string() == "-c^2 + c + 2");
}

TEST_CASE("interpolation agrees with the table everywhere") {
  std::mt19937 rng(5);
  for (auto [dm, n] : std::vector<std::pair<std::int64_t, std::size_t>>{
           {2, 2}, {3, 1}, {3, 2}}) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, char('x' + i)));
    VarSet vs(names);
    auto points = index_vectors(dm, n);
    std::uniform_int_distribution<std::int64_t> val(0, dm - 1);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<std::int64_t> values;
      for (std::size_t i = 0; i < points.size(); ++i) values.push_back(val(rng));
      FiniteIntegerFunction T(dm, n, values);

      auto r = interpolate<Rational>(T, {}, vs);
      auto m = interpolate<Fp>(T, FieldSpec(dm), vs);
      for (std::size_t i = 0; i < points.size(); ++i) {
        Point<Rational> rpt;
        Point<Fp> fpt;
        for (auto v : points[i]) {
          rpt.emplace_back(v);
          fpt.emplace_back(v, FieldSpec(dm));
        }
        CHECK(r.poly.eval(rpt) == Rational(T.values[i]));
        CHECK(m.poly.eval(fpt) == Fp(T.values[i], FieldSpec(dm)));
      }
    }
  }
}

TEST_CASE("indeterminate interpolation reproduces the printed parametric polynomials") {
  VarSet vs({"x", "y"});
  auto p1 = interpolate_indeterminate<Rational>(2, vs, {});
  CHECK(p1.to_string() ==
        "x*y*z1 - x*y*z2 - x*y*z3 + x*y*z4 - x*z1 + x*z3 - y*z1 + y*z2 + z1");
  auto p2 = interpolate_indeterminate<Fp>(2, vs, f2);
  CHECK(p2.to_string() ==
        "x*y*z1 + x*y*z2 + x*y*z3 + x*y*z4 + x*z1 + x*z3 + y*z1 + y*z2 + z1");
}

TEST_CASE("substituting a table into the indeterminate polynomial") {
  VarSet vs({"x", "y"});
  auto p1 = interpolate_indeterminate<Rational>(2, vs, {});
  auto p2 = interpolate_indeterminate<Fp>(2, vs, f2);

  FiniteIntegerFunction xorT(2, 2, {0, 1, 1, 0});
  CHECK(substitute_table(p1, xorT).to_string() == "-2*x*y + x + y");
  CHECK(substitute_table(p2, xorT).to_string() == "x + y");

  // an asymmetric table exercises the z-labeling convention
  FiniteIntegerFunction impliesT(2, 2, {1, 0, 1, 1});
  CHECK(substitute_table(p1, impliesT) ==
        interpolate<Rational>(impliesT, {}, vs).poly);
  CHECK(substitute_table(p2, impliesT) == interpolate<Fp>(impliesT, f2, vs).poly);
}
