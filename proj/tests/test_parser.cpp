#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lql/parser.hpp"

using namespace lql;

TEST_CASE("declarations, axioms and queries") {
  Program p = parse_program(
      "// Carroll's barbershop\n"
      "var a, b, c;\n"
      "|- c -> (a -> !b);\n"
      "|- a -> b;\n"
      "query c;\n");
  CHECK(p.vars.size() == 3);
  CHECK(p.judgments.size() == 2);
  CHECK(p.queries.size() == 1);
  CHECK(to_string(p.judgments[0]) == "c -> a -> !b");
  CHECK(to_string(p.judgments[1]) == "a -> b");
  CHECK_FALSE(p.is_parametric());
}

TEST_CASE("axiom shorthand parses to the expected tree") {
  Program p = parse_program("var x, y;\n|- x -> y;\n");
  REQUIRE(p.judgments.size() == 1);
  const Formula& f = *p.judgments[0];
  REQUIRE(f.kind() == Formula::Kind::Bin);
  CHECK(f.op() == BinOp::Implies);
  CHECK(f.lhs()->atom_name() == "x");
  CHECK(f.rhs()->atom_name() == "y");
}

TEST_CASE("parameters with numeric, range, unbounded and labeled domains") {
  Program p = parse_program(
      "parameter t in {0,1};\n"
      "parameter c in {0,1,2};\n"
      "parameter w in {-2..2};\n"
      "parameter n in ZZ;\n"
      "parameter s in {\"{}\", \"{0}\", \"{1}\", \"{0,1}\"};\n");
  REQUIRE(p.params.size() == 5);
  CHECK(p.params[0].states.size() == 2);
  CHECK(p.params[1].states.size() == 3);
  CHECK(p.params[2].states.size() == 5);
  CHECK(p.params[2].states.front().value == Rational(-2));
  CHECK(p.params[3].domain == ParamDomainKind::Integers);
  REQUIRE(p.params[4].states.size() == 4);
  CHECK(p.params[4].states[0].is_set);
  CHECK(p.params[4].states[0].elems.empty());
  CHECK(p.params[4].states[3].elems ==
        std::vector<Rational>{Rational(0), Rational(1)});
}

TEST_CASE("updates, constraints and solution references") {
  Program p = parse_program(
      "var x in RR;\n"
      "parameter c in {0,1,2};\n"
      "2*x^2 + 3*x + c == 0;\n"
      "c := |$x|;\n"
      "query x;\n");
  REQUIRE(p.constraints.size() == 1);
  CHECK(to_string(p.constraints[0].first) == "2*x^2 + 3*x + c");
  CHECK(to_string(p.constraints[0].second) == "0");
  REQUIRE(p.updates.size() == 1);
  CHECK(p.updates[0].first == "c");
  CHECK(to_string(p.updates[0].second) == "|$x|");
  CHECK(p.vars[0].kind == VarKind::Real);
}

TEST_CASE("update grammar covers ?, $, sets and comparisons") {
  Program p = parse_program(
      "var z;\n"
      "parameter s in {\"{}\", \"{0}\", \"{1}\", \"{0,1}\"};\n"
      "(s == {1}) == 0;\n"
      "((s == {0,1}) -> (1 - z)) == 1;\n"
      "((s != {1})*(s != {0})*(s != {0,1}) -> z) == 1;\n"
      "s := $z;\n"
      "query z;\n");
  REQUIRE(p.constraints.size() == 3);
  CHECK(to_string(p.constraints[0].first) == "s == {1}");
  CHECK(to_string(p.constraints[1].first) == "(s == {0,1}) -> 1 - z");
  CHECK(to_string(p.updates[0].second) == "$z");
}

TEST_CASE("cardinality bars immediately followed by minus") {
  Program p = parse_program(
      "var x;\nparameter c in {0,1};\nx == c;\nc := |$x|-1+1;\n");
  CHECK(to_string(p.updates[0].second) == "|$x| - 1 + 1");
}

TEST_CASE("theoremhood shorthand") {
  Program p = parse_program("parameter x in {0,1};\nx := 1 - ?x;\nquery x;\n");
  CHECK(to_string(p.updates[0].second) == "1 - ?x");
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_program("var x;\n|- x ->;\n");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(parse_program("var x;\nx = 1;\n"), SyntaxError);
  CHECK_THROWS_AS(parse_program("var x;\nx + 1;\n"), SyntaxError);
  CHECK_THROWS_AS(parse_program("parameter p in {};\n"), SyntaxError);
}

TEST_CASE("declaration discipline") {
  CHECK_THROWS_AS(parse_program("var x; var x;"), DuplicateDeclaration);
  CHECK_THROWS_AS(parse_program("var x; parameter x in {0,1};"), DuplicateDeclaration);
  CHECK_THROWS_AS(parse_program("|- x;"), UndeclaredIdentifier);
  CHECK_THROWS_AS(parse_program("var x; x == y;"), UndeclaredIdentifier);
  CHECK_THROWS_AS(parse_program("var x; q := 1;"), UndeclaredIdentifier);
  // one update rule per parameter
  CHECK_THROWS_AS(parse_program("parameter t in {0,1}; t := 1; t := 0;"),
                  DuplicateDeclaration);
  // solution references only in updates
  CHECK_THROWS_AS(parse_program("var x; $x == {1};"), ValidationError);
  CHECK_THROWS_AS(parse_program("var x; query ?x;"), ValidationError);
}

namespace {

FormulaPtr random_formula(std::mt19937& rng, int depth) {
  static const std::vector<std::string> atoms = {"x", "y", "z"};
  std::uniform_int_distribution<int> pick(0, depth == 0 ? 1 : 7);
  int k = pick(rng);
  if (k == 0) return Formula::constant(std::uniform_int_distribution<int>(0, 1)(rng));
  if (k == 1 || depth == 0) {
    std::uniform_int_distribution<std::size_t> ai(0, atoms.size() - 1);
    return Formula::atom(atoms[ai(rng)]);
  }
  if (k == 2) return Formula::negation(random_formula(rng, depth - 1));
  static const BinOp ops[] = {BinOp::And, BinOp::Or, BinOp::Xor, BinOp::Implies,
                              BinOp::Iff};
  return Formula::binary(ops[(k - 3) % 5], random_formula(rng, depth - 1),
                         random_formula(rng, depth - 1));
}

}  // namespace

TEST_CASE("parser round-trip: parse(print(f)) = f") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    FormulaPtr f = random_formula(rng, 6);
    FormulaPtr back = parse_formula(to_string(f));
    CHECK(back->equals(*f));
  }
}

TEST_CASE("expression round-trip on demo-style updates") {
  for (const std::string& text :
       {std::string("1 - ?x"), std::string("|$x|"), std::string("$z"),
        std::string("($y != {1}) + 2"), std::string("(s == {0,1}) -> 1 - z"),
        std::string("a + b"), std::string("-c^2 + c + 2"),
        std::string("{0,1} != {}")}) {
    TExprPtr e = parse_expression(text);
    TExprPtr back = parse_expression(to_string(e));
    CHECK(to_string(back) == to_string(e));
  }
}
