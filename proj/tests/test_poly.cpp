#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "lql/poly.hpp"

using namespace lql;

namespace {

const FieldSpec f2(2);
const FieldSpec f3(3);

FpPoly var2(const std::string& n, const VarSet& vs) { return FpPoly::variable(n, f2, vs); }
FpPoly const2(std::int64_t v, const VarSet& vs) { return FpPoly::constant(Fp(v, f2), vs); }

std::vector<Point<Fp>> all_points(const FieldSpec& f, std::size_t n) {
  std::vector<Point<Fp>> pts;
  std::vector<std::int64_t> cur(n, 0);
  while (true) {
    Point<Fp> p;
    for (auto v : cur) p.emplace_back(v, f);
    pts.push_back(p);
    std::size_t i = n;
    bool done = true;
    while (i > 0) {
      --i;
      if (++cur[i] < f.modulus) {
        done = false;
        break;
      }
      cur[i] = 0;
    }
    if (done || n == 0) break;
  }
  return pts;
}

FpPoly random_poly(const FieldSpec& f, const VarSet& vs, std::mt19937& rng) {
  auto basis = monomial_basis(f.modulus, vs.size());
  FpPoly p(f, vs);
  std::uniform_int_distribution<std::int64_t> coeff(0, f.modulus - 1);
  for (const auto& m : basis) p.add_term(m, Fp(coeff(rng), f));
  return p;
}

}  // namespace

TEST_CASE("variable sets are sorted and reject duplicates") {
  VarSet vs({"y", "x"});
  CHECK(vs.name(0) == "x");
  CHECK(vs.name(1) == "y");
  CHECK(vs.index_of("y") == 1);
  CHECK_THROWS_AS(VarSet({"x", "x"}), DuplicateDeclaration);
  CHECK_THROWS_AS(vs.index_of("z"), UndeclaredIdentifier);
}

TEST_CASE("products reduce in F_2[x,y]") {
  VarSet vs({"x", "y"});
  FpPoly x = var2("x", vs), y = var2("y", vs), one = const2(1, vs);
  // (y+1)(x+y) => xy + x
  CHECK(((y + one) * (x + y)).to_string() == "x*y + x");
  // (xy)(x+y) => 0
  CHECK(((x * y) * (x + y)).is_zero());
  // (xy+y)(x+y) => xy + y ; (xy+x+y)(x+y) => x + y
  CHECK(((x * y + y) * (x + y)).to_string() == "x*y + y");
  CHECK(((x * y + x + y) * (x + y)).to_string() == "x + y");
  // p * 1 = p
  FpPoly p = x * y + x + one;
  CHECK(p * one == p);
}

TEST_CASE("evaluation matches the worksheet rows") {
  VarSet vs({"x", "y"});
  FpPoly x = var2("x", vs), y = var2("y", vs), one = const2(1, vs);
  FpPoly p8 = x + y + one;
  CHECK(p8.eval({Fp(0, f2), Fp(0, f2)}) == Fp(1, f2));
  FpPoly p13 = x * y + x;
  CHECK(p13.eval({Fp(1, f2), Fp(0, f2)}) == Fp(1, f2));
  CHECK(FpPoly::zero(f2, vs).eval({Fp(1, f2), Fp(1, f2)}) == Fp(0, f2));
  CHECK_THROWS_AS(p8.eval({Fp(0, f2)}), ArityMismatch);
}

TEST_CASE("domain mismatches are rejected") {
  VarSet vs({"x", "y"});
  VarSet other({"x", "z"});
  FpPoly a = var2("x", vs);
  FpPoly b = FpPoly::variable("x", f3, vs);
  CHECK_THROWS_AS(a + b, DomainMismatch);
  FpPoly c = var2("x", other);
  CHECK_THROWS_AS(a * c, DomainMismatch);
}

TEST_CASE("canonical rendering uses graded lexicographic order") {
  VarSet vs({"x", "y"});
  FpPoly x = var2("x", vs), y = var2("y", vs), one = const2(1, vs);
  CHECK((x * y + x + y + one).to_string() == "x*y + x + y + 1");
  CHECK((y + x).to_string() == "x + y");
  CHECK(FpPoly::zero(f2, vs).to_string() == "0");

  RatPoly rx = RatPoly::variable("x", {}, vs);
  RatPoly r = rx * rx - rx.scaled(Rational(2)) + RatPoly::constant(Rational(BigInt(1), BigInt(2)), vs);
  CHECK(r.to_string() == "x^2 - 2*x + 1/2");
  CHECK((-rx).to_string() == "-x");
}

TEST_CASE("rational mode keeps exponents unreduced") {
  VarSet vs({"x"});
  RatPoly x = RatPoly::variable("x", {}, vs);
  CHECK((x * x).to_string() == "x^2");
  CHECK((x * x) != x);
  // modular mode reduces x^2 to x
  FpPoly fx = var2("x", VarSet({"x"}));
  CHECK(fx * fx == fx);
}

TEST_CASE("modular exponent reduction preserves the function") {
  std::mt19937 rng(7);
  for (std::int64_t dm : {2, 3}) {
    FieldSpec f(dm);
    VarSet vs({"x", "y"});
    for (int trial = 0; trial < 40; ++trial) {
      FpPoly a = random_poly(f, vs, rng);
      FpPoly b = random_poly(f, vs, rng);
      FpPoly prod = a * b;  // reduced by construction
      for (const auto& pt : all_points(f, 2))
        CHECK(prod.eval(pt) == a.eval(pt) * b.eval(pt));
    }
  }
}

TEST_CASE("index vectors descend") {
  auto iv = index_vectors(2, 2);
  REQUIRE(iv.size() == 4);
  CHECK(iv[0] == std::vector<std::int64_t>{1, 1});
  CHECK(iv[1] == std::vector<std::int64_t>{1, 0});
  CHECK(iv[2] == std::vector<std::int64_t>{0, 1});
  CHECK(iv[3] == std::vector<std::int64_t>{0, 0});
  CHECK(index_vectors(3, 1) ==
        std::vector<std::vector<std::int64_t>>{{2}, {1}, {0}});
  CHECK(index_vectors(2, 0).size() == 1);  // the empty tuple
}

TEST_CASE("ring enumeration counts d^(d^n)") {
  CHECK(ring_size(2, 1) == 4);
  CHECK(ring_size(2, 2) == 16);
  CHECK(ring_size(3, 1) == 27);
  CHECK(ring_size(3, 2) == 19683);

  for (auto [dm, n, expect] :
       std::vector<std::tuple<std::int64_t, std::size_t, std::size_t>>{
           {2, 1, 4}, {2, 2, 16}, {3, 1, 27}}) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, char('x' + i)));
    auto ring = enumerate_ring(FieldSpec(dm), VarSet(names));
    CHECK(ring.size() == expect);
    std::set<std::string> distinct;
    for (const auto& p : ring) distinct.insert(p.to_string());
    CHECK(distinct.size() == expect);  // no duplicates
  }
}

TEST_CASE("ring enumeration order matches the sixteen worksheet polynomials") {
  auto ring = enumerate_ring(f2, VarSet({"x", "y"}));
  std::vector<std::string> expected = {
      "0",         "1",         "y",         "y + 1",
      "x",         "x + 1",     "x + y",     "x + y + 1",
      "x*y",       "x*y + 1",   "x*y + y",   "x*y + y + 1",
      "x*y + x",   "x*y + x + 1", "x*y + x + y", "x*y + x + y + 1"};
  REQUIRE(ring.size() == 16);
  for (std::size_t i = 0; i < 16; ++i) CHECK(ring[i].to_string() == expected[i]);
}

TEST_CASE("constants-only ring for n = 0") {
  auto ring = enumerate_ring(f2, VarSet(std::vector<std::string>{}));
  REQUIRE(ring.size() == 2);
  CHECK(ring[0].to_string() == "0");
  CHECK(ring[1].to_string() == "1");
}

TEST_CASE("enumeration budget") {
  VarSet vs({"u", "v", "w"});
  CHECK_THROWS_AS(enumerate_ring(f3, vs, 1000000), BudgetExceeded);
  try {
    enumerate_ring(f3, vs, 1000000);
  } catch (const BudgetExceeded& e) {
    CHECK(e.required_count == "7625597484987");  // 3^27
  }
}

TEST_CASE("canonicalization is idempotent") {
  std::mt19937 rng(11);
  VarSet vs({"x", "y"});
  for (int trial = 0; trial < 50; ++trial) {
    FpPoly p = random_poly(f2, vs, rng);
    // rebuilding from the stored terms must not change anything
    FpPoly q(f2, vs);
    for (const auto& [m, c] : p.terms()) q.add_term(m, c);
    CHECK(p == q);
    CHECK(p.to_string() == q.to_string());
  }
}

TEST_CASE("substitution binds a subset of variables") {
  VarSet vs({"b", "x"});
  RatPoly x = RatPoly::variable("x", {}, vs);
  RatPoly b = RatPoly::variable("b", {}, vs);
  RatPoly p = x * x.scaled(Rational(BigInt(1), BigInt(2))) + b * x.scaled(Rational(3)) +
              RatPoly::constant(Rational(BigInt(11), BigInt(2)), vs);
  RatPoly inst = p.substitute({{"b", Rational(2)}});
  CHECK(inst.vars().names() == std::vector<std::string>{"x"});
  CHECK(inst.to_string() == "1/2*x^2 + 6*x + 11/2");
}
