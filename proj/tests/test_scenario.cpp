#include <doctest.h>

#include <fstream>
#include <sstream>

#include "hdim/errors.hpp"
#include "hdim/render.hpp"
#include "hdim/scenario.hpp"

using namespace hdim;

namespace {

Scenario from_string(const std::string& text, const std::string& name = "mem") {
  std::istringstream in(text);
  return parse_scenario(in, name);
}

const char* kHeisenberg = R"(# comment
[ring]
kind = power_series
p = 2
vars = 1

[group]
law = heisenberg
d = 3
level = 1
trunc = 12

[subgroup center]
type = module_span
gen = (0, 0, t)

[transform squeeze]
type = series
component = X1 + X1^2
component = X2
component = X3

[run]
n_max = 8
budget = 50000
format = csv
tail = 0.25
)";

}  // namespace

TEST_CASE("scenario parsing: fields and cross references") {
  Scenario sc = from_string(kHeisenberg);
  CHECK(sc.ring.describe() == "F_2[[t]]");
  CHECK(sc.dim == 3);
  CHECK(sc.trunc == 12);
  CHECK(sc.n_max == 8);
  CHECK(sc.budget == 50000);
  CHECK(sc.format == "csv");
  CHECK(sc.tail_fraction == doctest::Approx(0.25));
  CHECK(sc.law->label() == "heisenberg");
  REQUIRE(sc.subgroups.size() == 1);
  CHECK(sc.find_subgroup("center") != nullptr);
  CHECK(sc.find_subgroup("nope") == nullptr);
  REQUIRE(sc.transforms.size() == 1);
  CHECK(sc.find_transform("squeeze")->kind() == ChartTransform::Kind::Series);
  CHECK(sc.oracle_enabled);
  Presentation p = sc.presentation();
  CHECK(p.level() == 1);
}

TEST_CASE("scenario parse errors carry line numbers") {
  auto expect_line = [](const std::string& text, int line) {
    try {
      from_string(text);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
    }
  };
  expect_line("[ring\nkind = padic\n", 1);
  expect_line("[ring]\nkind padic\n", 2);
  expect_line("key = 1\n", 1);
  expect_line("[ring]\nkind = padic\np = x\n", 3);
  // unknown section
  expect_line(
      "[ring]\nkind = padic\np = 3\n[group]\nlaw = additive(1)\nd = 1\n"
      "level = 2\ntrunc = 6\n[grp]\n",
      9);
}

TEST_CASE("scenario semantic errors") {
  // n_max colliding with the truncation
  CHECK_THROWS_AS(from_string("[ring]\nkind = power_series\np = 2\n"
                              "[group]\nlaw = additive(1)\nd = 1\nlevel = 1\n"
                              "trunc = 6\n[run]\nn_max = 6\n"),
                  ParseError);
  // tuple arity
  CHECK_THROWS_AS(from_string("[ring]\nkind = power_series\np = 2\n"
                              "[group]\nlaw = additive(2)\nd = 2\nlevel = 1\n"
                              "trunc = 8\n[subgroup s]\ntype = module_span\n"
                              "gen = (t)\n"),
                  ParseError);
  // bad law name
  CHECK_THROWS_AS(from_string("[ring]\nkind = power_series\np = 2\n"
                              "[group]\nlaw = octonion\nd = 1\nlevel = 1\n"
                              "trunc = 8\n"),
                  ParseError);
  // duplicate subgroup names
  CHECK_THROWS_AS(from_string("[ring]\nkind = power_series\np = 2\n"
                              "[group]\nlaw = additive(1)\nd = 1\nlevel = 1\n"
                              "trunc = 8\n"
                              "[subgroup s]\ntype = module_span\ngen = (t)\n"
                              "[subgroup s]\ntype = module_span\ngen = (t)\n"),
                  ParseError);
  // a [law] section without law = custom is a mistake
  CHECK_THROWS_AS(from_string("[ring]\nkind = power_series\np = 2\n"
                              "[group]\nlaw = additive(1)\nd = 1\nlevel = 1\n"
                              "trunc = 8\n[law]\nF1 = X + Y\n"),
                  ParseError);
}

TEST_CASE("relax_level admits level 1 over Z_2") {
  CHECK_THROWS_AS(from_string("[ring]\nkind = padic\np = 2\n"
                              "[group]\nlaw = additive(1)\nd = 1\nlevel = 1\n"
                              "trunc = 8\n[run]\nn_max = 4\n")
                      .presentation(),
                  ValidationError);
  Scenario sc = from_string(
      "[ring]\nkind = padic\np = 2\n"
      "[group]\nlaw = additive(1)\nd = 1\nlevel = 1\ntrunc = 8\n"
      "relax_level = true\n[run]\nn_max = 4\n");
  CHECK(sc.presentation().level() == 1);
}

TEST_CASE("a tiny budget disables oracle runs with a warning") {
  Scenario sc = from_string(
      "[ring]\nkind = power_series\np = 2\n"
      "[group]\nlaw = heisenberg\nd = 3\nlevel = 1\ntrunc = 8\n"
      "[run]\nn_max = 4\nbudget = 4\n");
  CHECK(!sc.oracle_enabled);
  REQUIRE(!sc.warnings.empty());
}

TEST_CASE("expression parser") {
  Ring r = Ring::power_series(2, 1, 2);
  Element e = parse_element(r, 6, "t1^2 + t1*t2 + 1");
  CHECK(e.coefficient(Monomial::variable(0, 2)) == 1);
  CHECK(e.coefficient(Monomial::variable(0).times(Monomial::variable(1))) == 1);
  CHECK(e.coefficient(Monomial()) == 1);
  // integers reduce into the prime field
  CHECK(parse_element(r, 6, "2").is_zero());
  CHECK(parse_element(r, 6, "3 * t1").coefficient(Monomial::variable(0)) == 1);
  // p-adic constants, including the prime symbol
  Ring z3 = Ring::padic(3);
  CHECK(parse_element(z3, 4, "p^2 + 1").residue() == 10);
  CHECK(parse_element(z3, 4, "-1").residue() == 80);
  // the field generator over F_4
  Ring r4 = Ring::power_series(2, 2, 1);
  CHECK(parse_element(r4, 4, "g * g").coefficient(Monomial()) ==
        r4.field().mul(2, 2));
  // law variables: bare X/Y only in dimension 1
  Series s = parse_poly(Ring::power_series(2, 1, 1), 6, 1, 1, "X + Y + X*Y");
  CHECK(s.terms().size() == 3);
  CHECK_THROWS_AS(parse_poly(r, 6, 2, 2, "X + Y1"), ValidationError);
  CHECK_THROWS_AS(parse_element(r, 6, "X1"), ValidationError);
  CHECK_THROWS_AS(parse_element(r, 6, "t3"), ValidationError);
  CHECK_THROWS_AS(parse_element(r, 6, "t1 +"), ValidationError);
  CHECK_THROWS_AS(parse_element(r, 6, "(t1"), ValidationError);
  // tuples
  Tuple tup = parse_tuple(r, 6, 2, "(t1 + t2, 0)");
  CHECK(tup.size() == 2);
  CHECK(tup[1].is_zero());
}

TEST_CASE("custom law from a coefficient table") {
  Scenario sc = from_string(
      "[ring]\nkind = power_series\np = 2\n"
      "[group]\nlaw = custom\nd = 1\nlevel = 1\ntrunc = 10\n"
      "[law]\nF1 = X + Y + X*Y\n"
      "[subgroup full]\ntype = module_span\ngen = (t)\n"
      "[run]\nn_max = 6\nbudget = 10000\n");
  Presentation p = sc.presentation();
  CHECK(validate_law(p.law()).empty());
  CHECK(!p.law().is_additive());
  // behaves like the builtin multiplicative law
  Ring r = sc.ring;
  Element t = Element::monomial(r, 10, Monomial::variable(0));
  Tuple prod = law_multiply(p, {t}, {t});
  CHECK(prod[0].to_string() == "t^2");
}

TEST_CASE("invalid laws parse but fail validation downstream") {
  Scenario sc = from_string(
      "[ring]\nkind = power_series\np = 2\n"
      "[group]\nlaw = custom\nd = 1\nlevel = 1\ntrunc = 8\n"
      "[law]\nF1 = X + Y + X^2\n"
      "[run]\nn_max = 4\nbudget = 1000\n");
  REQUIRE(sc.law.has_value());
  auto violations = validate_law(*sc.law);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].rule == "mixed-monomial");
  CHECK_THROWS_AS(sc.presentation(), ValidationError);
}

TEST_CASE("shipped scenario files load") {
  for (const char* name :
       {"heisenberg", "additive2", "valuation", "invariance_additive",
        "invariance_mult", "padic_plane", "twovars", "custom_mult"}) {
    Scenario sc = load_scenario(std::string(HDIM_SCENARIO_DIR) + "/" + name +
                                ".scn");
    CHECK(sc.name == name);
    CHECK_NOTHROW(sc.presentation());
  }
  Scenario bad =
      load_scenario(std::string(HDIM_SCENARIO_DIR) + "/bad_law.scn");
  CHECK(!validate_law(*bad.law).empty());
}

TEST_CASE("report serialization is deterministic and exact") {
  Scenario sc = load_scenario(std::string(HDIM_SCENARIO_DIR) +
                              "/heisenberg.scn");
  Presentation p = sc.presentation();
  const SubgroupSpec* center = sc.find_subgroup("center");
  REQUIRE(center != nullptr);
  auto run = [&]() {
    DimensionReport rep = dimension_formula_check(
        p, std::get<ModuleSpanSpec>(*center), "center", sc.n_max, sc.budget,
        sc.tail_fraction);
    return dimension_report_csv(rep) + dimension_report_json(rep);
  };
  std::string first = run();
  std::string second = run();
  CHECK(first == second);
  CHECK(first.find("n,log_index_H,log_index_G,c_num,c_den,c_decimal") !=
        std::string::npos);
  CHECK(first.find("0.333333") != std::string::npos);
  CHECK(first.find("\"num\": 1") != std::string::npos);
}
