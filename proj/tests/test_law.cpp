#include <doctest.h>

#include <random>

#include "hdim/errors.hpp"
#include "hdim/law.hpp"
#include "hdim/quotient.hpp"

using namespace hdim;

namespace {

Ring f2t() { return Ring::power_series(2, 1, 1); }

Element tpow(const Ring& r, int trunc, std::uint32_t e) {
  return Element::monomial(r, trunc, Monomial::variable(0, e));
}

}  // namespace

TEST_CASE("validate_law accepts the builtins") {
  Ring r = f2t();
  CHECK(validate_law(GroupLaw::additive(r, 1, 8)).empty());
  CHECK(validate_law(GroupLaw::additive(r, 3, 8)).empty());
  CHECK(validate_law(GroupLaw::multiplicative(r, 8)).empty());
  CHECK(validate_law(GroupLaw::heisenberg(r, 8)).empty());
  CHECK(validate_law(GroupLaw::product(GroupLaw::multiplicative(r, 8),
                                       GroupLaw::additive(r, 2, 8)))
            .empty());
}

TEST_CASE("validate_law flags a pure-X square") {
  Ring r = f2t();
  Series x = Series::variable(r, 2, 8, 0);
  Series y = Series::variable(r, 2, 8, 1);
  GroupLaw bad(r, 1, 8, {x + y + x.pow(2)}, "bad");
  auto violations = validate_law(bad);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].rule == "mixed-monomial");
  CHECK(violations[0].monomial == "X^2");
  CHECK(violations[0].component == 1);
  // and the mixed monomial XY is fine
  CHECK(validate_law(GroupLaw(r, 1, 8, {x + y + x * y}, "mult")).empty());
}

TEST_CASE("validate_law flags constant terms and broken linear parts") {
  Ring r = f2t();
  Series x = Series::variable(r, 2, 8, 0);
  Series y = Series::variable(r, 2, 8, 1);
  Series one = Series::constant(r, 2, 8, Element::from_int(r, 8, 1));
  auto v1 = validate_law(GroupLaw(r, 1, 8, {x + y + one}, ""));
  REQUIRE(!v1.empty());
  CHECK(v1[0].rule == "constant-term");
  auto v2 = validate_law(GroupLaw(r, 1, 8, {x}, ""));
  REQUIRE(!v2.empty());
  CHECK(v2[0].rule == "linear-part");
}

TEST_CASE("law_multiply examples") {
  Ring r = f2t();
  // additive: (t, t^2) -> t + t^2
  Presentation add(GroupLaw::additive(r, 1, 6), 1);
  Tuple s = law_multiply(add, {tpow(r, 6, 1)}, {tpow(r, 6, 2)});
  CHECK(s[0].to_string() == "t + t^2");
  // multiplicative over F_2[[t]]: (t, t) -> t^2
  Presentation mult(GroupLaw::multiplicative(r, 6), 1);
  Tuple m = law_multiply(mult, {tpow(r, 6, 1)}, {tpow(r, 6, 1)});
  CHECK(m[0].to_string() == "t^2");
  // heisenberg: ((t,0,0), (0,t,0)) -> (t, t, t^2)
  Presentation heis(GroupLaw::heisenberg(r, 12), 1);
  Element t = tpow(r, 12, 1);
  Element z(r, 12);
  Tuple h = law_multiply(heis, {t, z, z}, {z, t, z});
  CHECK(h[0] == t);
  CHECK(h[1] == t);
  CHECK(h[2] == tpow(r, 12, 2));
}

TEST_CASE("law_multiply rejects bad points") {
  Ring r = f2t();
  Presentation p(GroupLaw::additive(r, 1, 6), 2);
  Element t = tpow(r, 6, 1);  // valuation 1 < level 2
  CHECK_THROWS_AS(law_multiply(p, {t}, {t}), ValidationError);
  Presentation q(GroupLaw::additive(r, 2, 6), 1);
  CHECK_THROWS_AS(law_multiply(q, {t}, {t}), ValidationError);  // arity
}

TEST_CASE("law_inverse examples") {
  Ring r = f2t();
  // additive: x -> -x (== x in characteristic 2)
  Presentation add(GroupLaw::additive(r, 1, 6), 1);
  Element x = tpow(r, 6, 1) + tpow(r, 6, 3);
  CHECK(law_inverse(add, {x})[0] == x);
  // multiplicative, M = 6: t -> t + t^2 + t^3 + t^4 + t^5
  Presentation mult(GroupLaw::multiplicative(r, 6), 1);
  Tuple inv = law_inverse(mult, {tpow(r, 6, 1)});
  CHECK(inv[0].to_string() == "t + t^2 + t^3 + t^4 + t^5");
  CHECK(law_multiply(mult, {tpow(r, 6, 1)}, inv)[0].is_zero());
  CHECK(law_multiply(mult, inv, {tpow(r, 6, 1)})[0].is_zero());
}

TEST_CASE("heisenberg closed-form inverse matches law_inverse") {
  Ring r = f2t();
  Presentation heis(GroupLaw::heisenberg(r, 10), 1);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    Tuple g = random_tuple(heis, rng);
    Tuple closed{-g[0], -g[1], -g[2] + g[0] * g[1]};
    Tuple computed = law_inverse(heis, g);
    CHECK(tuple_equal(closed, computed));
    CHECK(tuple_valuation(law_multiply(heis, g, closed)) == heis.trunc());
    CHECK(tuple_valuation(law_multiply(heis, closed, g)) == heis.trunc());
  }
}

TEST_CASE("group axioms hold for the builtin laws at truncation") {
  Ring r = f2t();
  Ring z3 = Ring::padic(3);
  std::vector<Presentation> battery;
  battery.emplace_back(GroupLaw::additive(r, 2, 10), 1);
  battery.emplace_back(GroupLaw::multiplicative(r, 10), 1);
  battery.emplace_back(GroupLaw::heisenberg(r, 10), 1);
  battery.emplace_back(GroupLaw::multiplicative(z3, 6), 1);
  std::mt19937_64 rng(37);
  for (const auto& p : battery) {
    Tuple id = zero_tuple(p);
    for (int trial = 0; trial < 20; ++trial) {
      Tuple x = random_tuple(p, rng);
      Tuple y = random_tuple(p, rng);
      Tuple z = random_tuple(p, rng);
      CHECK(tuple_equal(law_multiply(p, law_multiply(p, x, y), z),
                        law_multiply(p, x, law_multiply(p, y, z))));
      CHECK(tuple_equal(law_multiply(p, x, id), x));
      CHECK(tuple_equal(law_multiply(p, id, x), x));
      Tuple inv = law_inverse(p, x);
      CHECK(tuple_valuation(law_multiply(p, x, inv)) == p.trunc());
    }
    CHECK(!find_associativity_violation(p, 25, 41).has_value());
  }
}

TEST_CASE("congruence: products against differences, exhaustively") {
  // x y^{-1} in S_n  <=>  x - y in (m^{N+n})^(d), over a full small quotient
  Ring r = f2t();
  Presentation mult(GroupLaw::multiplicative(r, 8), 1);
  QuotientGroup q = quotient_group(mult, 3, 1000);
  for (const auto& x : q.elements) {
    for (const auto& y : q.elements) {
      Tuple prod = q.ctx.multiply(x, q.ctx.inverse(y));
      Tuple diff{x[0] - y[0]};
      for (int n = 1; n <= 3; ++n) {
        bool lhs = tuple_valuation(prod) >= 1 + n;
        bool rhs = tuple_valuation(diff) >= 1 + n;
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("deeper filtration stages are closed under the law") {
  Ring r = f2t();
  Presentation heis(GroupLaw::heisenberg(r, 10), 1);
  std::mt19937_64 rng(43);
  for (int n = 0; n < 4; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      Tuple x = random_tuple(heis, rng);
      Tuple y = random_tuple(heis, rng);
      // push both into (m^{1+n})^(3)
      for (auto* t : {&x, &y})
        for (auto& c : *t)
          c = c.times_monomial(Monomial::variable(0, static_cast<std::uint32_t>(n)));
      CHECK(tuple_valuation(law_multiply(heis, x, y)) >= 1 + n);
      CHECK(tuple_valuation(law_inverse(heis, x)) >= 1 + n);
    }
  }
}

TEST_CASE("group axioms over larger residue fields and Z_3") {
  Ring r4 = Ring::power_series(2, 2, 1);
  Ring z3 = Ring::padic(3);
  std::vector<Presentation> battery;
  battery.emplace_back(GroupLaw::multiplicative(r4, 8), 1);
  battery.emplace_back(GroupLaw::heisenberg(z3, 6), 1);
  std::mt19937_64 rng(53);
  for (const auto& p : battery) {
    for (int trial = 0; trial < 15; ++trial) {
      Tuple x = random_tuple(p, rng);
      Tuple y = random_tuple(p, rng);
      Tuple z = random_tuple(p, rng);
      CHECK(tuple_equal(law_multiply(p, law_multiply(p, x, y), z),
                        law_multiply(p, x, law_multiply(p, y, z))));
      CHECK(tuple_valuation(law_multiply(p, x, law_inverse(p, x))) ==
            p.trunc());
    }
  }
}

TEST_CASE("builtin law catalog") {
  Ring r = f2t();
  CHECK(builtin_law("additive(2)", r, 2, 8).dim() == 2);
  CHECK(builtin_law("heisenberg", r, 3, 8).label() == "heisenberg");
  GroupLaw prod = builtin_law("product(multiplicative, additive(2))", r, 3, 8);
  CHECK(prod.dim() == 3);
  CHECK(validate_law(prod).empty());
  CHECK(!prod.is_additive());
  CHECK(builtin_law("additive(2)", r, 2, 8).is_additive());
  CHECK_THROWS_AS(builtin_law("cyclic", r, 1, 8), ValidationError);
  CHECK_THROWS_AS(builtin_law("heisenberg", r, 2, 8), ValidationError);
}

TEST_CASE("level rule enforcement") {
  Ring z2 = Ring::padic(2);
  CHECK_THROWS_AS(Presentation(GroupLaw::additive(z2, 1, 6), 1),
                  ValidationError);
  CHECK_NOTHROW(Presentation(GroupLaw::additive(z2, 1, 6), 1, true));
  CHECK_NOTHROW(Presentation(GroupLaw::additive(z2, 1, 6), 2));
  Ring r = f2t();
  CHECK_THROWS_AS(Presentation(GroupLaw::additive(r, 1, 4), 4),
                  ValidationError);  // trunc must exceed level
}
