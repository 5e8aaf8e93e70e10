#include <doctest.h>

#include "hdim/errors.hpp"
#include "hdim/subgroup.hpp"

using namespace hdim;

namespace {

Ring f2t() { return Ring::power_series(2, 1, 1); }

Element tpow(const Ring& r, int trunc, std::uint32_t e) {
  return Element::monomial(r, trunc, Monomial::variable(0, e));
}

constexpr std::int64_t kBudget = 200000;

}  // namespace

TEST_CASE("quotient carriers have size q^{d f(n)}") {
  Ring r = f2t();
  Presentation d1(GroupLaw::additive(r, 1, 8), 1);
  CHECK(quotient_group(d1, 3, kBudget).elements.size() == 8);
  Presentation heis(GroupLaw::heisenberg(r, 8), 1);
  CHECK(quotient_group(heis, 2, kBudget).elements.size() == 64);
  Ring r2 = Ring::power_series(2, 1, 2);
  Presentation v(GroupLaw::additive(r2, 1, 8), 1);
  CHECK(quotient_group(v, 2, kBudget).elements.size() == 32);
  // budget gate
  CHECK_THROWS_AS(quotient_group(heis, 4, 100), BudgetExceeded);
}

TEST_CASE("image log index: heisenberg center as a module span") {
  Ring r = f2t();
  Presentation heis(GroupLaw::heisenberg(r, 12), 1);
  Element t = tpow(r, 12, 1);
  Element z(r, 12);
  SubgroupSpec center = ModuleSpanSpec{{Tuple{z, z, t}}};
  for (int n = 1; n <= 6; ++n)
    CHECK(image_log_index(heis, center, n, kBudget) == n);
}

TEST_CASE("generated closure in residue characteristic stays finite") {
  Ring r = f2t();
  Presentation heis(GroupLaw::heisenberg(r, 12), 1);
  Element t = tpow(r, 12, 1);
  Element z(r, 12);
  SubgroupSpec cyc = GeneratedSpec{{Tuple{z, z, t}}};
  // the closed subgroup generated by one central element is its F_2-span
  for (int n = 1; n <= 5; ++n)
    CHECK(image_log_index(heis, cyc, n, kBudget) == 1);
  // two non-commuting generators pick up commutator terms
  SubgroupSpec pair = GeneratedSpec{{Tuple{t, z, z}, Tuple{z, t, z}}};
  for (int n = 1; n <= 4; ++n)
    CHECK(image_log_index(heis, pair, n, kBudget) ==
          bruteforce_oracle(heis, pair, n, kBudget));
}

TEST_CASE("module span over a diagonal line") {
  Ring r = f2t();
  Presentation add2(GroupLaw::additive(r, 2, 12), 1);
  Element t = tpow(r, 12, 1);
  SubgroupSpec diag = ModuleSpanSpec{{Tuple{t, t}}};
  for (int n = 1; n <= 6; ++n) {
    CHECK(image_log_index(add2, diag, n, kBudget) == n);
    CHECK(bruteforce_oracle(add2, diag, n, kBudget) == n);
  }
}

TEST_CASE("valuation set counting") {
  Ring r = f2t();
  Presentation add(GroupLaw::additive(r, 1, 12), 2);
  // A = even exponents from level 2: bits 1,0,1,0,...
  SubgroupSpec evens = ValuationSetSpec{{}, {1, 0}, 1};
  CHECK(image_log_index(add, evens, 4, kBudget) == 2);  // {2, 4}
  CHECK(bruteforce_oracle(add, evens, 4, kBudget) == 2);
  // preperiod 0 then all ones: A = {3, 4, 5, ...}
  SubgroupSpec tail = ValuationSetSpec{{0}, {1}, 1};
  CHECK(image_log_index(add, tail, 4, kBudget) == 3);
  // residue field F_4 doubles the p-logarithm
  Ring r4 = Ring::power_series(2, 2, 1);
  Presentation add4(GroupLaw::additive(r4, 1, 10), 1);
  SubgroupSpec evens1 = ValuationSetSpec{{}, {0, 1}, 1};
  CHECK(image_log_index(add4, evens1, 4, kBudget) == 2 * 2);
  CHECK(bruteforce_oracle(add4, evens1, 4, kBudget) == 4);
}

TEST_CASE("verify_subgroup: heisenberg coordinate planes") {
  Ring r = f2t();
  Presentation heis(GroupLaw::heisenberg(r, 12), 1);
  Element t = tpow(r, 12, 1);
  Element z(r, 12);
  SubgroupSpec xz = ModuleSpanSpec{{Tuple{t, z, z}, Tuple{z, z, t}}};
  CHECK(verify_subgroup(heis, xz, 3, 10 * kBudget).ok);
  SubgroupSpec xy = ModuleSpanSpec{{Tuple{t, z, z}, Tuple{z, t, z}}};
  SubgroupCheck chk = verify_subgroup(heis, xy, 3, 10 * kBudget);
  CHECK(!chk.ok);
  CHECK(chk.what == "product escapes the image set");
  // the escaping product picked up the X1*Y2 term in the third coordinate
  QuotientContext ctx(heis, 3);
  Tuple prod = ctx.multiply(chk.witness_a, chk.witness_b);
  CHECK(!prod[2].is_zero());
}

TEST_CASE("verify_subgroup accepts any span under an additive law") {
  Ring r = f2t();
  Presentation add2(GroupLaw::additive(r, 2, 10), 1);
  Element t = tpow(r, 10, 1);
  Element z(r, 10);
  for (const auto& gens :
       {std::vector<Tuple>{{t, t}}, {Tuple{t, z}, Tuple{z, t}},
        std::vector<Tuple>{}}) {
    SubgroupSpec spec = ModuleSpanSpec{gens};
    CHECK(verify_subgroup(add2, spec, 3, kBudget).ok);
  }
}

TEST_CASE("k-span ranks") {
  Ring r = f2t();
  int M = 12;
  Element t = tpow(r, M, 1);
  Element t2 = tpow(r, M, 2);
  Element t3 = tpow(r, M, 3);
  Element z(r, M);
  CHECK(kspan_rank(r, {Tuple{t, t}}, M) == 1);
  CHECK(kspan_rank(r, {Tuple{t, z}, Tuple{z, t}, Tuple{t, t}}, M) == 2);
  // second row is t times the first: rank stays 1
  CHECK(kspan_rank(r, {Tuple{t, t2}, Tuple{t2, t3}}, M) == 1);
  CHECK(kspan_rank(r, {}, M) == 0);
  // a generator visible only at the last precision does not stabilize
  Element thigh = tpow(r, M, 11);
  CHECK_THROWS_AS(kspan_rank(r, {Tuple{thigh, z}}, M), ValidationError);
  // p-adic matrices work the same way
  Ring z3 = Ring::padic(3);
  Element e3 = Element::from_int(z3, 10, 3);
  Element e9 = Element::from_int(z3, 10, 9);
  CHECK(kspan_rank(z3, {Tuple{e3, e3}, Tuple{e9, e9}}, 10) == 1);
  CHECK(kspan_rank(z3, {Tuple{e3, Element(z3, 10)}, Tuple{e3, e9}}, 10) == 2);
}

TEST_CASE("p-adic module spans via diagonalization") {
  Ring z3 = Ring::padic(3);
  Presentation add(GroupLaw::additive(z3, 2, 10), 1);
  Element e3 = Element::from_int(z3, 10, 3);
  SubgroupSpec diag = ModuleSpanSpec{{Tuple{e3, e3}}};
  for (int n = 1; n <= 4; ++n) {
    CHECK(image_log_index(add, diag, n, kBudget) == n);
    CHECK(bruteforce_oracle(add, diag, n, kBudget) == n);
  }
  // two dependent rows over Z_3
  Element e6 = Element::from_int(z3, 10, 6);
  SubgroupSpec dep = ModuleSpanSpec{{Tuple{e3, e3}, Tuple{e6, e6}}};
  for (int n = 1; n <= 3; ++n)
    CHECK(image_log_index(add, dep, n, kBudget) ==
          bruteforce_oracle(add, dep, n, kBudget));
}

TEST_CASE("oracle equivalence and monotone growth across the battery") {
  Ring r = f2t();
  Presentation heis(GroupLaw::heisenberg(r, 12), 1);
  Element t = tpow(r, 12, 1);
  Element z(r, 12);
  std::vector<SubgroupSpec> battery{
      ModuleSpanSpec{{Tuple{z, z, t}}},
      ModuleSpanSpec{{Tuple{t, z, z}, Tuple{z, z, t}}},
      ModuleSpanSpec{{Tuple{t, z, z}, Tuple{z, t, z}, Tuple{z, z, t}}},
      ModuleSpanSpec{},
      GeneratedSpec{{Tuple{t, t, z}}},
  };
  for (const auto& spec : battery) {
    std::int64_t prev = 0;
    for (int n = 1; n <= 3; ++n) {
      std::int64_t fast = image_log_index(heis, spec, n, kBudget);
      CHECK(fast == bruteforce_oracle(heis, spec, n, kBudget));
      CHECK(fast >= prev);
      CHECK(fast <= heis.ambient_log_index(n));
      prev = fast;
    }
  }
}

TEST_CASE("full and trivial spans") {
  Ring r = f2t();
  Presentation heis(GroupLaw::heisenberg(r, 10), 1);
  Element t = tpow(r, 10, 1);
  Element z(r, 10);
  SubgroupSpec full =
      ModuleSpanSpec{{Tuple{t, z, z}, Tuple{z, t, z}, Tuple{z, z, t}}};
  SubgroupSpec trivial = ModuleSpanSpec{};
  for (int n = 1; n <= 3; ++n) {
    CHECK(image_log_index(heis, full, n, kBudget) ==
          heis.ambient_log_index(n));
    CHECK(image_log_index(heis, trivial, n, kBudget) == 0);
    CHECK(bruteforce_oracle(heis, trivial, n, kBudget) == 0);
  }
}

TEST_CASE("reduction to the quotient is a homomorphism") {
  Ring r = f2t();
  std::mt19937_64 rng(47);
  for (const GroupLaw& law :
       {GroupLaw::heisenberg(r, 10), GroupLaw::multiplicative(r, 10)}) {
    Presentation p(law, 1);
    for (int n = 1; n <= 3; ++n) {
      QuotientContext ctx(p, n);
      for (int trial = 0; trial < 15; ++trial) {
        Tuple x = random_tuple(p, rng);
        Tuple y = random_tuple(p, rng);
        Tuple full = law_multiply(p, x, y);
        CHECK(tuple_equal(ctx.reduce(full),
                          ctx.multiply(ctx.reduce(x), ctx.reduce(y))));
        CHECK(tuple_equal(ctx.reduce(law_inverse(p, x)),
                          ctx.inverse(ctx.reduce(x))));
      }
    }
  }
}

TEST_CASE("module images bracket e times the ambient growth") {
  // generators of valuation level + v keep |log_q index - e f(n)| <= e * v
  Ring r = f2t();
  Presentation add2(GroupLaw::additive(r, 2, 12), 1);
  Element t2 = tpow(r, 12, 2);
  Element t3 = tpow(r, 12, 3);
  SubgroupSpec deep = ModuleSpanSpec{{Tuple{t2, t3}}};
  int e = kspan_rank(r, std::get<ModuleSpanSpec>(deep).gens, 12);
  CHECK(e == 1);
  for (int n = 1; n <= 8; ++n) {
    std::int64_t log_q = image_log_index(add2, deep, n, kBudget);
    std::int64_t f = r.filtration_exponent(1, n);
    CHECK(std::abs(log_q - e * f) <= 1);
  }
  // and the ratio approaches e: exact equality holds for level-valuation gens
  Element t1 = tpow(r, 12, 1);
  SubgroupSpec shallow = ModuleSpanSpec{{Tuple{t1, t1}}};
  for (int n = 1; n <= 8; ++n)
    CHECK(image_log_index(add2, shallow, n, kBudget) ==
          r.filtration_exponent(1, n));
}

TEST_CASE("spec validation") {
  Ring r = f2t();
  Presentation heis(GroupLaw::heisenberg(r, 10), 2);
  Element t = tpow(r, 10, 1);  // valuation 1 < level 2
  Element z(r, 10);
  SubgroupSpec shallow = ModuleSpanSpec{{Tuple{t, z, z}}};
  CHECK_THROWS_AS(validate_spec(heis, shallow), ValidationError);
  SubgroupSpec bad_coord = ValuationSetSpec{{}, {1}, 5};
  CHECK_THROWS_AS(validate_spec(heis, bad_coord), ValidationError);
  Ring z3 = Ring::padic(3);
  Presentation padd(GroupLaw::additive(z3, 1, 6), 1);
  SubgroupSpec vs = ValuationSetSpec{{}, {1}, 1};
  CHECK_THROWS_AS(validate_spec(padd, vs), ValidationError);
}
