#include <doctest.h>

#include "hdim/errors.hpp"
#include "hdim/transform.hpp"

using namespace hdim;

namespace {

Ring f2t() { return Ring::power_series(2, 1, 1); }

Series xvar(const Ring& r, int trunc) { return Series::variable(r, 1, trunc, 0); }

std::string xname(int) { return "X"; }

}  // namespace

TEST_CASE("substitution engine") {
  Ring r = f2t();
  // outer X^2, inner X + X^2, M = 4, characteristic 2: X^2 + 2X^3 + ... = X^2
  Series outer = xvar(r, 4).pow(2);
  Series inner = xvar(r, 4) + xvar(r, 4).pow(2);
  CHECK(outer.substituted({inner}).to_string(xname) == "X^2");
  // identity outer leaves the inner series unchanged
  CHECK(xvar(r, 4).substituted({inner}) == inner);
  // constant terms are rejected
  Series with_const =
      inner + Series::constant(r, 1, 4, Element::from_int(r, 4, 1));
  CHECK_THROWS_AS(outer.substituted({with_const}), ValidationError);
}

TEST_CASE("invert_transform on the catalog") {
  Ring r = f2t();
  // identity
  ChartTransform id = ChartTransform::identity(r, 2, 6);
  CHECK(invert_transform(id).kind() == ChartTransform::Kind::Identity);
  // unit scaling u -> u^{-1}
  Element u = Element::from_int(r, 6, 1) +
              Element::monomial(r, 6, Monomial::variable(0));
  ChartTransform us = ChartTransform::scaling(u, 1);
  ChartTransform usi = invert_transform(us);
  CHECK(usi.factor() == u.unit_inverse());
  // X + X^2 at M = 5 inverts to X + X^2 + X^4
  ChartTransform tau =
      ChartTransform::series({xvar(r, 5) + xvar(r, 5).pow(2)});
  ChartTransform sigma = invert_transform(tau);
  CHECK(sigma.components()[0].to_string(xname) == "X + X^2 + X^4");
  // both compositions are the identity
  Series back = tau.components()[0].substituted({sigma.components()[0]});
  CHECK(back.to_string(xname) == "X");
  Series forth = sigma.components()[0].substituted({tau.components()[0]});
  CHECK(forth.to_string(xname) == "X");
  // level-shifting scalars have no inverse over R
  Element t = Element::monomial(r, 6, Monomial::variable(0));
  CHECK_THROWS_AS(invert_transform(ChartTransform::scaling(t, 1)),
                  ValidationError);
}

TEST_CASE("transforms reject degenerate linear parts") {
  Ring r = f2t();
  Element t6 = Element::monomial(r, 6, Monomial::variable(0));
  // t*X written as a series transform has a non-unit Jacobian
  Series degenerate = xvar(r, 6).scaled(t6);
  CHECK_THROWS_AS(ChartTransform::series({degenerate}), ValidationError);
  CHECK_THROWS_AS(ChartTransform::scaling(Element(r, 6), 1), ValidationError);
  CHECK_THROWS_AS(
      ChartTransform::scaling(t6.times_monomial(Monomial::variable(0)), 1),
      ValidationError);  // valuation 2 scaling not supported
}

TEST_CASE("transform_presentation: scalings") {
  Ring r = f2t();
  Presentation add(GroupLaw::additive(r, 1, 8), 1);
  Element t = Element::monomial(r, 8, Monomial::variable(0));
  // t*X: additive law again, one level deeper
  Presentation shifted = transform_presentation(add, ChartTransform::scaling(t, 1));
  CHECK(shifted.level() == 2);
  CHECK(shifted.law().is_additive());
  // unit scaling by 1 + t keeps the level and conjugates the law
  Presentation mult(GroupLaw::multiplicative(r, 8), 1);
  Element u = Element::from_int(r, 8, 1) + t;
  Presentation conj = transform_presentation(mult, ChartTransform::scaling(u, 1));
  CHECK(conj.level() == 1);
  CHECK(validate_law(conj.law()).empty());
  // the degree-2 coefficient picks up u^{-1}
  Monomial xy = Monomial::variable(0).times(Monomial::variable(1));
  CHECK(conj.law().component(0).terms().at(xy) == u.unit_inverse());
}

TEST_CASE("transform_presentation: unit-Jacobian series") {
  Ring r = f2t();
  // additive conjugated by any linear unit map stays additive
  Presentation add2(GroupLaw::additive(r, 2, 8), 1);
  std::vector<Series> linear;
  linear.push_back(Series::variable(r, 2, 8, 0) + Series::variable(r, 2, 8, 1));
  linear.push_back(Series::variable(r, 2, 8, 1));
  Presentation still_add =
      transform_presentation(add2, ChartTransform::series(std::move(linear)));
  CHECK(still_add.law().is_additive());
  // multiplicative under X + X^2: some valid law with linear part X + Y
  Presentation mult(GroupLaw::multiplicative(r, 12), 1);
  ChartTransform tau = ChartTransform::series(
      {Series::variable(r, 1, 12, 0) + Series::variable(r, 1, 12, 0).pow(2)});
  Presentation conj = transform_presentation(mult, tau);
  CHECK(validate_law(conj.law()).empty());
  Element one = Element::from_int(r, 12, 1);
  CHECK(conj.law().component(0).linear_coefficient(0) == one);
  CHECK(conj.law().component(0).linear_coefficient(1) == one);
  CHECK(conj.law().component(0) != mult.law().component(0));
  // conjugating back recovers the original law mod degree M
  Presentation back = transform_presentation(conj, invert_transform(tau));
  CHECK(back.law().component(0) == mult.law().component(0));
}

TEST_CASE("two-variable transform with an off-diagonal Jacobian") {
  Ring r = f2t();
  int M = 8;
  Series x1 = Series::variable(r, 2, M, 0);
  Series x2 = Series::variable(r, 2, M, 1);
  // linear part [[1,1],[0,1]], plus mixed and square corrections
  ChartTransform tau = ChartTransform::series({x1 + x2 + x1 * x2, x2 + x2.pow(2)});
  ChartTransform sigma = invert_transform(tau);
  for (int i = 0; i < 2; ++i) {
    Series back = tau.components()[static_cast<size_t>(i)].substituted(
        sigma.components());
    Series forth = sigma.components()[static_cast<size_t>(i)].substituted(
        tau.components());
    Series ident = Series::variable(r, 2, M, i);
    CHECK(back == ident);
    CHECK(forth == ident);
  }
  // the mixed X1*X2 term is not additive, so the conjugated plane is a
  // different (but valid) law isomorphic to it
  Presentation add2(GroupLaw::additive(r, 2, M), 1);
  Presentation twisted = transform_presentation(add2, tau);
  CHECK(validate_law(twisted.law()).empty());
  CHECK(!twisted.law().is_additive());
  GroupLaw prod =
      GroupLaw::product(GroupLaw::multiplicative(r, M), GroupLaw::multiplicative(r, M));
  Presentation pp(prod, 1);
  Presentation conj = transform_presentation(pp, tau);
  CHECK(validate_law(conj.law()).empty());
  Presentation back = transform_presentation(conj, sigma);
  for (int j = 0; j < 2; ++j)
    CHECK(back.law().component(j) == prod.component(j));
}

TEST_CASE("higher-degree substitutions invert degree by degree") {
  Ring r = f2t();
  Series xv = Series::variable(r, 1, 8, 0);
  ChartTransform tau = ChartTransform::series({xv + xv.pow(3)});
  ChartTransform sigma = invert_transform(tau);
  Series forth = sigma.components()[0].substituted(tau.components());
  CHECK(forth == xv);
  // solving tau(sigma) = X degree by degree over characteristic 2:
  // a3 = 1, a5 = a3 = 1, a7 = a3^2 + a5 = 0, so sigma = X + X^3 + X^5
  CHECK(sigma.components()[0].to_string([](int) { return std::string("X"); }) ==
        "X + X^3 + X^5");
}

TEST_CASE("transform application to points") {
  Ring r = f2t();
  Element t = Element::monomial(r, 6, Monomial::variable(0));
  ChartTransform tau = ChartTransform::series({xvar(r, 6) + xvar(r, 6).pow(2)});
  Tuple image = tau.apply({t});
  CHECK(image[0].to_string() == "t + t^2");
  ChartTransform scale = ChartTransform::scaling(t, 1);
  CHECK(scale.apply({t})[0].to_string() == "t^2");
  CHECK(scale.level_shift() == 1);
  CHECK(tau.level_shift() == 0);
}
