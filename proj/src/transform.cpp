#include "hdim/transform.hpp"

#include <stdexcept>

#include "hdim/errors.hpp"

namespace hdim {

namespace {

// Inverse of a d x d matrix of ring elements whose reduction mod m is
// invertible; Gauss-Jordan with unit pivots.
std::vector<std::vector<Element>> invert_unit_matrix(
    std::vector<std::vector<Element>> a, const Ring& ring, int trunc) {
  size_t d = a.size();
  std::vector<std::vector<Element>> inv(
      d, std::vector<Element>(d, Element(ring, trunc)));
  for (size_t i = 0; i < d; ++i)
    inv[i][i] = Element::from_int(ring, trunc, 1);
  for (size_t col = 0; col < d; ++col) {
    size_t pivot = col;
    while (pivot < d && a[pivot][col].valuation() != 0) ++pivot;
    if (pivot == d) throw ValidationError("non-invertible linear part");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Element scale = a[col][col].unit_inverse();
    for (size_t j = 0; j < d; ++j) {
      a[col][j] = a[col][j] * scale;
      inv[col][j] = inv[col][j] * scale;
    }
    for (size_t row = 0; row < d; ++row) {
      if (row == col || a[row][col].is_zero()) continue;
      Element f = a[row][col];
      for (size_t j = 0; j < d; ++j) {
        a[row][j] = a[row][j] - f * a[col][j];
        inv[row][j] = inv[row][j] - f * inv[col][j];
      }
    }
  }
  return inv;
}

std::vector<Series> identity_components(const Ring& ring, int dim, int trunc) {
  std::vector<Series> comps;
  for (int j = 0; j < dim; ++j)
    comps.push_back(Series::variable(ring, dim, trunc, j));
  return comps;
}

}  // namespace

ChartTransform ChartTransform::identity(const Ring& ring, int dim, int trunc) {
  ChartTransform t(ring, dim, trunc);
  return t;
}

ChartTransform ChartTransform::scaling(const Element& factor, int dim) {
  if (factor.is_zero())
    throw ValidationError("scaling factor must be nonzero");
  if (factor.valuation() > 1)
    throw ValidationError(
        "scaling factors are units or have valuation exactly 1");
  ChartTransform t(factor.ring(), dim, factor.trunc());
  t.kind_ = Kind::Scalar;
  t.factor_ = factor;
  return t;
}

ChartTransform ChartTransform::series(std::vector<hdim::Series> comps) {
  if (comps.empty()) throw std::invalid_argument("empty transform");
  const Ring& ring = comps.front().ring();
  int dim = static_cast<int>(comps.size());
  int trunc = comps.front().trunc();
  for (const auto& c : comps) {
    if (c.num_vars() != dim || c.trunc() != trunc || c.ring() != ring)
      throw ValidationError("transform component shape mismatch");
    if (!c.constant_term().is_zero())
      throw ValidationError("transform must fix 0 (no constant term)");
  }
  // demand an invertible linear part now; inversion reuses it later
  std::vector<std::vector<Element>> jac(
      static_cast<size_t>(dim),
      std::vector<Element>(static_cast<size_t>(dim), Element(ring, trunc)));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      jac[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          comps[static_cast<size_t>(i)].linear_coefficient(j);
  invert_unit_matrix(jac, ring, trunc);
  ChartTransform t(ring, dim, trunc);
  t.kind_ = Kind::Series;
  t.comps_ = std::move(comps);
  return t;
}

int ChartTransform::level_shift() const {
  return kind_ == Kind::Scalar ? factor_.valuation() : 0;
}

Tuple ChartTransform::apply(const Tuple& x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw ValidationError("tuple arity does not match the transform");
  switch (kind_) {
    case Kind::Identity:
      return x;
    case Kind::Scalar: {
      Tuple out;
      out.reserve(x.size());
      int at = x.front().trunc();
      Element f = factor_.trunc() == at ? factor_ : factor_.truncated(at);
      for (const auto& c : x) out.push_back(c * f);
      return out;
    }
    case Kind::Series: {
      Tuple out;
      out.reserve(x.size());
      int at = x.front().trunc();
      for (const auto& comp : comps_) {
        Series s = comp.trunc() == at ? comp : comp.truncated(at);
        out.push_back(s.evaluate(x));
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

std::string ChartTransform::describe() const {
  switch (kind_) {
    case Kind::Identity:
      return "identity";
    case Kind::Scalar:
      return "scaling by " + factor_.to_string();
    case Kind::Series: {
      std::string out;
      for (size_t j = 0; j < comps_.size(); ++j) {
        if (j) out += "; ";
        out += comps_[j].to_string(
            [&](int i) { return dim_ == 1 ? "X" : "X" + std::to_string(i + 1); });
      }
      return out;
    }
  }
  return "";
}

ChartTransform invert_transform(const ChartTransform& tau) {
  switch (tau.kind()) {
    case ChartTransform::Kind::Identity:
      return tau;
    case ChartTransform::Kind::Scalar: {
      if (tau.factor().valuation() != 0)
        throw ValidationError(
            "level-shifting scalings invert only on the shifted domain");
      return ChartTransform::scaling(tau.factor().unit_inverse(), tau.dim());
    }
    case ChartTransform::Kind::Series:
      break;
  }
  const Ring& ring = tau.ring();
  int d = tau.dim();
  int trunc = tau.trunc();
  std::vector<std::vector<Element>> jac(
      static_cast<size_t>(d),
      std::vector<Element>(static_cast<size_t>(d), Element(ring, trunc)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      jac[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          tau.components()[static_cast<size_t>(i)].linear_coefficient(j);
  auto jinv = invert_unit_matrix(jac, ring, trunc);

  std::vector<Series> ident = identity_components(ring, d, trunc);
  // sigma_0 = J^{-1} X, then kill the defect degree by degree
  std::vector<Series> sigma;
  for (int i = 0; i < d; ++i) {
    Series s(ring, d, trunc);
    for (int j = 0; j < d; ++j)
      s = s + Series::variable(ring, d, trunc, j)
                  .scaled(jinv[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    sigma.push_back(std::move(s));
  }
  for (int pass = 0; pass <= trunc + 1; ++pass) {
    std::vector<Series> defect;
    bool zero = true;
    for (int i = 0; i < d; ++i) {
      Series di = tau.components()[static_cast<size_t>(i)].substituted(sigma) -
                  ident[static_cast<size_t>(i)];
      zero = zero && di.is_zero();
      defect.push_back(std::move(di));
    }
    if (zero) {
      for (int i = 0; i < d; ++i) {
        Series check =
            sigma[static_cast<size_t>(i)].substituted(tau.components()) -
            ident[static_cast<size_t>(i)];
        if (!check.is_zero())
          throw ValidationError("transform inverse is one-sided only");
      }
      return ChartTransform::series(std::move(sigma));
    }
    for (int i = 0; i < d; ++i) {
      Series corr(ring, d, trunc);
      for (int j = 0; j < d; ++j)
        corr = corr + defect[static_cast<size_t>(j)].scaled(
                          jinv[static_cast<size_t>(i)][static_cast<size_t>(j)]);
      sigma[static_cast<size_t>(i)] = sigma[static_cast<size_t>(i)] - corr;
    }
  }
  throw ValidationError("transform inversion did not converge");
}

Presentation transform_presentation(const Presentation& p,
                                    const ChartTransform& tau) {
  if (tau.ring() != p.ring() || tau.dim() != p.dim() ||
      tau.trunc() != p.trunc())
    throw ValidationError("transform does not match the presentation");
  switch (tau.kind()) {
    case ChartTransform::Kind::Identity:
      return p;
    case ChartTransform::Kind::Scalar: {
      int delta = tau.level_shift();
      if (delta >= 1) {
        // restriction chart onto (m^{N+delta})^(d); the law is unchanged
        if (p.trunc() <= p.level() + delta)
          throw ValidationError("truncation too small for the shifted level");
        return Presentation(p.law(), p.level() + delta);
      }
      // unit scaling: conjugation multiplies a degree-k coefficient by u^{1-k}
      Element uinv = tau.factor().unit_inverse();
      std::vector<Series> comps;
      for (int j = 0; j < p.dim(); ++j) {
        Series out(p.ring(), 2 * p.dim(), p.trunc());
        for (const auto& [m, c] : p.law().component(j).terms()) {
          Element scale = Element::from_int(p.ring(), p.trunc(), 1);
          for (std::uint32_t k = 1; k < m.degree(); ++k) scale = scale * uinv;
          out.add_term(m, c * scale);
        }
        comps.push_back(std::move(out));
      }
      GroupLaw conj(p.ring(), p.dim(), p.trunc(), std::move(comps),
                    p.law().label() + " / " + tau.describe());
      auto violations = validate_law(conj);
      if (!violations.empty())
        throw ValidationError("transformed law fails validation: " +
                              violations.front().rule);
      return Presentation(std::move(conj), p.level());
    }
    case ChartTransform::Kind::Series:
      break;
  }
  ChartTransform sigma = invert_transform(tau);
  int d = p.dim();
  int trunc = p.trunc();
  const Ring& ring = p.ring();
  // blocks: sigma applied to the X variables and to the Y variables
  std::vector<int> xmap(static_cast<size_t>(d)), ymap(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    xmap[static_cast<size_t>(i)] = i;
    ymap[static_cast<size_t>(i)] = d + i;
  }
  std::vector<Series> inner;
  inner.reserve(static_cast<size_t>(2 * d));
  for (int i = 0; i < d; ++i)
    inner.push_back(
        remap_variables(sigma.components()[static_cast<size_t>(i)], 2 * d, xmap));
  for (int i = 0; i < d; ++i)
    inner.push_back(
        remap_variables(sigma.components()[static_cast<size_t>(i)], 2 * d, ymap));
  std::vector<Series> mid;
  mid.reserve(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j)
    mid.push_back(p.law().component(j).substituted(inner));
  std::vector<Series> comps;
  comps.reserve(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j)
    comps.push_back(tau.components()[static_cast<size_t>(j)].substituted(mid));
  GroupLaw conj(ring, d, trunc, std::move(comps),
                p.law().label() + " / chart change");
  auto violations = validate_law(conj);
  if (!violations.empty())
    throw ValidationError(
        "transformed law fails validation: component " +
        std::to_string(violations.front().component) + ", " +
        violations.front().rule + " (" + violations.front().monomial + ")");
  return Presentation(std::move(conj), p.level());
}

}  // namespace hdim
