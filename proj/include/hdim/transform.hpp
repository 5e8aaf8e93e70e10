#pragma once

#include <string>
#include <vector>

#include "hdim/law.hpp"

namespace hdim {

// A change of chart. Three supported classes:
//  - identity;
//  - scaling by a ring element c with valuation 0 (a unit) or 1 (a uniform
//    level shift, e.g. t or p), the shift being delta = v(c);
//  - a d-tuple of series without constant term whose linear part is an
//    invertible matrix over R (delta = 0).
class ChartTransform {
 public:
  enum class Kind { Identity, Scalar, Series };

  static ChartTransform identity(const Ring& ring, int dim, int trunc);
  static ChartTransform scaling(const Element& factor, int dim);
  static ChartTransform series(std::vector<hdim::Series> comps);

  Kind kind() const { return kind_; }
  const Ring& ring() const { return ring_; }
  int dim() const { return dim_; }
  int trunc() const { return trunc_; }
  const Element& factor() const { return factor_; }
  const std::vector<hdim::Series>& components() const { return comps_; }
  // delta: the transform maps (m^N)^(d) onto (m^{N+delta})^(d)
  int level_shift() const;

  Tuple apply(const Tuple& x) const;
  std::string describe() const;

 private:
  ChartTransform(const Ring& ring, int dim, int trunc)
      : kind_(Kind::Identity), ring_(ring), dim_(dim), trunc_(trunc),
        factor_(ring, trunc) {}

  Kind kind_;
  Ring ring_;
  int dim_;
  int trunc_;
  Element factor_;
  std::vector<hdim::Series> comps_;
};

// Inverse chart map sigma with tau(sigma(X)) = sigma(tau(X)) = X mod degree
// trunc, solved degree by degree; requires an invertible linear part
// (identity, unit scalar, or unit-Jacobian series). Level shifts >= 1 have
// no inverse over R (only on the shifted domain) and are rejected.
ChartTransform invert_transform(const ChartTransform& tau);

// The presentation seen through the new chart. Unit-Jacobian transforms
// (delta = 0) conjugate the law by substitution and keep the level; a
// scaling with delta >= 1 restricts the chart to the level-(N+delta)
// carrier, where the law is unchanged.
Presentation transform_presentation(const Presentation& p,
                                    const ChartTransform& tau);

}  // namespace hdim
