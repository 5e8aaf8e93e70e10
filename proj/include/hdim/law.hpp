#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hdim/series.hpp"

namespace hdim {

// d power series in 2d variables (X block, then Y block) giving the group
// product in chart coordinates: component j must read X_j + Y_j + higher
// mixed terms.
class GroupLaw {
 public:
  GroupLaw(const Ring& ring, int dim, int trunc, std::vector<Series> comps,
           std::string label = "");

  static GroupLaw additive(const Ring& ring, int dim, int trunc);
  static GroupLaw multiplicative(const Ring& ring, int trunc);  // d = 1
  static GroupLaw heisenberg(const Ring& ring, int trunc);      // d = 3
  static GroupLaw product(const GroupLaw& a, const GroupLaw& b);

  const Ring& ring() const { return ring_; }
  int dim() const { return dim_; }
  int trunc() const { return trunc_; }
  const std::string& label() const { return label_; }
  const Series& component(int j) const { return comps_[static_cast<size_t>(j)]; }
  const std::vector<Series>& components() const { return comps_; }

  bool is_additive() const;
  GroupLaw truncated(int m) const;
  std::string variable_name(int index) const;  // "X1".."Xd","Y1".."Yd"

 private:
  Ring ring_;
  int dim_;
  int trunc_;
  std::vector<Series> comps_;
  std::string label_;
};

// Builtin catalog. Accepts "additive(d)", "multiplicative", "heisenberg",
// and "product(a, b, ...)" with nested builtin names; `dim` cross-checks
// the resulting dimension when positive.
GroupLaw builtin_law(const std::string& name, const Ring& ring, int dim,
                     int trunc);

struct LawViolation {
  int component;         // 1-based
  std::string monomial;  // offending monomial, law variable names
  std::string rule;      // "constant-term" | "linear-part" | "mixed-monomial"
  std::string detail;
};

// Structural checks: no constant term, linear part exactly X_j + Y_j, and
// every degree->=2 monomial mixing a positive X power with a positive Y power.
std::vector<LawViolation> validate_law(const GroupLaw& law);

// A standard presentation: the chart image (m^level)^(dim) carrying `law`,
// computed throughout at truncation law.trunc().
class Presentation {
 public:
  Presentation(GroupLaw law, int level, bool relax_level_rule = false);

  const GroupLaw& law() const { return law_; }
  const Ring& ring() const { return law_.ring(); }
  int dim() const { return law_.dim(); }
  int level() const { return level_; }
  int trunc() const { return law_.trunc(); }
  // log_p |S : S_n| = dim * f(n) * log_p q
  std::int64_t ambient_log_index(int steps) const;

 private:
  GroupLaw law_;
  int level_;
};

using Tuple = std::vector<Element>;

Tuple zero_tuple(const Presentation& p);
Tuple zero_tuple(const Presentation& p, int trunc);
int tuple_valuation(const Tuple& x);  // min coordinate valuation
Tuple truncate_tuple(const Tuple& x, int m);
std::string tuple_key(const Tuple& x);
std::string tuple_to_string(const Tuple& x);
bool tuple_equal(const Tuple& a, const Tuple& b);

// F(x, y), exact mod m^trunc of the arguments (which must agree and not
// exceed the law's truncation); coordinates must have valuation >= level.
Tuple law_multiply(const Presentation& p, const Tuple& x, const Tuple& y);

// The inverse of x: successive correction y <- y - F(x, y), starting from
// y = -x; each pass raises the defect valuation, so it lands within trunc
// steps for any law that validates.
Tuple law_inverse(const Presentation& p, const Tuple& x);

// Uniformly random chart point with coordinates drawn on the monomial basis
// of degrees [level, trunc) (or residues p^level * [0, p^{trunc-level})).
Tuple random_tuple(const Presentation& p, std::mt19937_64& rng);

// Empirical associativity probe for user-supplied laws; returns a violating
// triple if one is found among `trials` random triples.
std::optional<std::array<Tuple, 3>> find_associativity_violation(
    const Presentation& p, int trials, std::uint64_t seed);

}  // namespace hdim
