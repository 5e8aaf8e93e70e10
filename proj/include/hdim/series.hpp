#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hdim/element.hpp"

namespace hdim {

// Polynomial in `num_vars` formal variables with Element coefficients,
// truncated at total variable degree < trunc; coefficients carry the same
// truncation. Backbone for group laws and chart transforms. Substituting
// arguments of valuation >= 1 makes the degree cut exact mod m^trunc.
class Series {
 public:
  Series(const Ring& ring, int num_vars, int trunc);  // zero
  static Series variable(const Ring& ring, int num_vars, int trunc, int index);
  static Series constant(const Ring& ring, int num_vars, int trunc,
                         const Element& c);

  const Ring& ring() const { return ring_; }
  int num_vars() const { return num_vars_; }
  int trunc() const { return trunc_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Element>& terms() const { return terms_; }

  void add_term(const Monomial& m, const Element& c);  // accumulates

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator*(const Series& o) const;
  Series operator-() const;
  bool operator==(const Series& o) const;
  bool operator!=(const Series& o) const { return !(*this == o); }

  Series scaled(const Element& c) const;
  Series truncated(int m) const;  // cuts both degree and coefficients
  Series pow(std::uint32_t k) const;

  Element constant_term() const;
  Element linear_coefficient(int var) const;
  int min_degree() const;  // trunc for the zero series

  // Substitute ring elements for the variables; arguments must all share
  // a truncation <= trunc and have valuation >= 1.
  Element evaluate(std::span<const Element> args) const;
  // Substitute series (one per variable, no constant terms).
  Series substituted(const std::vector<Series>& inner) const;

  std::string to_string(const std::function<std::string(int)>& var_name) const;

 private:
  void check_compatible(const Series& o) const;

  Ring ring_;
  int num_vars_;
  int trunc_;
  std::map<Monomial, Element> terms_;  // no zero coefficients
};

// Move a series into a larger variable space: variable i becomes var_map[i].
Series remap_variables(const Series& s, int new_num_vars,
                       const std::vector<int>& var_map);

}  // namespace hdim
