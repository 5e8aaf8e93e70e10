#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "hdim/ring.hpp"

namespace hdim {

// One element of R/m^M. PAdic rings store a residue in [0, p^M);
// power series rings store the monomials of degree < M with nonzero
// residue-field coefficients. valuation(0) == M by convention.
class Element {
 public:
  Element(const Ring& ring, int trunc);  // zero
  static Element from_int(const Ring& ring, int trunc, std::int64_t v);
  static Element monomial(const Ring& ring, int trunc, const Monomial& m,
                          std::uint32_t coeff = 1);

  const Ring& ring() const { return ring_; }
  int trunc() const { return trunc_; }
  bool is_zero() const;
  int valuation() const;

  Element operator+(const Element& o) const;
  Element operator-() const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;
  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }

  Element scaled(std::uint32_t c) const;  // residue-field scalar
  Element times_monomial(const Monomial& m) const;
  Element truncated(int m) const;  // reduce precision to m <= trunc
  Element unit_inverse() const;    // requires valuation 0
  Element pow(std::uint32_t k) const;

  std::uint64_t residue() const { return residue_; }
  const std::map<Monomial, std::uint32_t>& terms() const { return terms_; }
  std::uint32_t coefficient(const Monomial& m) const;

  // Deterministic bytes identifying this class mod m^trunc.
  void append_key(std::string* out) const;
  std::string to_string() const;

 private:
  void check_compatible(const Element& o) const;
  void insert_term(const Monomial& m, std::uint32_t c);

  Ring ring_;
  int trunc_;
  std::uint64_t residue_ = 0;                // PAdic
  std::map<Monomial, std::uint32_t> terms_;  // PowerSeries, no zero entries
};

}  // namespace hdim
