#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hdim/gf.hpp"
#include "hdim/monomial.hpp"

namespace hdim {

enum class RingKind { PAdic, PowerSeries };

// Coefficient ring descriptor: Z_p, or F_q[[t_1..t_r]] with q = p^s.
// Immutable and cheap to copy; element arithmetic lives in Element.
class Ring {
 public:
  static Ring padic(std::uint32_t p);
  static Ring power_series(std::uint32_t p, std::uint32_t s, int num_vars);

  RingKind kind() const { return kind_; }
  bool is_padic() const { return kind_ == RingKind::PAdic; }
  std::uint32_t p() const { return field_.p(); }
  std::uint32_t q() const { return field_.q(); }
  // log_p q
  std::int64_t residue_log_p() const { return field_.s(); }
  int num_vars() const { return num_vars_; }
  const ResidueField& field() const { return field_; }

  // H(n) = residue-field dimension of the n-th graded piece of m.
  std::int64_t hilbert(int n) const;
  // f(n) relative to `level`: sum of H(i) for i in [level, level + steps).
  std::int64_t filtration_exponent(int level, int steps) const;
  // All monomials with lo <= degree < hi in graded order. Power series only.
  std::vector<Monomial> monomials_in_degree_range(int lo, int hi) const;

  // Minimum admissible presentation level: 1, except 2 for Z_2 unless relaxed.
  int min_level(bool relax = false) const;

  std::string describe() const;            // "Z_3", "F_4[[t1,t2]]"
  std::string variable_name(int index) const;

  bool operator==(const Ring& o) const {
    return kind_ == o.kind_ && field_ == o.field_ && num_vars_ == o.num_vars_;
  }
  bool operator!=(const Ring& o) const { return !(*this == o); }

 private:
  Ring() = default;
  RingKind kind_ = RingKind::PowerSeries;
  ResidueField field_;
  int num_vars_ = 1;
};

// p^m as uint64, guarded against overflow past 2^62.
std::uint64_t padic_modulus(std::uint32_t p, int m);

}  // namespace hdim
