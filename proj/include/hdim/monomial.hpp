#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace hdim {

// Exponent vector for up to 16 variables, 4 bits per exponent. Ordered by
// total degree first, then by packed exponents with variable 0 in the low
// nibble; within degree 2 that lists t1^2, t1*t2, t2^2.
class Monomial {
 public:
  static constexpr int kMaxVars = 16;
  static constexpr std::uint32_t kMaxExp = 15;

  Monomial() = default;  // the empty product

  static Monomial variable(int index, std::uint32_t power = 1) {
    if (index < 0 || index >= kMaxVars)
      throw std::out_of_range("variable index out of range");
    if (power > kMaxExp) throw std::overflow_error("monomial exponent overflow");
    Monomial m;
    m.packed_ = static_cast<std::uint64_t>(power) << (4 * index);
    m.degree_ = power;
    return m;
  }

  std::uint32_t exponent(int index) const {
    return static_cast<std::uint32_t>(packed_ >> (4 * index)) & 0xF;
  }
  std::uint32_t degree() const { return degree_; }
  bool is_constant() const { return degree_ == 0; }
  std::uint64_t packed() const { return packed_; }

  Monomial times(const Monomial& o) const {
    Monomial m;
    m.degree_ = degree_ + o.degree_;
    for (int i = 0; i < kMaxVars; ++i) {
      std::uint32_t e = exponent(i) + o.exponent(i);
      if (e > kMaxExp) throw std::overflow_error("monomial exponent overflow");
      m.packed_ |= static_cast<std::uint64_t>(e) << (4 * i);
    }
    return m;
  }

  Monomial pow(std::uint32_t k) const {
    Monomial m;
    for (std::uint32_t i = 0; i < k; ++i) m = m.times(*this);
    return m;
  }

  friend std::strong_ordering operator<=>(const Monomial& a,
                                          const Monomial& b) {
    if (a.degree_ != b.degree_)
      return a.degree_ <=> b.degree_;
    return a.packed_ <=> b.packed_;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

  std::string to_string(
      const std::function<std::string(int)>& var_name) const {
    if (is_constant()) return "1";
    std::string out;
    for (int i = 0; i < kMaxVars; ++i) {
      std::uint32_t e = exponent(i);
      if (e == 0) continue;
      if (!out.empty()) out += "*";
      out += var_name(i);
      if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
  }

 private:
  std::uint64_t packed_ = 0;
  std::uint32_t degree_ = 0;
};

}  // namespace hdim
