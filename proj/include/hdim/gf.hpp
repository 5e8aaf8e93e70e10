#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace hdim {

bool is_prime(std::uint32_t n);

// The residue field F_q, q = p^s with s <= 3. An element is a packed
// base-p digit vector: the value c0 + c1*p + c2*p^2 stands for the
// polynomial c0 + c1*g + c2*g^2, where g is a root of the modulus.
// The modulus is the first (in packed order) monic degree-s polynomial
// over F_p without roots, which is irreducible for s <= 3.
class ResidueField {
 public:
  ResidueField();  // F_2
  ResidueField(std::uint32_t p, std::uint32_t s);

  std::uint32_t p() const { return p_; }
  std::uint32_t s() const { return s_; }
  std::uint32_t q() const { return q_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

  // canonical image of an integer (lands in the prime subfield)
  std::uint32_t from_int(std::int64_t v) const;

  // modulus coefficients c0..c_s (monic); meaningful for s >= 2
  const std::array<std::uint32_t, 4>& modulus() const { return mod_; }

  // "1", "2", "g", "g^2+g+1", ...
  std::string element_name(std::uint32_t a) const;

  bool operator==(const ResidueField& o) const {
    return p_ == o.p_ && s_ == o.s_;
  }

 private:
  void unpack(std::uint32_t a, std::uint32_t* d) const;
  std::uint32_t pack(const std::uint32_t* d) const;
  void find_modulus();

  std::uint32_t p_ = 2, s_ = 1, q_ = 2;
  std::array<std::uint32_t, 4> mod_{};
};

}  // namespace hdim
