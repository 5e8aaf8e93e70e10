#include "hdim/gf.hpp"

#include <stdexcept>

namespace hdim {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

ResidueField::ResidueField() : ResidueField(2, 1) {}

ResidueField::ResidueField(std::uint32_t p, std::uint32_t s) : p_(p), s_(s) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (s < 1 || s > 3)
    throw std::invalid_argument("residue fields limited to q = p^s, s <= 3");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < s; ++i) q *= p;
  if (q > (1u << 20))
    throw std::invalid_argument("residue field too large");
  q_ = static_cast<std::uint32_t>(q);
  if (s_ >= 2) find_modulus();
}

void ResidueField::unpack(std::uint32_t a, std::uint32_t* d) const {
  for (std::uint32_t i = 0; i < s_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
}

std::uint32_t ResidueField::pack(const std::uint32_t* d) const {
  std::uint32_t a = 0;
  for (std::uint32_t i = s_; i-- > 0;) a = a * p_ + d[i];
  return a;
}

void ResidueField::find_modulus() {
  // x^s + c_{s-1} x^{s-1} + ... + c_0; a degree-2 or -3 polynomial is
  // irreducible over F_p exactly when it has no root.
  for (std::uint32_t c = 0; c < q_; ++c) {
    std::uint32_t digits[4] = {0, 0, 0, 0};
    unpack(c, digits);
    bool has_root = false;
    for (std::uint32_t a = 0; a < p_ && !has_root; ++a) {
      std::uint64_t v = 1;
      for (std::uint32_t i = 0; i < s_; ++i) v = v * a % p_;
      for (std::uint32_t i = s_; i-- > 0;) {
        std::uint64_t ai = 1;
        for (std::uint32_t k = 0; k < i; ++k) ai = ai * a % p_;
        v = (v + static_cast<std::uint64_t>(digits[i]) * ai) % p_;
      }
      if (v == 0) has_root = true;
    }
    if (!has_root) {
      for (std::uint32_t i = 0; i < s_; ++i) mod_[i] = digits[i];
      mod_[s_] = 1;
      return;
    }
  }
  throw std::logic_error("no irreducible modulus found");
}

std::uint32_t ResidueField::add(std::uint32_t a, std::uint32_t b) const {
  if (s_ == 1) return (a + b) % p_;
  std::uint32_t da[4], db[4], dc[4] = {0, 0, 0, 0};
  unpack(a, da);
  unpack(b, db);
  for (std::uint32_t i = 0; i < s_; ++i) dc[i] = (da[i] + db[i]) % p_;
  return pack(dc);
}

std::uint32_t ResidueField::neg(std::uint32_t a) const {
  if (s_ == 1) return (p_ - a) % p_;
  std::uint32_t da[4], dc[4] = {0, 0, 0, 0};
  unpack(a, da);
  for (std::uint32_t i = 0; i < s_; ++i) dc[i] = (p_ - da[i]) % p_;
  return pack(dc);
}

std::uint32_t ResidueField::sub(std::uint32_t a, std::uint32_t b) const {
  return add(a, neg(b));
}

std::uint32_t ResidueField::mul(std::uint32_t a, std::uint32_t b) const {
  if (s_ == 1)
    return static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(a) * b % p_);
  std::uint32_t da[4], db[4];
  unpack(a, da);
  unpack(b, db);
  std::uint64_t c[6] = {0, 0, 0, 0, 0, 0};
  for (std::uint32_t i = 0; i < s_; ++i)
    for (std::uint32_t j = 0; j < s_; ++j)
      c[i + j] = (c[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_;
  // reduce with x^s = -(c0 + ... + c_{s-1} x^{s-1})
  for (std::uint32_t k = 2 * s_ - 2; k >= s_; --k) {
    std::uint64_t top = c[k];
    if (top != 0) {
      for (std::uint32_t i = 0; i < s_; ++i)
        c[k - s_ + i] =
            (c[k - s_ + i] + top * (p_ - mod_[i])) % p_;
      c[k] = 0;
    }
    if (k == s_) break;
  }
  std::uint32_t dc[4];
  for (std::uint32_t i = 0; i < s_; ++i) dc[i] = static_cast<std::uint32_t>(c[i]);
  return pack(dc);
}

std::uint32_t ResidueField::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t r = 1;
  std::uint32_t base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

std::uint32_t ResidueField::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero in residue field");
  return pow(a, q_ - 2);
}

std::uint32_t ResidueField::from_int(std::int64_t v) const {
  std::int64_t m = v % static_cast<std::int64_t>(p_);
  if (m < 0) m += p_;
  return static_cast<std::uint32_t>(m);
}

std::string ResidueField::element_name(std::uint32_t a) const {
  if (s_ == 1 || a < p_) return std::to_string(a);
  std::uint32_t d[4];
  unpack(a, d);
  std::string out;
  for (std::uint32_t i = s_; i-- > 0;) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(d[i]);
    } else {
      if (d[i] != 1) out += std::to_string(d[i]) + "*";
      out += i == 1 ? "g" : "g^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace hdim
