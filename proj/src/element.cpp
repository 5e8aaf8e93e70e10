#include "hdim/element.hpp"

#include <stdexcept>

#include "hdim/errors.hpp"

namespace hdim {

namespace {

constexpr int kMaxSeriesTrunc = 16;  // monomial exponents are 4-bit

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  // extended Euclid; a must be a unit mod m
  __int128 old_r = a, r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    __int128 quot = old_r / r;
    __int128 tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw std::domain_error("residue is not a unit");
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint64_t>(inv);
}

}  // namespace

Element::Element(const Ring& ring, int trunc) : ring_(ring), trunc_(trunc) {
  if (trunc < 1) throw std::invalid_argument("truncation must be >= 1");
  if (!ring.is_padic() && trunc > kMaxSeriesTrunc)
    throw std::invalid_argument("series truncation limited to 16");
  if (ring.is_padic()) padic_modulus(ring.p(), trunc);  // range check
}

Element Element::from_int(const Ring& ring, int trunc, std::int64_t v) {
  Element e(ring, trunc);
  if (ring.is_padic()) {
    std::uint64_t m = padic_modulus(ring.p(), trunc);
    std::int64_t r = v % static_cast<std::int64_t>(m);
    if (r < 0) r += static_cast<std::int64_t>(m);
    e.residue_ = static_cast<std::uint64_t>(r);
  } else {
    e.insert_term(Monomial(), ring.field().from_int(v));
  }
  return e;
}

Element Element::monomial(const Ring& ring, int trunc, const Monomial& m,
                          std::uint32_t coeff) {
  if (ring.is_padic())
    throw ValidationError("monomials exist only in power series rings");
  Element e(ring, trunc);
  if (m.degree() < static_cast<std::uint32_t>(trunc))
    e.insert_term(m, coeff % ring.q() == 0 ? 0 : coeff);
  return e;
}

void Element::insert_term(const Monomial& m, std::uint32_t c) {
  if (c == 0) return;
  if (m.degree() >= static_cast<std::uint32_t>(trunc_)) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    std::uint32_t sum = ring_.field().add(it->second, c);
    if (sum == 0)
      terms_.erase(it);
    else
      it->second = sum;
  }
}

bool Element::is_zero() const {
  return ring_.is_padic() ? residue_ == 0 : terms_.empty();
}

int Element::valuation() const {
  if (is_zero()) return trunc_;
  if (ring_.is_padic()) {
    int v = 0;
    std::uint64_t r = residue_;
    while (r % ring_.p() == 0) {
      r /= ring_.p();
      ++v;
    }
    return v;
  }
  return static_cast<int>(terms_.begin()->first.degree());
}

void Element::check_compatible(const Element& o) const {
  if (ring_ != o.ring_) throw ValidationError("ring mismatch");
  if (trunc_ != o.trunc_) throw ValidationError("truncation mismatch");
}

Element Element::operator+(const Element& o) const {
  check_compatible(o);
  Element r(ring_, trunc_);
  if (ring_.is_padic()) {
    std::uint64_t m = padic_modulus(ring_.p(), trunc_);
    r.residue_ = (residue_ + o.residue_) % m;
  } else {
    r.terms_ = terms_;
    for (const auto& [mon, c] : o.terms_) {
      auto [it, fresh] = r.terms_.emplace(mon, c);
      if (!fresh) {
        std::uint32_t sum = ring_.field().add(it->second, c);
        if (sum == 0)
          r.terms_.erase(it);
        else
          it->second = sum;
      }
    }
  }
  return r;
}

Element Element::operator-() const {
  Element r(ring_, trunc_);
  if (ring_.is_padic()) {
    std::uint64_t m = padic_modulus(ring_.p(), trunc_);
    r.residue_ = (m - residue_) % m;
  } else {
    for (const auto& [mon, c] : terms_)
      r.terms_.emplace(mon, ring_.field().neg(c));
  }
  return r;
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator*(const Element& o) const {
  check_compatible(o);
  Element r(ring_, trunc_);
  if (ring_.is_padic()) {
    std::uint64_t m = padic_modulus(ring_.p(), trunc_);
    r.residue_ = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(residue_) * o.residue_ % m);
  } else {
    for (const auto& [ma, ca] : terms_) {
      for (const auto& [mb, cb] : o.terms_) {
        if (ma.degree() + mb.degree() >= static_cast<std::uint32_t>(trunc_))
          continue;
        r.insert_term(ma.times(mb), ring_.field().mul(ca, cb));
      }
    }
  }
  return r;
}

bool Element::operator==(const Element& o) const {
  return ring_ == o.ring_ && trunc_ == o.trunc_ && residue_ == o.residue_ &&
         terms_ == o.terms_;
}

Element Element::scaled(std::uint32_t c) const {
  if (ring_.is_padic())
    throw ValidationError("scalar scaling applies to power series elements");
  Element r(ring_, trunc_);
  c = c % ring_.q();
  if (c == 0) return r;
  for (const auto& [mon, coeff] : terms_)
    r.terms_.emplace(mon, ring_.field().mul(coeff, c));
  return r;
}

Element Element::times_monomial(const Monomial& m) const {
  if (ring_.is_padic())
    throw ValidationError("monomials exist only in power series rings");
  Element r(ring_, trunc_);
  for (const auto& [mon, c] : terms_) {
    if (mon.degree() + m.degree() >= static_cast<std::uint32_t>(trunc_))
      continue;
    r.terms_.emplace(mon.times(m), c);
  }
  return r;
}

Element Element::truncated(int m) const {
  if (m > trunc_) throw std::invalid_argument("cannot raise precision");
  Element r(ring_, m);
  if (ring_.is_padic()) {
    r.residue_ = residue_ % padic_modulus(ring_.p(), m);
  } else {
    for (const auto& [mon, c] : terms_)
      if (mon.degree() < static_cast<std::uint32_t>(m)) r.terms_.emplace(mon, c);
  }
  return r;
}

Element Element::unit_inverse() const {
  if (valuation() != 0)
    throw ValidationError("only valuation-0 elements are invertible");
  if (ring_.is_padic()) {
    Element r(ring_, trunc_);
    r.residue_ = mod_inverse(residue_, padic_modulus(ring_.p(), trunc_));
    return r;
  }
  // u = c0 (1 + w), v(w) >= 1: u^{-1} = c0^{-1} * sum (-w)^k
  std::uint32_t c0 = coefficient(Monomial());
  std::uint32_t c0inv = ring_.field().inv(c0);
  Element w = scaled(c0inv) - from_int(ring_, trunc_, 1);
  Element acc = from_int(ring_, trunc_, 1);
  Element power = from_int(ring_, trunc_, 1);
  for (int k = 1; k < trunc_; ++k) {
    power = power * (-w);
    if (power.is_zero()) break;
    acc = acc + power;
  }
  return acc.scaled(c0inv);
}

Element Element::pow(std::uint32_t k) const {
  Element r = from_int(ring_, trunc_, 1);
  for (std::uint32_t i = 0; i < k; ++i) r = r * (*this);
  return r;
}

std::uint32_t Element::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void Element::append_key(std::string* out) const {
  if (ring_.is_padic()) {
    for (int i = 0; i < 8; ++i)
      out->push_back(static_cast<char>((residue_ >> (8 * i)) & 0xFF));
    return;
  }
  for (const auto& [mon, c] : terms_) {
    std::uint64_t pk = mon.packed();
    for (int i = 0; i < 8; ++i)
      out->push_back(static_cast<char>((pk >> (8 * i)) & 0xFF));
    for (int i = 0; i < 4; ++i)
      out->push_back(static_cast<char>((c >> (8 * i)) & 0xFF));
  }
  out->push_back('\xFF');  // terminator between coordinates
}

std::string Element::to_string() const {
  if (is_zero()) return "0";
  if (ring_.is_padic()) return std::to_string(residue_);
  std::string out;
  for (const auto& [mon, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string cs = ring_.field().element_name(c);
    if (mon.is_constant()) {
      out += cs;
    } else {
      std::string ms =
          mon.to_string([&](int i) { return ring_.variable_name(i); });
      if (cs == "1")
        out += ms;
      else if (cs.find('+') != std::string::npos)
        out += "(" + cs + ")*" + ms;
      else
        out += cs + "*" + ms;
    }
  }
  return out;
}

}  // namespace hdim
