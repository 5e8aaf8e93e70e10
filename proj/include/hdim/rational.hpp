#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hdim {

// Exact rational on 64-bit storage, always reduced, denominator positive.
// Intermediates run through 128-bit integers; narrowing overflow throws
// instead of wrapping. All densities and tolerances in the engine are
// carried as Rationals; decimals exist only in rendered output.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : num_(value) {}
  Rational(std::int64_t num, std::int64_t den) { *this = make(num, den); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num_) * b.den_ +
                    static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + (-b);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num_) * b.num_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return make(static_cast<__int128>(a.num_) * b.den_,
                static_cast<__int128>(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <
           static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  // "2/3", or just "2" when the denominator is 1.
  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Decimal expansion with `digits` significant digits, round half to even,
  // trailing zeros trimmed: 1/3 -> "0.333333", 1/2 -> "0.5", 2 -> "2".
  std::string to_decimal(int digits = 6) const {
    if (digits < 1 || digits > 18)
      throw std::invalid_argument("significant digits out of range");
    if (num_ == 0) return "0";
    using u128 = unsigned __int128;
    u128 a = num_ < 0 ? static_cast<u128>(-static_cast<__int128>(num_))
                      : static_cast<u128>(num_);
    u128 b = static_cast<u128>(den_);
    int exp10 = 0;
    if (a >= b) {
      while (a >= b * 10) {
        b *= 10;
        ++exp10;
      }
    } else {
      while (a < b) {
        a *= 10;
        --exp10;
        if (exp10 < -64) throw std::overflow_error("decimal rendering range");
      }
    }
    for (int i = 1; i < digits; ++i) a *= 10;
    u128 q = a / b;
    u128 r = a % b;
    if (2 * r > b || (2 * r == b && (q & 1))) ++q;
    u128 limit = 1;
    for (int i = 0; i < digits; ++i) limit *= 10;
    if (q == limit) {
      q /= 10;
      ++exp10;
    }
    std::string ds;
    for (int i = 0; i < digits; ++i) {
      ds.insert(ds.begin(), static_cast<char>('0' + static_cast<int>(q % 10)));
      q /= 10;
    }
    std::string out;
    if (exp10 >= 0) {
      if (exp10 + 1 >= digits) {
        out = ds + std::string(static_cast<size_t>(exp10 + 1 - digits), '0');
      } else {
        out = ds.substr(0, static_cast<size_t>(exp10 + 1)) + "." +
              ds.substr(static_cast<size_t>(exp10 + 1));
      }
    } else {
      out = "0." + std::string(static_cast<size_t>(-exp10 - 1), '0') + ds;
    }
    if (out.find('.') != std::string::npos) {
      while (out.back() == '0') out.pop_back();
      if (out.back() == '.') out.pop_back();
    }
    return num_ < 0 ? "-" + out : out;
  }

 private:
  static Rational make(__int128 num, __int128 den) {
    if (den == 0) throw std::domain_error("zero denominator");
    if (den < 0) {
      den = -den;
      num = -num;
    }
    __int128 a = num < 0 ? -num : num;
    __int128 g = gcd128(a, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr __int128 kMax = INT64_MAX;
    if (num > kMax || num < -kMax || den > kMax)
      throw std::overflow_error("rational exceeds 64-bit storage");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace hdim
