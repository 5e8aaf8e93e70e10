#include "hdim/ring.hpp"

#include <algorithm>
#include <stdexcept>

#include "hdim/errors.hpp"

namespace hdim {

namespace {

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > INT64_MAX) throw std::overflow_error("binomial overflow");
  }
  return static_cast<std::int64_t>(r);
}

void collect_monomials(int vars, int degree, int next_var, Monomial prefix,
                       int used, std::vector<Monomial>* out) {
  if (next_var == vars - 1) {
    std::uint32_t rest = static_cast<std::uint32_t>(degree - used);
    out->push_back(rest == 0 ? prefix
                             : prefix.times(Monomial::variable(next_var, rest)));
    return;
  }
  for (int e = 0; e <= degree - used; ++e) {
    Monomial m = e == 0 ? prefix
                        : prefix.times(Monomial::variable(
                              next_var, static_cast<std::uint32_t>(e)));
    collect_monomials(vars, degree, next_var + 1, m, used + e, out);
  }
}

}  // namespace

Ring Ring::padic(std::uint32_t p) {
  Ring r;
  r.kind_ = RingKind::PAdic;
  r.field_ = ResidueField(p, 1);
  r.num_vars_ = 0;
  return r;
}

Ring Ring::power_series(std::uint32_t p, std::uint32_t s, int num_vars) {
  if (num_vars < 1 || num_vars > 8)
    throw std::invalid_argument("power series rings support 1..8 variables");
  Ring r;
  r.kind_ = RingKind::PowerSeries;
  r.field_ = ResidueField(p, s);
  r.num_vars_ = num_vars;
  return r;
}

std::int64_t Ring::hilbert(int n) const {
  if (n < 0) throw std::invalid_argument("hilbert: n must be nonnegative");
  if (is_padic()) return 1;
  return binomial(n + num_vars_ - 1, num_vars_ - 1);
}

std::int64_t Ring::filtration_exponent(int level, int steps) const {
  if (level < 1) throw std::invalid_argument("filtration level must be >= 1");
  if (steps < 0) throw std::invalid_argument("filtration steps must be >= 0");
  std::int64_t sum = 0;
  for (int i = level; i < level + steps; ++i) sum += hilbert(i);
  return sum;
}

std::vector<Monomial> Ring::monomials_in_degree_range(int lo, int hi) const {
  if (is_padic())
    throw ValidationError(
        "monomial enumeration applies only to power series rings");
  if (lo < 0 || lo > hi)
    throw std::invalid_argument("need 0 <= lo <= hi");
  std::vector<Monomial> out;
  for (int d = lo; d < hi; ++d)
    collect_monomials(num_vars_, d, 0, Monomial(), 0, &out);
  std::sort(out.begin(), out.end());
  return out;
}

int Ring::min_level(bool relax) const {
  if (is_padic() && p() == 2 && !relax) return 2;
  return 1;
}

std::string Ring::describe() const {
  if (is_padic()) return "Z_" + std::to_string(p());
  std::string vars;
  for (int i = 0; i < num_vars_; ++i) {
    if (i > 0) vars += ",";
    vars += variable_name(i);
  }
  return "F_" + std::to_string(q()) + "[[" + vars + "]]";
}

std::string Ring::variable_name(int index) const {
  if (num_vars_ == 1) return "t";
  return "t" + std::to_string(index + 1);
}

std::uint64_t padic_modulus(std::uint32_t p, int m) {
  if (m < 1) throw std::invalid_argument("truncation must be >= 1");
  std::uint64_t r = 1;
  for (int i = 0; i < m; ++i) {
    if (r > (UINT64_C(1) << 62) / p)
      throw std::overflow_error("p^M exceeds 62-bit working range");
    r *= p;
  }
  return r;
}

}  // namespace hdim
