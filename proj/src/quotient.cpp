#include "hdim/quotient.hpp"

#include <stdexcept>

#include "hdim/errors.hpp"

namespace hdim {

QuotientContext::QuotientContext(const Presentation& p, int steps)
    : base_(p.law().truncated(p.level() + steps), p.level(), true),
      steps_(steps),
      cut_(p.level() + steps) {
  if (steps < 1) throw std::invalid_argument("quotient needs steps >= 1");
  if (cut_ >= p.trunc() + 1)
    throw ValidationError("quotient step exceeds the working truncation");
}

Tuple QuotientContext::identity() const { return zero_tuple(base_, cut_); }

Tuple QuotientContext::multiply(const Tuple& a, const Tuple& b) const {
  return law_multiply(base_, a, b);
}

Tuple QuotientContext::inverse(const Tuple& a) const {
  return law_inverse(base_, a);
}

std::vector<Tuple> QuotientContext::enumerate(std::int64_t budget) const {
  const Ring& ring = base_.ring();
  int d = base_.dim();
  int level = base_.level();
  std::vector<Tuple> out;
  if (ring.is_padic()) {
    std::uint64_t span = padic_modulus(ring.p(), steps_);
    std::uint64_t shift = padic_modulus(ring.p(), level);
    std::vector<std::uint64_t> digits(static_cast<size_t>(d), 0);
    while (true) {
      Tuple x;
      x.reserve(static_cast<size_t>(d));
      for (int j = 0; j < d; ++j)
        x.push_back(Element::from_int(
            ring, cut_,
            static_cast<std::int64_t>(digits[static_cast<size_t>(j)] * shift)));
      out.push_back(std::move(x));
      if (static_cast<std::int64_t>(out.size()) > budget)
        throw BudgetExceeded("quotient carrier exceeds budget");
      int pos = 0;
      while (pos < d) {
        if (++digits[static_cast<size_t>(pos)] < span) break;
        digits[static_cast<size_t>(pos)] = 0;
        ++pos;
      }
      if (pos == d) break;
    }
    return out;
  }
  auto basis = ring.monomials_in_degree_range(level, cut_);
  size_t slots = basis.size() * static_cast<size_t>(d);
  std::vector<std::uint32_t> digits(slots, 0);
  std::uint32_t q = ring.q();
  while (true) {
    Tuple x;
    x.reserve(static_cast<size_t>(d));
    for (int j = 0; j < d; ++j) {
      Element e(ring, cut_);
      for (size_t b = 0; b < basis.size(); ++b) {
        std::uint32_t c = digits[static_cast<size_t>(j) * basis.size() + b];
        if (c) e = e + Element::monomial(ring, cut_, basis[b], c);
      }
      x.push_back(std::move(e));
    }
    out.push_back(std::move(x));
    if (static_cast<std::int64_t>(out.size()) > budget)
      throw BudgetExceeded("quotient carrier exceeds budget");
    size_t pos = 0;
    while (pos < slots) {
      if (++digits[pos] < q) break;
      digits[pos] = 0;
      ++pos;
    }
    if (pos == slots) break;
    if (slots == 0) break;
  }
  return out;
}

std::optional<std::int64_t> quotient_order(const Presentation& p, int steps) {
  std::int64_t exponent =
      p.dim() * p.ring().filtration_exponent(p.level(), steps);
  unsigned __int128 size = 1;
  for (std::int64_t i = 0; i < exponent; ++i) {
    size *= p.ring().q();
    if (size > (static_cast<unsigned __int128>(1) << 62)) return std::nullopt;
  }
  return static_cast<std::int64_t>(size);
}

QuotientGroup quotient_group(const Presentation& p, int steps,
                             std::int64_t budget) {
  auto order = quotient_order(p, steps);
  if (!order || *order > budget)
    throw BudgetExceeded("quotient of size q^{d f(n)} exceeds budget at n = " +
                         std::to_string(steps));
  QuotientContext ctx(p, steps);
  auto elements = ctx.enumerate(budget);
  if (static_cast<std::int64_t>(elements.size()) != *order)
    throw std::logic_error("carrier size disagrees with q^{d f(n)}");
  return QuotientGroup{std::move(ctx), std::move(elements)};
}

}  // namespace hdim
