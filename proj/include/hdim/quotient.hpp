#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hdim/law.hpp"

namespace hdim {

// The finite quotient S / S_n: classes of (m^N)^(d) mod (m^{N+n})^(d),
// represented by coordinate tuples truncated at N + n, with the law
// reduced to that precision. Representative independence is the congruence
// property of the law; tests check it exhaustively on small quotients.
class QuotientContext {
 public:
  QuotientContext(const Presentation& p, int steps);

  const Presentation& base() const { return base_; }
  int steps() const { return steps_; }
  int cut() const { return cut_; }  // coordinate truncation N + n

  Tuple reduce(const Tuple& x) const { return truncate_tuple(x, cut_); }
  Tuple identity() const;
  Tuple multiply(const Tuple& a, const Tuple& b) const;
  Tuple inverse(const Tuple& a) const;
  std::string key(const Tuple& a) const { return tuple_key(a); }

  // All classes, deterministic order; throws BudgetExceeded past `budget`.
  std::vector<Tuple> enumerate(std::int64_t budget) const;

 private:
  Presentation base_;       // law truncated to cut
  int steps_;
  int cut_;
};

// |S : S_n| = q^{d f(n)}, or nullopt when it exceeds the 62-bit range.
std::optional<std::int64_t> quotient_order(const Presentation& p, int steps);

struct QuotientGroup {
  QuotientContext ctx;
  std::vector<Tuple> elements;
};

// Materialized carrier; requires q^{d f(n)} <= budget.
QuotientGroup quotient_group(const Presentation& p, int steps,
                             std::int64_t budget);

}  // namespace hdim
