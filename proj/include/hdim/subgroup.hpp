#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "hdim/quotient.hpp"
#include "hdim/rational.hpp"

namespace hdim {

// Topologically generated closed subgroup: the image in each finite
// quotient is the subgroup generated by the generator images. In residue
// characteristic p the closure of finitely many elements of an additive
// coordinate is just their F_p-span; module subgroups want ModuleSpan.
struct GeneratedSpec {
  std::vector<Tuple> gens;
};

// R-span of coordinate vectors (all coordinate valuations >= level).
// An empty generator list is the trivial subgroup.
struct ModuleSpanSpec {
  std::vector<Tuple> gens;
};

// Closed additive subgroup spanned by {t^a : a in A} inside one coordinate,
// A = {level + i : bit(i)} with bit(i) read from preperiod then period,
// extended periodically. Power series rings with one variable only.
struct ValuationSetSpec {
  std::vector<std::uint8_t> preperiod;
  std::vector<std::uint8_t> period;
  int coordinate = 1;  // 1-based
};

using SubgroupSpec =
    std::variant<GeneratedSpec, ModuleSpanSpec, ValuationSetSpec>;

std::string spec_kind_name(const SubgroupSpec& spec);

// Structural checks against a presentation (arity, valuations, ring kind).
void validate_spec(const Presentation& p, const SubgroupSpec& spec);

bool vset_bit(const ValuationSetSpec& spec, int offset);
// number of set bits with offset in [from, to)
std::int64_t vset_count(const ValuationSetSpec& spec, int from, int to);
// (#set bits in period) / (period length): the lower density of A - level
Rational vset_period_density(const ValuationSetSpec& spec);

// log_p |H : H cap S_n| = log_p |image of H in S/S_n|. Structured paths:
// BFS closure for Generated, residue-field rank (or p-adic diagonalization)
// for ModuleSpan, exponent counting for ValuationSet.
std::int64_t image_log_index(const Presentation& p, const SubgroupSpec& spec,
                             int steps, std::int64_t budget);

// Independent check: materializes the image set extensionally inside the
// enumerated quotient and returns log_p of its size.
std::int64_t bruteforce_oracle(const Presentation& p, const SubgroupSpec& spec,
                               int steps, std::int64_t budget);

struct SubgroupCheck {
  bool ok = true;
  Tuple witness_a, witness_b;  // violating pair when !ok
  std::string what;
};

// Extensional closure check of the image set under the quotient operation
// and inversion. Needs |image| elements and |image|^2 products within budget.
SubgroupCheck verify_subgroup(const Presentation& p, const SubgroupSpec& spec,
                              int steps, std::int64_t budget);

// Rank over the fraction field via stabilized truncated minors: the largest
// k with a k x k minor that is nonzero mod m^{M'} certifies rank >= k; the
// values at M' = max_trunc - 1 and max_trunc must agree.
int kspan_rank(const Ring& ring, const std::vector<Tuple>& gens,
               int max_trunc);

// log_p of the image of the span in the level-(N+delta) restriction:
// classes of {w in W : v(w) >= N+delta} mod m^{N+delta+n}.
std::int64_t shifted_module_span_log(const Presentation& p,
                                     const std::vector<Tuple>& gens, int delta,
                                     int steps);

// extensional image carrier, shared by the oracle and verify_subgroup
struct ImageSet {
  QuotientContext ctx;
  std::vector<Tuple> elems;                // insertion order
  std::unordered_set<std::string> keys;
};
ImageSet materialize_image(const Presentation& p, const SubgroupSpec& spec,
                           int steps, std::int64_t budget);

std::int64_t int_log_p(std::int64_t size, std::uint32_t p);

}  // namespace hdim
