#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hdim/rational.hpp"
#include "hdim/subgroup.hpp"
#include "hdim/transform.hpp"

namespace hdim {

struct DimensionRow {
  int n = 0;
  std::int64_t log_index_subgroup = 0;  // log_p |H : H cap S_n|
  std::int64_t log_index_ambient = 0;   // log_p |S : S_n| = d f(n) log_p q
  Rational density;                     // the ratio, exact
};

struct DimensionReport {
  std::string group_id, subgroup_id;
  int level = 0, dim = 0;
  std::int64_t residue_log_p = 1;
  std::string ambient_note;
  std::vector<DimensionRow> rows;
  bool budget_truncated = false;
  std::optional<Rational> empirical_liminf, empirical_limsup;
  std::optional<Rational> exact_value;
  std::string exact_provenance;  // periodic-formula | module-rank | full-group
  std::optional<Rational> predicted;
  std::optional<bool> formula_pass;
};

// Rows 1..n_max of the density sequence c_n. Ambient is S itself: the
// constant |G:S| offset cannot move a liminf, which the report notes.
// Budget exhaustion truncates the rows and sets the flag.
DimensionReport density_sequence(const Presentation& p,
                                 const SubgroupSpec& spec,
                                 const std::string& subgroup_id, int n_max,
                                 std::int64_t budget);

// min/max over the final ceil(tail_fraction * rows) entries; attaches the
// exact limit where the subgroup class admits one (periodic sets, module
// spans under the additive law, full/trivial).
void liminf_estimate(DimensionReport& report, const Presentation& p,
                     const SubgroupSpec& spec, double tail_fraction);

// verify_subgroup at the largest budget-feasible step <= n_max; throws
// ValidationError with the counterexample if the image is not closed.
void ensure_subgroup(const Presentation& p, const SubgroupSpec& spec,
                     int n_max, std::int64_t budget);

// Density report plus predicted = kspan_rank/dim and the pass verdict:
// |empirical_liminf - predicted| <= 1/n_max, and exact == predicted when set.
DimensionReport dimension_formula_check(const Presentation& p,
                                   const ModuleSpanSpec& spec,
                                   const std::string& subgroup_id, int n_max,
                                   std::int64_t budget, double tail_fraction);

struct InvarianceRow {
  int n = 0;
  Rational base_density;
  Rational transformed_density;
};

struct InvarianceReport {
  std::string transform_id, subgroup_id;
  int level_shift = 0;
  int sandwich_a = 0, sandwich_b = 0;
  std::vector<InvarianceRow> rows;
  Rational liminf_base, liminf_transformed;
  bool pass = false;
  std::string note;
};

// Densities of the same subgroup along the base filtration and along the
// transformed presentation's filtration; finds the least verified sandwich
// constants and compares the two empirical liminfs within 2/n_max.
InvarianceReport chart_invariance_check(const Presentation& p,
                                      const ChartTransform& tau,
                                      const SubgroupSpec& spec,
                                      const std::string& transform_id,
                                      const std::string& subgroup_id, int n_max,
                                      std::int64_t budget,
                                      double tail_fraction);

struct SpectrumEntry {
  std::string subgroup_id;
  Rational value;
  bool analytic = false;  // certified by the ModuleSpan encoding
  bool exact = false;
  std::string provenance;  // exact provenance, "empirical", or the flag
  bool in_corollary_set = false;
};

struct SpectrumReport {
  int dim = 0;
  std::vector<SpectrumEntry> entries;
  std::vector<Rational> spectrum;  // sorted distinct analytic values
  bool corollary_pass = true;      // all analytic values in {0, 1/d, ..., 1}
};

SpectrumReport spectrum_scan(
    const Presentation& p,
    const std::vector<std::pair<std::string, SubgroupSpec>>& battery, int n_max,
    std::int64_t budget, double tail_fraction);

}  // namespace hdim
