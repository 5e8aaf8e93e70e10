#pragma once

#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdim/report.hpp"

namespace hdim {

// A parsed scenario file: ring, presentation data, named subgroups and
// transforms, run parameters. See docs/scenario-format.md for the grammar.
struct Scenario {
  std::string name;
  Ring ring = Ring::power_series(2, 1, 1);
  int dim = 1;
  int level = 1;
  int trunc = 8;
  bool relax_level = false;
  std::optional<GroupLaw> law;
  std::vector<std::pair<std::string, SubgroupSpec>> subgroups;
  std::vector<std::pair<std::string, ChartTransform>> transforms;
  int n_max = 6;
  std::int64_t budget = 200000;
  std::string out_dir = "out";
  std::string format = "both";  // csv | json | both
  double tail_fraction = 0.5;
  bool oracle_enabled = true;
  std::vector<std::string> warnings;

  Presentation presentation() const;
  const SubgroupSpec* find_subgroup(const std::string& id) const;
  const ChartTransform* find_transform(const std::string& id) const;
};

Scenario parse_scenario(std::istream& in, const std::string& name);
Scenario load_scenario(const std::string& path);

// Expression parsing, shared with scenario sections. Variables: t, t1..tr
// (ring variables), p (the prime as a constant), g (the residue field
// generator, s >= 2), X1..X<nx>, Y1..Y<ny> (bare X/Y when nx = ny = 1).
Series parse_poly(const Ring& ring, int trunc, int nx, int ny,
                  const std::string& text);
Element parse_element(const Ring& ring, int trunc, const std::string& text);
Tuple parse_tuple(const Ring& ring, int trunc, int dim,
                  const std::string& text);

}  // namespace hdim
