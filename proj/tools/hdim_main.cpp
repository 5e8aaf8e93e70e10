// Command-line front end: scenario-driven dimension computations with CSV
// and JSON reports. Exit codes: 0 pass, 1 validation failure, 2 budget
// exhaustion, 3 scenario parse error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hdim/errors.hpp"
#include "hdim/render.hpp"
#include "hdim/scenario.hpp"

namespace {

using namespace hdim;

struct CommonArgs {
  std::string scenario_path;
  std::string out_dir;
  std::optional<int> n_max;
  std::optional<std::int64_t> budget;
  std::string format;
};

void add_common(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--scenario", args->scenario_path, "scenario file")
      ->required();
  cmd->add_option("--out", args->out_dir, "output directory");
  cmd->add_option("--n-max", args->n_max, "override [run] n_max");
  cmd->add_option("--budget", args->budget, "override [run] budget");
  cmd->add_option("--format", args->format, "csv | json | both");
}

Scenario load(const CommonArgs& args) {
  Scenario sc = load_scenario(args.scenario_path);
  if (!args.out_dir.empty()) sc.out_dir = args.out_dir;
  if (args.n_max) sc.n_max = *args.n_max;
  if (args.budget) sc.budget = *args.budget;
  if (!args.format.empty()) {
    if (args.format != "csv" && args.format != "json" && args.format != "both")
      throw ValidationError("--format must be csv, json or both");
    sc.format = args.format;
  }
  if (sc.n_max >= sc.trunc - sc.level)
    throw ValidationError("n_max must stay below trunc - level");
  for (const auto& w : sc.warnings) std::cout << "warning: " << w << "\n";
  return sc;
}

std::filesystem::path out_file(const Scenario& sc, const std::string& tag,
                               const std::string& ext) {
  return std::filesystem::path(sc.out_dir) / (sc.name + "." + tag + "." + ext);
}

void write_formats(const Scenario& sc, const std::string& tag,
                   const std::string& csv, const std::string& json) {
  if (sc.format == "csv" || sc.format == "both")
    atomic_write(out_file(sc, tag, "csv"), csv);
  if (sc.format == "json" || sc.format == "both")
    atomic_write(out_file(sc, tag, "json"), json);
}

const SubgroupSpec& need_subgroup(const Scenario& sc, const std::string& id) {
  const SubgroupSpec* spec = sc.find_subgroup(id);
  if (!spec) throw ValidationError("unknown subgroup '" + id + "'");
  return *spec;
}

int cmd_validate(const CommonArgs& args) {
  Scenario sc = load(args);
  if (!sc.law) throw ValidationError("scenario has no law");
  bool ok = true;
  auto violations = validate_law(*sc.law);
  if (violations.empty()) {
    std::cout << "law " << sc.law->label() << ": ok\n";
  } else {
    ok = false;
    for (const auto& v : violations)
      std::cout << "law violation: component " << v.component << ", monomial "
                << v.monomial << ", rule " << v.rule << " (" << v.detail
                << ")\n";
  }
  if (ok) {
    Presentation p = sc.presentation();
    if (sc.law->label().find("custom") != std::string::npos) {
      auto triple = find_associativity_violation(p, 25, 7);
      if (triple) {
        ok = false;
        std::cout << "associativity fails at x = "
                  << tuple_to_string((*triple)[0]) << ", y = "
                  << tuple_to_string((*triple)[1]) << ", z = "
                  << tuple_to_string((*triple)[2]) << "\n";
      }
    }
    for (const auto& [name, spec] : sc.subgroups) {
      try {
        validate_spec(p, spec);
        SubgroupCheck chk = verify_subgroup(p, spec, 2, sc.budget);
        if (chk.ok) {
          std::cout << "subgroup " << name << ": ok\n";
        } else {
          ok = false;
          std::cout << "subgroup " << name << ": " << chk.what << " at a = "
                    << tuple_to_string(chk.witness_a) << ", b = "
                    << tuple_to_string(chk.witness_b) << "\n";
        }
      } catch (const ValidationError& e) {
        ok = false;
        std::cout << "subgroup " << name << ": " << e.what() << "\n";
      }
    }
  }
  std::cout << (ok ? "validate: ok" : "validate: FAILED") << "\n";
  return ok ? 0 : 1;
}

int cmd_hdim(const CommonArgs& args, const std::string& subgroup_id) {
  Scenario sc = load(args);
  Presentation p = sc.presentation();
  const SubgroupSpec& spec = need_subgroup(sc, subgroup_id);
  DimensionReport report;
  if (const auto* span = std::get_if<ModuleSpanSpec>(&spec)) {
    report = dimension_formula_check(p, *span, subgroup_id, sc.n_max, sc.budget,
                                sc.tail_fraction);
  } else {
    report = density_sequence(p, spec, subgroup_id, sc.n_max, sc.budget);
    if (report.rows.size() >= 4 || !report.budget_truncated)
      liminf_estimate(report, p, spec, sc.tail_fraction);
  }
  write_formats(sc, "hdim." + subgroup_id, dimension_report_csv(report),
                dimension_report_json(report));
  std::cout << dimension_report_table(report);
  if (report.budget_truncated) {
    std::cout << "budget exhausted after n = "
              << (report.rows.empty() ? 0 : report.rows.back().n) << "\n";
    return 2;
  }
  if (report.formula_pass && !*report.formula_pass) return 1;
  return 0;
}

int cmd_oracle(const CommonArgs& args, const std::string& subgroup_id,
               std::optional<int> upto) {
  Scenario sc = load(args);
  if (!sc.oracle_enabled)
    throw BudgetExceeded("oracle disabled: budget below smallest quotient");
  Presentation p = sc.presentation();
  const SubgroupSpec& spec = need_subgroup(sc, subgroup_id);
  int n_hi = upto.value_or(sc.n_max);
  std::vector<OracleRow> rows;
  bool all_match = true;
  bool budget_hit = false;
  for (int n = 1; n <= n_hi; ++n) {
    try {
      std::int64_t fast = image_log_index(p, spec, n, sc.budget);
      std::int64_t oracle = bruteforce_oracle(p, spec, n, sc.budget);
      rows.push_back({n, fast, oracle, fast == oracle});
      all_match = all_match && fast == oracle;
    } catch (const BudgetExceeded&) {
      budget_hit = true;
      break;
    }
  }
  write_formats(sc, "oracle." + subgroup_id, oracle_rows_csv(rows),
                oracle_rows_json(rows));
  std::cout << oracle_rows_csv(rows);
  if (budget_hit) {
    std::cout << "budget exhausted after n = "
              << (rows.empty() ? 0 : rows.back().n) << "\n";
    return 2;
  }
  std::cout << (all_match ? "oracle: all match" : "oracle: MISMATCH") << "\n";
  return all_match ? 0 : 1;
}

int cmd_invariance(const CommonArgs& args, const std::string& transform_id,
                   const std::string& subgroup_id) {
  Scenario sc = load(args);
  Presentation p = sc.presentation();
  const SubgroupSpec& spec = need_subgroup(sc, subgroup_id);
  const ChartTransform* tau = sc.find_transform(transform_id);
  if (!tau) throw ValidationError("unknown transform '" + transform_id + "'");
  InvarianceReport report =
      chart_invariance_check(p, *tau, spec, transform_id, subgroup_id, sc.n_max,
                           sc.budget, sc.tail_fraction);
  write_formats(sc, "invariance." + transform_id + "." + subgroup_id,
                invariance_report_csv(report), invariance_report_json(report));
  std::cout << "a = " << report.sandwich_a << ", b = " << report.sandwich_b
            << "\n";
  std::cout << "liminf(base) = " << report.liminf_base.to_string()
            << ", liminf(transformed) = "
            << report.liminf_transformed.to_string() << "\n";
  std::cout << (report.pass ? "invariance: PASS" : "invariance: FAIL") << "\n";
  return report.pass ? 0 : 1;
}

int cmd_spectrum(const CommonArgs& args) {
  Scenario sc = load(args);
  Presentation p = sc.presentation();
  SpectrumReport report = spectrum_scan(p, sc.subgroups, sc.n_max, sc.budget,
                                        sc.tail_fraction);
  write_formats(sc, "spectrum", spectrum_report_csv(report),
                spectrum_report_json(report));
  std::cout << "spectrum = {";
  for (size_t i = 0; i < report.spectrum.size(); ++i) {
    if (i) std::cout << ", ";
    std::cout << report.spectrum[i].to_string();
  }
  std::cout << "}\n";
  std::cout << (report.corollary_pass ? "corollary check: PASS"
                                      : "corollary check: FAIL")
            << "\n";
  return report.corollary_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Hausdorff dimension computations in standard pro-p "
               "groups"};
  app.require_subcommand(1);

  CommonArgs validate_args, hdim_args, oracle_args, inv_args, spectrum_args;
  std::string subgroup_id, transform_id;
  std::optional<int> oracle_n;

  CLI::App* validate = app.add_subcommand("validate", "check scenario, law "
                                                      "and subgroup closure");
  add_common(validate, &validate_args);

  CLI::App* hdim_cmd =
      app.add_subcommand("hdim", "density sequence and liminf for a subgroup");
  add_common(hdim_cmd, &hdim_args);
  hdim_cmd->add_option("--subgroup", subgroup_id, "subgroup name")->required();

  CLI::App* oracle = app.add_subcommand(
      "oracle", "compare the structured index against the brute-force count");
  add_common(oracle, &oracle_args);
  oracle->add_option("--subgroup", subgroup_id, "subgroup name")->required();
  oracle->add_option("--n", oracle_n, "check steps 1..n");

  CLI::App* invariance = app.add_subcommand(
      "invariance", "compare densities across a chart transform");
  add_common(invariance, &inv_args);
  invariance->add_option("--transform", transform_id, "transform name")
      ->required();
  invariance->add_option("--subgroup", subgroup_id, "subgroup name")
      ->required();

  CLI::App* spectrum =
      app.add_subcommand("spectrum", "dimension spectrum over all subgroups");
  add_common(spectrum, &spectrum_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(validate_args);
    if (hdim_cmd->parsed()) return cmd_hdim(hdim_args, subgroup_id);
    if (oracle->parsed()) return cmd_oracle(oracle_args, subgroup_id, oracle_n);
    if (invariance->parsed())
      return cmd_invariance(inv_args, transform_id, subgroup_id);
    if (spectrum->parsed()) return cmd_spectrum(spectrum_args);
  } catch (const hdim::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const hdim::BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 2;
  } catch (const hdim::ValidationError& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
