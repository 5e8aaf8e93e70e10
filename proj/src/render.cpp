#include "hdim/render.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hdim {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json rational_json(const Rational& r) {
  return ordered_json{
      {"num", r.num()}, {"den", r.den()}, {"decimal", r.to_decimal()}};
}

ordered_json optional_rational_json(const std::optional<Rational>& r) {
  if (!r) return nullptr;
  return rational_json(*r);
}

}  // namespace

std::string dimension_report_csv(const DimensionReport& r) {
  std::ostringstream out;
  out << "n,log_index_H,log_index_G,c_num,c_den,c_decimal\n";
  for (const auto& row : r.rows) {
    out << row.n << "," << row.log_index_subgroup << ","
        << row.log_index_ambient << "," << row.density.num() << ","
        << row.density.den() << "," << row.density.to_decimal() << "\n";
  }
  return out.str();
}

std::string dimension_report_json(const DimensionReport& r) {
  ordered_json j;
  j["group"] = r.group_id;
  j["subgroup"] = r.subgroup_id;
  j["level"] = r.level;
  j["dim"] = r.dim;
  j["residue_log_p"] = r.residue_log_p;
  j["ambient"] = r.ambient_note;
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows) {
    ordered_json jr;
    jr["n"] = row.n;
    jr["log_index_subgroup"] = row.log_index_subgroup;
    jr["log_index_ambient"] = row.log_index_ambient;
    jr["density"] = rational_json(row.density);
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);
  j["budget_truncated"] = r.budget_truncated;
  j["empirical_liminf"] = optional_rational_json(r.empirical_liminf);
  j["empirical_limsup"] = optional_rational_json(r.empirical_limsup);
  j["exact_value"] = optional_rational_json(r.exact_value);
  j["exact_provenance"] =
      r.exact_value ? ordered_json(r.exact_provenance) : nullptr;
  j["predicted"] = optional_rational_json(r.predicted);
  j["formula_pass"] =
      r.formula_pass ? ordered_json(*r.formula_pass) : nullptr;
  return j.dump(2) + "\n";
}

std::string invariance_report_csv(const InvarianceReport& r) {
  std::ostringstream out;
  out << "n,base_num,base_den,base_decimal,transformed_num,transformed_den,"
         "transformed_decimal\n";
  for (const auto& row : r.rows) {
    out << row.n << "," << row.base_density.num() << ","
        << row.base_density.den() << "," << row.base_density.to_decimal()
        << "," << row.transformed_density.num() << ","
        << row.transformed_density.den() << ","
        << row.transformed_density.to_decimal() << "\n";
  }
  return out.str();
}

std::string invariance_report_json(const InvarianceReport& r) {
  ordered_json j;
  j["transform"] = r.transform_id;
  j["subgroup"] = r.subgroup_id;
  j["level_shift"] = r.level_shift;
  j["sandwich_a"] = r.sandwich_a;
  j["sandwich_b"] = r.sandwich_b;
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows) {
    ordered_json jr;
    jr["n"] = row.n;
    jr["base"] = rational_json(row.base_density);
    jr["transformed"] = rational_json(row.transformed_density);
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);
  j["liminf_base"] = rational_json(r.liminf_base);
  j["liminf_transformed"] = rational_json(r.liminf_transformed);
  j["pass"] = r.pass;
  j["note"] = r.note;
  return j.dump(2) + "\n";
}

std::string oracle_rows_csv(const std::vector<OracleRow>& rows) {
  std::ostringstream out;
  out << "n,log_index_fast,log_index_oracle,match\n";
  for (const auto& row : rows) {
    out << row.n << "," << row.log_index_fast << "," << row.log_index_oracle
        << "," << (row.match ? "yes" : "NO") << "\n";
  }
  return out.str();
}

std::string oracle_rows_json(const std::vector<OracleRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json jr;
    jr["n"] = row.n;
    jr["log_index_fast"] = row.log_index_fast;
    jr["log_index_oracle"] = row.log_index_oracle;
    jr["match"] = row.match;
    arr.push_back(std::move(jr));
  }
  ordered_json j;
  j["rows"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string spectrum_report_csv(const SpectrumReport& r) {
  std::ostringstream out;
  out << "subgroup,value_num,value_den,value_decimal,analytic,exact,"
         "in_corollary_set,provenance\n";
  for (const auto& e : r.entries) {
    out << e.subgroup_id << "," << e.value.num() << "," << e.value.den() << ","
        << e.value.to_decimal() << "," << (e.analytic ? "yes" : "no") << ","
        << (e.exact ? "yes" : "no") << ","
        << (e.in_corollary_set ? "yes" : "no") << ",\"" << e.provenance
        << "\"\n";
  }
  return out.str();
}

std::string spectrum_report_json(const SpectrumReport& r) {
  ordered_json j;
  j["dim"] = r.dim;
  ordered_json entries = ordered_json::array();
  for (const auto& e : r.entries) {
    ordered_json je;
    je["subgroup"] = e.subgroup_id;
    je["value"] = rational_json(e.value);
    je["analytic"] = e.analytic;
    je["exact"] = e.exact;
    je["in_corollary_set"] = e.in_corollary_set;
    je["provenance"] = e.provenance;
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  ordered_json spectrum = ordered_json::array();
  for (const auto& v : r.spectrum) spectrum.push_back(rational_json(v));
  j["spectrum"] = std::move(spectrum);
  j["corollary_pass"] = r.corollary_pass;
  return j.dump(2) + "\n";
}

void atomic_write(const std::filesystem::path& path, const std::string& data) {
  std::filesystem::path dir = path.parent_path();
  if (!dir.empty()) std::filesystem::create_directories(dir);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << data;
  }
  std::filesystem::rename(tmp, path);
}

std::string dimension_report_table(const DimensionReport& r) {
  std::ostringstream out;
  out << "  n   c_n        decimal\n";
  for (const auto& row : r.rows) {
    std::string frac = row.density.to_string();
    out << "  " << row.n << std::string(row.n < 10 ? 3 : 2, ' ') << frac
        << std::string(frac.size() < 10 ? 11 - frac.size() : 1, ' ')
        << row.density.to_decimal() << "\n";
  }
  if (r.empirical_liminf) {
    if (r.exact_value) {
      out << "liminf = " << r.exact_value->to_string() << " ("
          << r.exact_provenance << "); tail window min = "
          << r.empirical_liminf->to_string() << "\n";
    } else {
      out << "liminf = " << r.empirical_liminf->to_string() << "\n";
    }
  }
  if (r.predicted) {
    out << "predicted = " << r.predicted->to_string() << ", "
        << (r.formula_pass && *r.formula_pass ? "PASS" : "FAIL")
        << "\n";
  }
  if (r.budget_truncated) out << "rows truncated by budget\n";
  return out.str();
}

}  // namespace hdim
