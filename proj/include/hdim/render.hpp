#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hdim/report.hpp"

namespace hdim {

struct OracleRow {
  int n = 0;
  std::int64_t log_index_fast = 0;
  std::int64_t log_index_oracle = 0;
  bool match = false;
};

std::string dimension_report_csv(const DimensionReport& r);
std::string dimension_report_json(const DimensionReport& r);
std::string invariance_report_csv(const InvarianceReport& r);
std::string invariance_report_json(const InvarianceReport& r);
std::string oracle_rows_csv(const std::vector<OracleRow>& rows);
std::string oracle_rows_json(const std::vector<OracleRow>& rows);
std::string spectrum_report_csv(const SpectrumReport& r);
std::string spectrum_report_json(const SpectrumReport& r);

// render into a sibling temp file, then rename into place
void atomic_write(const std::filesystem::path& path, const std::string& data);

// fixed-width console table for a dimension report
std::string dimension_report_table(const DimensionReport& r);

}  // namespace hdim
