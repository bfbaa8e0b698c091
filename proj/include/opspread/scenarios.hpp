#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "opspread/config.hpp"
#include "opspread/holevo.hpp"

namespace opspread {

using FieldValue = std::variant<long long, double, bool, std::string>;

/// One output row. `fields` is the emitted schema (fixed per scenario);
/// `pass` is the row's assertion flag feeding the process exit code.
struct Record {
  std::vector<std::pair<std::string, FieldValue>> fields;
  bool pass = true;
};

struct ScenarioResult {
  std::vector<Record> records;
  bool all_pass = true;
  std::vector<std::string> log_lines;   // diagnostics (e.g. spectra of failed witnesses)
  std::vector<BoundReport> reports;     // per-instance reports for ceiling audits
};

/// Execute the configured scenario deterministically. All randomness derives
/// from cfg.seed via per-instance stream splitting.
ScenarioResult run_scenario(const RunConfig& cfg);

std::string to_csv(const std::vector<Record>& records, const RunConfig& cfg);
std::string to_json(const std::vector<Record>& records, const RunConfig& cfg);

/// Write records to `path` in the requested format.
void emit(const std::vector<Record>& records, const RunConfig& cfg, OutFormat format,
          const std::string& path);

}  // namespace opspread
