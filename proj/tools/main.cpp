#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "opspread/config.hpp"
#include "opspread/errors.hpp"
#include "opspread/scenarios.hpp"
#include "opspread/version.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw opspread::ParseError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"opspread: Holevo-information bounds and operator-spreading experiments"};
  app.set_version_flag("--version", opspread::kVersion);

  std::string config_path;
  std::string scenario_override;
  std::string out_override;
  std::string format_override;
  long long seed_override = -1;
  bool quiet = false;

  app.add_option("--config", config_path, "config file (flat key = value, '#' comments)");
  app.add_option("--scenario", scenario_override,
                 "theorem1|claim1-forward|claim1-converse|bravyi|lightcone|bounds-sweep");
  app.add_option("--seed", seed_override, "master seed (overrides config)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", out_override, "output file path");
  app.add_option("--format", format_override, "csv|json");
  app.add_flag("--quiet", quiet, "suppress the stdout summary");

  CLI11_PARSE(app, argc, argv);

  try {
    opspread::RunConfig cfg =
        config_path.empty() ? opspread::RunConfig{} : opspread::parse_config(read_file(config_path));
    if (!scenario_override.empty()) {
      cfg.scenario = opspread::scenario_from_name(scenario_override);
    }
    if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
    if (!out_override.empty()) cfg.out = out_override;
    if (!format_override.empty()) {
      if (format_override == "csv") {
        cfg.format = opspread::OutFormat::csv;
      } else if (format_override == "json") {
        cfg.format = opspread::OutFormat::json;
      } else {
        throw opspread::ParseError("--format: expected csv|json");
      }
    }

    const auto begin = std::chrono::steady_clock::now();
    const opspread::ScenarioResult result = opspread::run_scenario(cfg);
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - begin)
            .count();

    if (!cfg.out.empty()) {
      opspread::emit(result.records, cfg, cfg.format, cfg.out);
    }

    if (!quiet) {
      size_t passed = 0;
      for (const auto& r : result.records) passed += r.pass ? 1 : 0;
      for (const auto& line : result.log_lines) std::cout << "note: " << line << "\n";
      std::cout << opspread::scenario_name(cfg.scenario) << ": " << passed << "/"
                << result.records.size() << " records pass, wall " << wall_ms << " ms"
                << (cfg.out.empty() ? "" : ", wrote " + cfg.out) << "\n";
      std::cout << (result.all_pass ? "PASS" : "FAIL") << "\n";
    }
    return result.all_pass ? 0 : 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
