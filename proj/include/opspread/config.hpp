#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "opspread/search.hpp"
#include "opspread/spreading.hpp"

namespace opspread {

enum class Scenario {
  theorem1,
  claim1_forward,
  claim1_converse,
  bravyi,
  lightcone,
  bounds_sweep,
};

enum class OutFormat { csv, json };

std::string scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name);

/// One experiment run. Every field has a documented default; parse_config
/// applies them and rejects unknown keys and out-of-range values.
struct RunConfig {
  Scenario scenario = Scenario::theorem1;
  int d_a = 2;
  int d_b = 2;
  int env_dim = 4;
  int ensemble_size = 2;
  int n_instances = 100;

  // spin chain (lightcone scenario)
  int n_sites = 8;
  double coupling = 1.0;  // J
  double field = 1.0;     // g
  SpinChainModel::Boundary boundary = SpinChainModel::Boundary::open;
  std::string obs_a = "Z";
  std::string obs_b = "Z";

  // time grid
  double t_min = 0.0;
  double t_max = 2.0;
  int n_times = 21;

  OptimizerConfig opt;  // opt.seed is derived from `seed` at run time

  std::string fixture = "none";  // theorem1: none | orthogonal-pair

  std::uint64_t seed = 0;
  double sandwich_slack = 1e-9;
  double product_tol = 1e-8;
  double witness_threshold = 1e-6;

  std::string out;  // empty: no file written
  OutFormat format = OutFormat::csv;
};

/// Parse the flat `key = value` document ('#' starts a comment). Errors are
/// ParseError with the offending line or key named.
RunConfig parse_config(const std::string& text);

/// The complete effective config as ordered key/value text pairs, defaults
/// included; echoed into every emitted report.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& cfg);

}  // namespace opspread
