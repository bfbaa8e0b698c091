#include "opspread/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "opspread/errors.hpp"
#include "opspread/textio.hpp"

namespace opspread {

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::theorem1: return "theorem1";
    case Scenario::claim1_forward: return "claim1-forward";
    case Scenario::claim1_converse: return "claim1-converse";
    case Scenario::bravyi: return "bravyi";
    case Scenario::lightcone: return "lightcone";
    case Scenario::bounds_sweep: return "bounds-sweep";
  }
  throw DomainError("scenario_name: unknown scenario");
}

Scenario scenario_from_name(const std::string& name) {
  for (Scenario s : {Scenario::theorem1, Scenario::claim1_forward, Scenario::claim1_converse,
                     Scenario::bravyi, Scenario::lightcone, Scenario::bounds_sweep}) {
    if (scenario_name(s) == name) return s;
  }
  throw ParseError("unknown scenario '" + name + "'");
}

namespace {

struct KeyContext {
  std::string key;
  std::string value;
  int line;
};

[[noreturn]] void fail(const KeyContext& kc, const std::string& why) {
  std::ostringstream os;
  os << "config line " << kc.line << ": key '" << kc.key << "': " << why;
  throw ParseError(os.str());
}

long long parse_int(const KeyContext& kc, long long lo, long long hi) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(kc.value.c_str(), &end, 10);
  if (errno != 0 || end == kc.value.c_str() || *end != '\0') fail(kc, "not an integer");
  if (v < lo || v > hi) {
    std::ostringstream os;
    os << "value " << v << " outside [" << lo << ", " << hi << "]";
    fail(kc, os.str());
  }
  return v;
}

double parse_real(const KeyContext& kc, double lo, double hi) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(kc.value.c_str(), &end);
  if (errno != 0 || end == kc.value.c_str() || *end != '\0') fail(kc, "not a number");
  if (!(v >= lo && v <= hi)) {
    std::ostringstream os;
    os << "value " << v << " outside [" << lo << ", " << hi << "]";
    fail(kc, os.str());
  }
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  const double inf = std::numeric_limits<double>::infinity();
  while (std::getline(is, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << "config line " << lineno << ": expected 'key = value'";
      throw ParseError(os.str());
    }
    KeyContext kc{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno};
    if (kc.key.empty()) fail(kc, "empty key");

    if (kc.key == "scenario") {
      try {
        cfg.scenario = scenario_from_name(kc.value);
      } catch (const ParseError&) {
        fail(kc, "unknown scenario '" + kc.value + "'");
      }
    } else if (kc.key == "d_A") {
      cfg.d_a = static_cast<int>(parse_int(kc, 2, 16));
    } else if (kc.key == "d_B") {
      cfg.d_b = static_cast<int>(parse_int(kc, 2, 16));
    } else if (kc.key == "env_dim") {
      cfg.env_dim = static_cast<int>(parse_int(kc, 1, 64));
    } else if (kc.key == "ensemble_size") {
      cfg.ensemble_size = static_cast<int>(parse_int(kc, 1, 16));
    } else if (kc.key == "n_instances") {
      cfg.n_instances = static_cast<int>(parse_int(kc, 1, 100000));
    } else if (kc.key == "n_sites") {
      cfg.n_sites = static_cast<int>(parse_int(kc, 2, 10));
    } else if (kc.key == "J") {
      cfg.coupling = parse_real(kc, -100.0, 100.0);
    } else if (kc.key == "g") {
      cfg.field = parse_real(kc, -100.0, 100.0);
    } else if (kc.key == "boundary") {
      if (kc.value == "open") {
        cfg.boundary = SpinChainModel::Boundary::open;
      } else if (kc.value == "periodic") {
        cfg.boundary = SpinChainModel::Boundary::periodic;
      } else {
        fail(kc, "expected open|periodic");
      }
    } else if (kc.key == "obs_a" || kc.key == "obs_b") {
      if (kc.value != "X" && kc.value != "Y" && kc.value != "Z") fail(kc, "expected X|Y|Z");
      (kc.key == "obs_a" ? cfg.obs_a : cfg.obs_b) = kc.value;
    } else if (kc.key == "t_min") {
      cfg.t_min = parse_real(kc, 0.0, 1000.0);
    } else if (kc.key == "t_max") {
      cfg.t_max = parse_real(kc, 0.0, 1000.0);
    } else if (kc.key == "n_times") {
      cfg.n_times = static_cast<int>(parse_int(kc, 1, 10000));
    } else if (kc.key == "restarts") {
      cfg.opt.restarts = static_cast<int>(parse_int(kc, 1, 1000));
    } else if (kc.key == "max_iters") {
      cfg.opt.max_iters = static_cast<int>(parse_int(kc, 1, 100000));
    } else if (kc.key == "init_step") {
      cfg.opt.init_step = parse_real(kc, 1e-12, 100.0);
    } else if (kc.key == "shrink") {
      cfg.opt.shrink = parse_real(kc, 1e-6, 0.999999);
    } else if (kc.key == "opt_tol") {
      cfg.opt.tol = parse_real(kc, 1e-15, 1.0);
    } else if (kc.key == "fixture") {
      if (kc.value != "none" && kc.value != "orthogonal-pair") {
        fail(kc, "expected none|orthogonal-pair");
      }
      cfg.fixture = kc.value;
    } else if (kc.key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(
          parse_int(kc, 0, std::numeric_limits<long long>::max()));
    } else if (kc.key == "sandwich_slack") {
      // negative values tighten the assertions; handy for self-tests
      cfg.sandwich_slack = parse_real(kc, -inf, 1.0);
    } else if (kc.key == "product_tol") {
      cfg.product_tol = parse_real(kc, 1e-15, 0.5);
    } else if (kc.key == "witness_threshold") {
      cfg.witness_threshold = parse_real(kc, 0.0, 1.0);
    } else if (kc.key == "out") {
      cfg.out = kc.value;
    } else if (kc.key == "format") {
      if (kc.value == "csv") {
        cfg.format = OutFormat::csv;
      } else if (kc.value == "json") {
        cfg.format = OutFormat::json;
      } else {
        fail(kc, "expected csv|json");
      }
    } else {
      std::ostringstream os;
      os << "config line " << lineno << ": unknown key '" << kc.key << "'";
      throw ParseError(os.str());
    }
  }
  if (cfg.t_max < cfg.t_min) {
    throw ParseError("config: key 't_max': must be >= t_min");
  }
  return cfg;
}

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("scenario", scenario_name(cfg.scenario));
  kv.emplace_back("d_A", format_int(cfg.d_a));
  kv.emplace_back("d_B", format_int(cfg.d_b));
  kv.emplace_back("env_dim", format_int(cfg.env_dim));
  kv.emplace_back("ensemble_size", format_int(cfg.ensemble_size));
  kv.emplace_back("n_instances", format_int(cfg.n_instances));
  kv.emplace_back("n_sites", format_int(cfg.n_sites));
  kv.emplace_back("J", format_double(cfg.coupling));
  kv.emplace_back("g", format_double(cfg.field));
  kv.emplace_back("boundary",
                  cfg.boundary == SpinChainModel::Boundary::open ? "open" : "periodic");
  kv.emplace_back("obs_a", cfg.obs_a);
  kv.emplace_back("obs_b", cfg.obs_b);
  kv.emplace_back("t_min", format_double(cfg.t_min));
  kv.emplace_back("t_max", format_double(cfg.t_max));
  kv.emplace_back("n_times", format_int(cfg.n_times));
  kv.emplace_back("restarts", format_int(cfg.opt.restarts));
  kv.emplace_back("max_iters", format_int(cfg.opt.max_iters));
  kv.emplace_back("init_step", format_double(cfg.opt.init_step));
  kv.emplace_back("shrink", format_double(cfg.opt.shrink));
  kv.emplace_back("opt_tol", format_double(cfg.opt.tol));
  kv.emplace_back("fixture", cfg.fixture);
  kv.emplace_back("seed", format_int(static_cast<long long>(cfg.seed)));
  kv.emplace_back("sandwich_slack", format_double(cfg.sandwich_slack));
  kv.emplace_back("product_tol", format_double(cfg.product_tol));
  kv.emplace_back("witness_threshold", format_double(cfg.witness_threshold));
  kv.emplace_back("out", cfg.out);
  kv.emplace_back("format", cfg.format == OutFormat::csv ? "csv" : "json");
  return kv;
}

}  // namespace opspread
