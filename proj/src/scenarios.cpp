#include "opspread/scenarios.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "opspread/errors.hpp"
#include "opspread/optimize.hpp"
#include "opspread/random.hpp"
#include "opspread/spreading.hpp"
#include "opspread/textio.hpp"
#include "opspread/version.hpp"

namespace opspread {

namespace {

void add(Record& r, const std::string& key, FieldValue v) {
  r.fields.emplace_back(key, std::move(v));
}
void add_int(Record& r, const std::string& key, long long v) { add(r, key, v); }
void add_real(Record& r, const std::string& key, double v) { add(r, key, v); }
void add_bool(Record& r, const std::string& key, bool v) { add(r, key, v); }

// ---- fixtures ---------------------------------------------------------------

Matrix swap_gate() {
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = 1;
  s(1, 2) = 1;
  s(2, 1) = 1;
  s(3, 3) = 1;
  return s;
}

Matrix cnot_gate() {
  Matrix c = Matrix::Zero(4, 4);
  c(0, 0) = 1;
  c(1, 1) = 1;
  c(2, 3) = 1;
  c(3, 2) = 1;
  return c;
}

DensityMatrix basis_state(int dim) {
  Matrix m = Matrix::Zero(dim, dim);
  m(0, 0) = 1.0;
  return validate_state(m);
}

Ensemble identity_x_ensemble() {
  const ProbabilityVector p = ProbabilityVector::validate({0.5, 0.5});
  std::vector<Matrix> us;
  us.push_back(Matrix::Identity(2, 2));
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  us.push_back(std::move(x));
  return Ensemble::validate(p, std::move(us));
}

struct Instance {
  KrausChannel ch;
  DensityMatrix rho0;
  Ensemble e;
  int m;
  int env_dim;
};

// shared generator for theorem1 / bounds-sweep instance streams
Instance random_instance(const RunConfig& cfg, std::uint64_t idx) {
  Rng rng(derive_seed(cfg.seed, idx));
  const int m = 2 + static_cast<int>(rng() % 3);
  const int dim = cfg.d_a * cfg.d_b;
  KrausChannel ch = random_channel(dim, cfg.env_dim, rng());
  DensityMatrix rho0 = random_density_matrix(dim, rng);
  std::vector<Matrix> us;
  us.reserve(static_cast<size_t>(m));
  std::vector<double> probs = random_simplex(m, rng);
  for (int i = 0; i < m; ++i) us.push_back(haar_unitary(cfg.d_a, rng));
  Ensemble e = Ensemble::validate(ProbabilityVector::validate(std::move(probs), 1e-9),
                                  std::move(us));
  return Instance{std::move(ch), std::move(rho0), std::move(e), m, cfg.env_dim};
}

OutputFamily orthogonal_pair_family() {
  const KrausChannel swap = unitary_channel(swap_gate(), std::make_pair(2, 2));
  return output_states(swap, basis_state(4), identity_x_ensemble(), 2, 2);
}

// ---- scenarios --------------------------------------------------------------

ScenarioResult scenario_theorem1(const RunConfig& cfg, bool ceiling_mode) {
  ScenarioResult res;
  for (int k = 0; k < cfg.n_instances; ++k) {
    OutputFamily family = [&]() {
      if (cfg.fixture == "orthogonal-pair") return orthogonal_pair_family();
      const Instance inst = random_instance(cfg, static_cast<std::uint64_t>(k));
      return output_states(inst.ch, inst.rho0, inst.e, cfg.d_a, cfg.d_b);
    }();
    const bool fixture = cfg.fixture == "orthogonal-pair";
    const int m = family.probs.size();
    const int env = fixture ? 1 : cfg.env_dim;
    const BoundReport rep = bound_report(family);

    Record r;
    add_int(r, "instance", k);
    add_int(r, "m", m);
    add_int(r, "d_A", cfg.d_a);
    add_int(r, "d_B", cfg.d_b);
    add_int(r, "env_dim", env);
    add_real(r, "c_chi", rep.c_chi);
    if (!ceiling_mode) {
      add_real(r, "lower", rep.lower);
      add_real(r, "upper", rep.upper);
    }
    add_real(r, "shannon", rep.shannon);
    add_real(r, "tmax", rep.t_max);
    add_real(r, "tmax_bound", rep.tmax_bound);
    const bool pass =
        ceiling_mode
            ? (rep.c_chi <= rep.shannon + cfg.sandwich_slack &&
               rep.c_chi <= rep.tmax_bound + cfg.sandwich_slack)
            : (rep.lower - cfg.sandwich_slack <= rep.c_chi &&
               rep.c_chi <= rep.upper + cfg.sandwich_slack);
    add_bool(r, "pass", pass);
    r.pass = pass;
    res.records.push_back(std::move(r));
    res.reports.push_back(rep);
  }
  return res;
}

ScenarioResult scenario_claim1_forward(const RunConfig& cfg) {
  ScenarioResult res;
  for (int k = 0; k < cfg.n_instances; ++k) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
    const KrausChannel cha = random_channel(cfg.d_a, cfg.env_dim, rng());
    const KrausChannel chb = random_channel(cfg.d_b, cfg.env_dim, rng());
    const KrausChannel ch = product_channel(cha, chb);
    const DensityMatrix rho0 = random_density_matrix(cfg.d_a * cfg.d_b, rng);
    const Ensemble e = random_ensemble(cfg.ensemble_size, cfg.d_a, rng, false);
    const OutputFamily family = output_states(ch, rho0, e, cfg.d_a, cfg.d_b);
    const double chi = holevo_information(family);
    const ProductTest pt = is_product(ch, cfg.product_tol);

    Record r;
    add_int(r, "instance", k);
    add_int(r, "d_A", cfg.d_a);
    add_int(r, "d_B", cfg.d_b);
    add_real(r, "c_chi", chi);
    add_bool(r, "is_product", pt.is_product);
    add_real(r, "sigma1", pt.schmidt_values.size() > 0 ? pt.schmidt_values(0) : 0.0);
    add_real(r, "sigma2", pt.schmidt_values.size() > 1 ? pt.schmidt_values(1) : 0.0);
    const bool pass = chi < 1e-9 && pt.is_product;
    add_bool(r, "pass", pass);
    r.pass = pass;
    res.records.push_back(std::move(r));
    res.reports.push_back(bound_report(family));
  }
  return res;
}

ScenarioResult scenario_claim1_converse(const RunConfig& cfg) {
  if (cfg.d_a != 2 || cfg.d_b != 2) {
    throw DomainError("claim1-converse: fixtures require d_A = d_B = 2");
  }
  ScenarioResult res;
  const ProbabilityVector uniform = ProbabilityVector::validate({0.5, 0.5});
  const double ln2 = std::log(2.0);
  int found_count = 0;
  int random_count = 0;

  auto push_row = [&](long long idx, const std::string& label, bool certified_nonproduct,
                      double value, bool found, const RealVector& sv, bool pass) {
    Record r;
    add_int(r, "instance", idx);
    add(r, "channel", label);
    add_bool(r, "is_product", !certified_nonproduct);
    add_real(r, "best_value", value);
    add_bool(r, "found", found);
    add_real(r, "found_fraction",
             random_count > 0 ? static_cast<double>(found_count) / random_count : 0.0);
    for (int s = 0; s < 4; ++s) {
      add_real(r, "sigma" + std::to_string(s + 1),
               sv.size() > s ? sv(s) : 0.0);
    }
    add_bool(r, "pass", pass);
    r.pass = pass;
    res.records.push_back(std::move(r));
  };

  // named fixtures: the optimizer must reach the log(d_B) ceiling
  const std::pair<std::string, Matrix> fixtures[] = {{"swap", swap_gate()},
                                                     {"cnot", cnot_gate()}};
  long long idx = 0;
  for (const auto& [label, gate] : fixtures) {
    const KrausChannel ch = unitary_channel(gate, std::make_pair(2, 2));
    OptimizerConfig opt = cfg.opt;
    opt.seed = derive_seed(cfg.seed, 0xf1c5ULL + static_cast<std::uint64_t>(idx));
    const OptimizeResult best =
        maximize_holevo(ch, basis_state(4), 2, uniform, 2, 2, opt);
    const ProductTest pt = is_product(ch, cfg.product_tol);
    const bool pass = best.value >= ln2 - 1e-3;
    push_row(idx, label, !pt.is_product, best.value, pass, pt.schmidt_values, pass);
    res.reports.push_back(
        bound_report(output_states(ch, basis_state(4), best.best, 2, 2)));
    ++idx;
  }

  for (int k = 0; k < cfg.n_instances; ++k) {
    Rng rng(derive_seed(cfg.seed, 0xc0ffeeULL + static_cast<std::uint64_t>(k)));
    // resample until certified non-product (Haar channels essentially always are)
    KrausChannel ch = random_channel(4, cfg.env_dim, rng()).with_subsystems(2, 2);
    ProductTest pt = is_product(ch, cfg.product_tol);
    for (int attempt = 0; attempt < 16 && pt.is_product; ++attempt) {
      ch = random_channel(4, cfg.env_dim, rng()).with_subsystems(2, 2);
      pt = is_product(ch, cfg.product_tol);
    }
    const DensityMatrix rho0 = random_pure_state(4, rng);
    OptimizerConfig opt = cfg.opt;
    opt.seed = derive_seed(cfg.seed, 0x77ULL + static_cast<std::uint64_t>(k));
    const WitnessResult wit =
        positivity_witness(ch, rho0, 2, 2, opt, cfg.witness_threshold);
    ++random_count;
    if (wit.found) ++found_count;
    if (!wit.found) {
      std::ostringstream os;
      os << "claim1-converse instance " << k
         << ": no witness above threshold; Choi Schmidt spectrum =";
      for (Eigen::Index s = 0; s < pt.schmidt_values.size(); ++s) {
        os << " " << format_double(pt.schmidt_values(s));
      }
      res.log_lines.push_back(os.str());
    }
    // the ceiling min(H(P), log d_B) is a hard assertion; the witness itself is soft
    const bool pass = wit.value <= std::min(ln2, std::log(2.0)) + 1e-9;
    push_row(idx, "random", !pt.is_product, wit.value, wit.found, pt.schmidt_values, pass);
    res.reports.push_back(
        bound_report(output_states(ch, rho0, wit.ensemble, 2, 2)));
    ++idx;
  }

  const double fraction =
      random_count > 0 ? static_cast<double>(found_count) / random_count : 1.0;
  const bool aggregate_pass = fraction >= 0.95;
  push_row(-1, "aggregate", true, fraction, aggregate_pass, RealVector(), aggregate_pass);
  return res;
}

ScenarioResult scenario_bravyi(const RunConfig& cfg) {
  ScenarioResult res;
  int ok_instances = 0;
  int random_instances = 0;

  auto push_rows = [&](long long idx, const std::vector<CommutatorCheckEntry>& entries,
                       const std::vector<bool>& row_pass) {
    for (size_t i = 0; i < entries.size(); ++i) {
      Record r;
      add_int(r, "instance", idx);
      add_int(r, "i", static_cast<long long>(i));
      add_real(r, "lhs", entries[i].lhs);
      add_real(r, "sup_estimate", entries[i].sup_estimate);
      add_bool(r, "pass", row_pass[i]);
      r.pass = row_pass[i];
      res.records.push_back(std::move(r));
    }
  };

  // instance 0: product channel, both sides vanish
  {
    Rng rng(derive_seed(cfg.seed, 0xADD0ULL));
    const KrausChannel ch = product_channel(random_channel(cfg.d_a, 2, rng()),
                                            random_channel(cfg.d_b, 2, rng()));
    const DensityMatrix rho0 = random_density_matrix(cfg.d_a * cfg.d_b, rng);
    const Ensemble e = random_ensemble(cfg.ensemble_size, cfg.d_a, rng, true);
    OptimizerConfig opt = cfg.opt;
    opt.seed = derive_seed(cfg.seed, 0xADD1ULL);
    const auto entries = commutator_bound_check(ch, rho0, e, cfg.d_a, cfg.d_b, opt);
    std::vector<bool> pass;
    for (const auto& en : entries) {
      pass.push_back(en.lhs <= 1e-10 && en.sup_estimate <= 1e-10 && !en.hard_violation);
    }
    push_rows(0, entries, pass);
    res.reports.push_back(bound_report(output_states(ch, rho0, e, cfg.d_a, cfg.d_b)));
  }

  // instance 1: swap/X saturation (requires qubits)
  if (cfg.d_a == 2 && cfg.d_b == 2) {
    const KrausChannel ch = unitary_channel(swap_gate(), std::make_pair(2, 2));
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    const Ensemble e =
        Ensemble::validate(ProbabilityVector::validate({1.0}), {std::move(x)});
    OptimizerConfig opt = cfg.opt;
    opt.seed = derive_seed(cfg.seed, 0xADD2ULL);
    const auto entries = commutator_bound_check(ch, basis_state(4), e, 2, 2, opt);
    std::vector<bool> pass;
    for (const auto& en : entries) {
      pass.push_back(std::abs(en.lhs - 2.0) <= 1e-9 &&
                     std::abs(en.sup_estimate - 2.0) <= 1e-9 && !en.hard_violation);
    }
    push_rows(1, entries, pass);
  }

  for (int k = 0; k < cfg.n_instances; ++k) {
    Rng rng(derive_seed(cfg.seed, 0xB0B0ULL + static_cast<std::uint64_t>(k)));
    const int dim = cfg.d_a * cfg.d_b;
    const KrausChannel ch = random_channel(dim, cfg.env_dim, rng());
    const DensityMatrix rho0 = random_density_matrix(dim, rng);
    const Ensemble e = random_ensemble(cfg.ensemble_size, cfg.d_a, rng, false);
    OptimizerConfig opt = cfg.opt;
    opt.seed = derive_seed(cfg.seed, 0xB1B1ULL + static_cast<std::uint64_t>(k));
    const auto entries = commutator_bound_check(ch, rho0, e, cfg.d_a, cfg.d_b, opt);
    bool instance_ok = true;
    std::vector<bool> pass;
    for (const auto& en : entries) {
      instance_ok = instance_ok && en.lhs <= en.sup_estimate + 1e-6;
      pass.push_back(!en.hard_violation);  // soft misses logged, not asserted
    }
    for (size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].lhs > entries[i].sup_estimate + 1e-6) {
        std::ostringstream os;
        os << "bravyi instance " << k << " index " << i << ": lhs "
           << format_double(entries[i].lhs) << " above estimate "
           << format_double(entries[i].sup_estimate);
        res.log_lines.push_back(os.str());
      }
    }
    ++random_instances;
    if (instance_ok) ++ok_instances;
    push_rows(2 + k, entries, pass);
    res.reports.push_back(bound_report(output_states(ch, rho0, e, cfg.d_a, cfg.d_b)));
  }

  const double fraction =
      random_instances > 0 ? static_cast<double>(ok_instances) / random_instances : 1.0;
  Record agg;
  add_int(agg, "instance", -1);
  add_int(agg, "i", -1);
  add_real(agg, "lhs", fraction);       // achieved within-tolerance fraction
  add_real(agg, "sup_estimate", 0.99);  // required fraction
  const bool aggregate_pass = fraction >= 0.99;
  add_bool(agg, "pass", aggregate_pass);
  agg.pass = aggregate_pass;
  res.records.push_back(std::move(agg));
  return res;
}

ScenarioResult scenario_lightcone(const RunConfig& cfg) {
  ScenarioResult res;
  SpinChainModel model;
  model.n_sites = cfg.n_sites;
  model.coupling = cfg.coupling;
  model.field = cfg.field;
  model.boundary = cfg.boundary;

  std::vector<double> times;
  times.reserve(static_cast<size_t>(cfg.n_times));
  for (int k = 0; k < cfg.n_times; ++k) {
    times.push_back(cfg.n_times == 1
                        ? cfg.t_min
                        : cfg.t_min + ((cfg.t_max - cfg.t_min) * k) / (cfg.n_times - 1));
  }

  const LightconeGrid grid =
      lightcone_scan(model, pauli(cfg.obs_a[0]), pauli(cfg.obs_b[0]), times);

  const Matrix h = build_hamiltonian(model);
  const int d_a = 2;
  const int d_b = 1 << (cfg.n_sites - 1);
  const DensityMatrix rho0 = basis_state(d_a * d_b);
  const Ensemble e = identity_x_ensemble();
  const double shannon = shannon_entropy(e.probs());

  for (size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    const KrausChannel ch =
        unitary_channel(evolution_unitary(h, t), std::make_pair(d_a, d_b));
    const OutputFamily family = output_states(ch, rho0, e, d_a, d_b);
    const double chi = holevo_information(family);

    // seed each encoding's sup search with its distinguishability witness,
    // which certifies estimate >= ‖ρ_i - ρ_0‖₁ and hence the asserted bound
    std::vector<std::vector<Matrix>> warm;
    for (int i = 0; i < e.size(); ++i) {
      const Matrix diff =
          family.outputs[static_cast<size_t>(i)].matrix() - family.baseline.matrix();
      const HermitianEigen eig = herm_eig(diff);
      RealVector signs(eig.eigenvalues.size());
      for (Eigen::Index s = 0; s < eig.eigenvalues.size(); ++s) {
        signs(s) = eig.eigenvalues(s) >= 0.0 ? 1.0 : -1.0;
      }
      warm.push_back(
          {eig.eigenvectors * signs.asDiagonal() * eig.eigenvectors.adjoint()});
    }
    OptimizerConfig opt = cfg.opt;
    opt.seed = derive_seed(cfg.seed, 0x11c0ULL + static_cast<std::uint64_t>(k));
    const double eps = eps_lr(ch, e, d_a, d_b, opt, warm);
    const LrBounds lr = lr_capacity_bound(shannon, eps);

    BoundReport rep = bound_report(family);
    rep.eps_lr = eps;
    rep.lr_bound_half = lr.half;
    rep.lr_bound_one = lr.one;
    res.reports.push_back(std::move(rep));

    const bool capacity_ok = chi <= lr.one + cfg.sandwich_slack;
    const bool check_monotone = std::abs(t - 0.1) < 1e-12;

    for (int d = 1; d < cfg.n_sites; ++d) {
      const double value = grid.values(d - 1, static_cast<Eigen::Index>(k));
      bool pass = capacity_ok;
      if (t == 0.0) pass = pass && value == 0.0;
      if (check_monotone && d >= 2) {
        pass = pass && value < grid.values(d - 2, static_cast<Eigen::Index>(k));
      }
      Record r;
      add_real(r, "t", t);
      add_int(r, "d", d);
      add_real(r, "commutator_norm", value);
      add_real(r, "eps_lr", eps);
      add_real(r, "c_chi", chi);
      add_real(r, "hp_eps_half", lr.half);
      add_real(r, "hp_eps_one", lr.one);
      r.pass = pass;  // schema carries no pass column; the flag feeds the exit code
      res.records.push_back(std::move(r));
    }
    if (chi > lr.half + cfg.sandwich_slack) {
      std::ostringstream os;
      os << "lightcone t=" << format_double(t) << ": c_chi " << format_double(chi)
         << " exceeds the half-form bound " << format_double(lr.half);
      res.log_lines.push_back(os.str());
    }
  }
  return res;
}

}  // namespace

ScenarioResult run_scenario(const RunConfig& cfg) {
  ScenarioResult res;
  switch (cfg.scenario) {
    case Scenario::theorem1: res = scenario_theorem1(cfg, false); break;
    case Scenario::claim1_forward: res = scenario_claim1_forward(cfg); break;
    case Scenario::claim1_converse: res = scenario_claim1_converse(cfg); break;
    case Scenario::bravyi: res = scenario_bravyi(cfg); break;
    case Scenario::lightcone: res = scenario_lightcone(cfg); break;
    case Scenario::bounds_sweep: res = scenario_theorem1(cfg, true); break;
  }
  res.all_pass = true;
  for (const Record& r : res.records) res.all_pass = res.all_pass && r.pass;
  return res;
}

namespace {

std::string field_to_string(const FieldValue& v) {
  if (std::holds_alternative<long long>(v)) return format_int(std::get<long long>(v));
  if (std::holds_alternative<double>(v)) return format_double(std::get<double>(v));
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
  return std::get<std::string>(v);
}

void check_uniform_schema(const std::vector<Record>& records) {
  if (records.empty()) throw DomainError("emit: no records");
  for (const Record& r : records) {
    if (r.fields.size() != records.front().fields.size()) {
      throw DomainError("emit: records disagree on schema");
    }
    for (size_t i = 0; i < r.fields.size(); ++i) {
      if (r.fields[i].first != records.front().fields[i].first) {
        throw DomainError("emit: records disagree on schema");
      }
    }
  }
}

}  // namespace

std::string to_csv(const std::vector<Record>& records, const RunConfig& cfg) {
  check_uniform_schema(records);
  std::ostringstream os;
  os << "# opspread " << kVersion << "\n";
  for (const auto& [k, v] : config_echo(cfg)) os << "# " << k << " = " << v << "\n";
  for (size_t i = 0; i < records.front().fields.size(); ++i) {
    if (i > 0) os << ",";
    os << records.front().fields[i].first;
  }
  os << "\n";
  for (const Record& r : records) {
    for (size_t i = 0; i < r.fields.size(); ++i) {
      if (i > 0) os << ",";
      os << field_to_string(r.fields[i].second);
    }
    os << "\n";
  }
  return os.str();
}

std::string to_json(const std::vector<Record>& records, const RunConfig& cfg) {
  check_uniform_schema(records);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Record& r : records) {
    nlohmann::ordered_json obj;
    obj["version"] = kVersion;
    for (const auto& [k, v] : config_echo(cfg)) obj["cfg_" + k] = v;
    for (const auto& [k, v] : r.fields) {
      if (std::holds_alternative<long long>(v)) {
        obj[k] = std::get<long long>(v);
      } else if (std::holds_alternative<double>(v)) {
        obj[k] = std::get<double>(v);
      } else if (std::holds_alternative<bool>(v)) {
        obj[k] = std::get<bool>(v);
      } else {
        obj[k] = std::get<std::string>(v);
      }
    }
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

void emit(const std::vector<Record>& records, const RunConfig& cfg, OutFormat format,
          const std::string& path) {
  const std::string body = format == OutFormat::csv ? to_csv(records, cfg)
                                                    : to_json(records, cfg);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("emit: cannot open '" + path + "'");
  out << body;
  out.flush();
  if (!out) throw ParseError("emit: write failed for '" + path + "'");
}

}  // namespace opspread
