#include "opspread/optimize.hpp"

#include <cmath>
#include <sstream>

#include "opspread/errors.hpp"
#include "opspread/random.hpp"
#include "opspread/textio.hpp"

namespace opspread {

namespace {

Ensemble ensemble_from_flat(const Eigen::VectorXd& flat, int m, int d_a,
                            const ProbabilityVector& probs) {
  const int per = d_a * d_a;
  std::vector<Matrix> us;
  us.reserve(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    us.push_back(unitary_from_params(UnitaryParams{d_a, flat.segment(i * per, per)}));
  }
  return Ensemble::validate(probs, std::move(us));
}

}  // namespace

OptimizeResult maximize_holevo(const KrausChannel& ch, const DensityMatrix& rho0, int m,
                               const ProbabilityVector& probs, int d_a, int d_b,
                               const OptimizerConfig& cfg) {
  validate(cfg);
  if (m < 1) throw DimensionError("maximize_holevo: need m >= 1");
  if (probs.size() != m) throw DimensionError("maximize_holevo: probs length must equal m");
  const int n_params = m * d_a * d_a;

  auto objective = [&](const Eigen::VectorXd& flat) {
    const Ensemble e = ensemble_from_flat(flat, m, d_a, probs);
    return holevo_information(output_states(ch, rho0, e, d_a, d_b));
  };

  Eigen::VectorXd best_x;
  double best_value = -1.0;
  std::vector<std::vector<double>> trace;
  trace.reserve(static_cast<size_t>(cfg.restarts));
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    Eigen::VectorXd x0(n_params);
    for (int k = 0; k < n_params; ++k) x0(k) = (2.0 * uniform_real(rng) - 1.0) * M_PI;
    PatternSearchResult res =
        pattern_search(objective, std::move(x0), cfg.max_iters, cfg.init_step,
                       cfg.shrink, cfg.tol);
    trace.push_back(std::move(res.trace));
    if (res.value > best_value) {  // strict: ties keep the earliest restart
      best_value = res.value;
      best_x = std::move(res.x);
    }
  }

  Ensemble best = ensemble_from_flat(best_x, m, d_a, probs);
  // re-evaluate so the reported value is exactly the recomputed information
  const double value = holevo_information(output_states(ch, rho0, best, d_a, d_b));
  return OptimizeResult{std::move(best), value, std::move(trace)};
}

std::string trace_to_csv(const std::vector<std::vector<double>>& trace) {
  std::ostringstream os;
  os << "restart,iter,best_value\n";
  for (size_t r = 0; r < trace.size(); ++r) {
    for (size_t it = 0; it < trace[r].size(); ++it) {
      os << r << "," << it << "," << format_double(trace[r][it]) << "\n";
    }
  }
  return os.str();
}

WitnessResult positivity_witness(const KrausChannel& ch, const DensityMatrix& rho0,
                                 int d_a, int d_b, const OptimizerConfig& cfg,
                                 double threshold) {
  const ProbabilityVector uniform = ProbabilityVector::validate({0.5, 0.5});
  OptimizeResult res = maximize_holevo(ch, rho0, 2, uniform, d_a, d_b, cfg);
  return WitnessResult{res.value > threshold, std::move(res.best), res.value};
}

}  // namespace opspread
