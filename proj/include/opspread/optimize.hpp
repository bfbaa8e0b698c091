#pragma once

#include <vector>

#include "opspread/holevo.hpp"
#include "opspread/search.hpp"

namespace opspread {

struct OptimizeResult {
  Ensemble best;
  double value;                             // holevo_information of `best`
  std::vector<std::vector<double>> trace;   // per-restart running best values
};

/// Maximize the Holevo information over ensembles of m unitaries on A with
/// fixed probabilities, by multi-restart coordinate pattern search over the
/// m·d_a² chart parameters. Deterministic under cfg.seed; ties between
/// restarts break toward the lowest restart index.
OptimizeResult maximize_holevo(const KrausChannel& ch, const DensityMatrix& rho0, int m,
                               const ProbabilityVector& probs, int d_a, int d_b,
                               const OptimizerConfig& cfg);

/// Optimization trace as CSV with columns `restart, iter, best_value`.
std::string trace_to_csv(const std::vector<std::vector<double>>& trace);

struct WitnessResult {
  bool found;
  Ensemble ensemble;
  double value;
};

/// Searches for an encoding that transmits information (m = 2, uniform
/// probabilities); `found` when the best value clears `threshold` nats.
WitnessResult positivity_witness(const KrausChannel& ch, const DensityMatrix& rho0,
                                 int d_a, int d_b, const OptimizerConfig& cfg,
                                 double threshold = 1e-6);

}  // namespace opspread
