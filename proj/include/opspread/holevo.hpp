#pragma once

#include <optional>
#include <vector>

#include "opspread/channels.hpp"
#include "opspread/random.hpp"
#include "opspread/search.hpp"
#include "opspread/states.hpp"

namespace opspread {

/// Classical encoding {p_i, U_i}: a probability vector and matching
/// unitaries on the encoding subsystem.
class Ensemble {
 public:
  static Ensemble validate(ProbabilityVector probs, std::vector<Matrix> unitaries,
                           double tol = kHermTol);
  int size() const { return probs_.size(); }
  const ProbabilityVector& probs() const { return probs_; }
  const std::vector<Matrix>& unitaries() const { return unitaries_; }

 private:
  Ensemble(ProbabilityVector p, std::vector<Matrix> u)
      : probs_(std::move(p)), unitaries_(std::move(u)) {}
  ProbabilityVector probs_;
  std::vector<Matrix> unitaries_;
};

Ensemble random_ensemble(int m, int dim, Rng& rng, bool uniform_probs);

/// Channel outputs on the receiving subsystem: one state per message plus
/// the no-encoding baseline.
struct OutputFamily {
  ProbabilityVector probs;
  std::vector<DensityMatrix> outputs;
  DensityMatrix baseline;
};

OutputFamily make_family(ProbabilityVector probs, std::vector<DensityMatrix> outputs,
                         DensityMatrix baseline);

/// ρ_i = (U_i ⊗ I_B) ρ0 (U_i† ⊗ I_B).
std::vector<DensityMatrix> encode(const DensityMatrix& rho0, const Ensemble& e,
                                  int d_a, int d_b);

/// outputs_i = Tr_A[τ(ρ_i)], baseline = Tr_A[τ(ρ0)].
OutputFamily output_states(const KrausChannel& ch, const DensityMatrix& rho0,
                           const Ensemble& e, int d_a, int d_b);

/// S(Σ p_i ρ_i) - Σ p_i S(ρ_i), clamped at 0 against rounding undershoot.
double holevo_information(const OutputFamily& f);

/// (ρ̄ - p_i ρ_i)/(1 - p_i); the normalized mixture of the other outputs.
/// Undefined at p_i = 1.
DensityMatrix complementary_state(const OutputFamily& f, int i);

/// Two-sided bound on the Holevo information from complementary-state trace
/// norms: lower = Σ ½ p_i (1-p_i)² t_i², upper = -Σ ½ p_i log(p_i) t_i with
/// t_i = ‖ρ_i - ρ̃_i‖₁. Entries with p_i ∈ {0,1} contribute zero.
struct CapacityBounds {
  double lower;
  double upper;
};

CapacityBounds capacity_bounds(const OutputFamily& f);

/// Max deviation across the two identities that tie the Holevo information
/// to the skew divergence: per index |S(ρ_i‖ρ̄) + log(p_i)·S_{p_i}(ρ_i‖ρ̃_i)|
/// and globally |C_χ + Σ p_i log(p_i) S_{p_i}(ρ_i‖ρ̃_i)|.
/// Requires every p_i strictly inside (0,1).
double skew_identity_deviation(const OutputFamily& f);

struct TmaxBound {
  double t_max;  // max pairwise trace distance of the outputs
  double bound;  // H(P) · t_max
};

TmaxBound tmax_bound(const OutputFamily& f);

/// Light-cone capacity ceilings from a spreading magnitude ε:
/// half = ½ H(P) ε, one = H(P) ε.
struct LrBounds {
  double half;
  double one;
};

LrBounds lr_capacity_bound(double shannon, double eps_lr);

/// Per-index numbers for one experiment.
struct PerIndexBound {
  double p;
  double comp_trace_norm;  // ‖ρ_i - ρ̃_i‖₁
  double skew;             // S_{p_i}(ρ_i‖ρ̃_i), 0 at boundary probabilities
};

struct BoundReport {
  double c_chi = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double shannon = 0.0;
  double t_max = 0.0;
  double tmax_bound = 0.0;
  std::vector<PerIndexBound> per_index;
  std::optional<double> eps_lr;
  std::optional<double> lr_bound_half;
  std::optional<double> lr_bound_one;
};

BoundReport bound_report(const OutputFamily& f);

/// One entry of the distinguishability-vs-spreading check: the trace-norm
/// distance of an encoded output from the baseline against the best found
/// commutator sup over unit-norm receiver observables.
struct CommutatorCheckEntry {
  double lhs;           // ‖ρ_i^B - ρ_0^B‖₁
  double sup_estimate;  // lower bound on sup over ‖O_B‖ = 1
  bool hard_violation;  // lhs above the analytic ceiling 2 + 1e-9
};

std::vector<CommutatorCheckEntry> commutator_bound_check(const KrausChannel& ch,
                                                         const DensityMatrix& rho0,
                                                         const Ensemble& e, int d_a, int d_b,
                                                         const OptimizerConfig& opt);

}  // namespace opspread
