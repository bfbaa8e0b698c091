#include "opspread/holevo.hpp"

#include <cmath>
#include <sstream>

#include "opspread/errors.hpp"
#include "opspread/spreading.hpp"

namespace opspread {

namespace {

constexpr double kBoundaryEps = 0.0;  // p is compared exactly against 0 and 1

Matrix average_output(const OutputFamily& f) {
  Matrix avg = Matrix::Zero(f.baseline.dim(), f.baseline.dim());
  for (int i = 0; i < f.probs.size(); ++i) {
    avg += f.probs[i] * f.outputs[static_cast<size_t>(i)].matrix();
  }
  return avg;
}

}  // namespace

Ensemble Ensemble::validate(ProbabilityVector probs, std::vector<Matrix> unitaries,
                            double tol) {
  if (static_cast<size_t>(probs.size()) != unitaries.size()) {
    throw DimensionError("Ensemble: probs and unitaries lengths differ");
  }
  const Eigen::Index d = unitaries.front().rows();
  for (const Matrix& u : unitaries) {
    if (u.rows() != d || u.cols() != d) {
      throw DimensionError("Ensemble: unitaries must share one dimension");
    }
    if (!is_unitary(u, tol)) {
      throw UnitarityError("Ensemble: encoding operator is not unitary within tolerance");
    }
  }
  return Ensemble(std::move(probs), std::move(unitaries));
}

Ensemble random_ensemble(int m, int dim, Rng& rng, bool uniform_probs) {
  std::vector<double> probs;
  if (uniform_probs) {
    probs.assign(static_cast<size_t>(m), 1.0 / m);
  } else {
    probs = random_simplex(m, rng);
  }
  std::vector<Matrix> us;
  us.reserve(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) us.push_back(haar_unitary(dim, rng));
  return Ensemble::validate(ProbabilityVector::validate(std::move(probs), 1e-9),
                            std::move(us));
}

OutputFamily make_family(ProbabilityVector probs, std::vector<DensityMatrix> outputs,
                         DensityMatrix baseline) {
  if (static_cast<size_t>(probs.size()) != outputs.size()) {
    throw DimensionError("OutputFamily: probs and outputs lengths differ");
  }
  for (const DensityMatrix& o : outputs) {
    if (o.dim() != baseline.dim()) {
      throw DimensionError("OutputFamily: outputs must share the baseline dimension");
    }
  }
  return OutputFamily{std::move(probs), std::move(outputs), std::move(baseline)};
}

std::vector<DensityMatrix> encode(const DensityMatrix& rho0, const Ensemble& e,
                                  int d_a, int d_b) {
  if (static_cast<long long>(d_a) * d_b != rho0.dim()) {
    throw DimensionError("encode: d_a * d_b must equal dim(rho0)");
  }
  if (e.unitaries().front().rows() != d_a) {
    throw DimensionError("encode: ensemble unitaries must act on the A factor");
  }
  const Matrix id_b = Matrix::Identity(d_b, d_b);
  std::vector<DensityMatrix> out;
  out.reserve(static_cast<size_t>(e.size()));
  for (const Matrix& u : e.unitaries()) {
    const Matrix full = kron(u, id_b);
    out.push_back(validate_state(full * rho0.matrix() * full.adjoint()));
  }
  return out;
}

OutputFamily output_states(const KrausChannel& ch, const DensityMatrix& rho0,
                           const Ensemble& e, int d_a, int d_b) {
  if (ch.dim() != rho0.dim()) throw DimensionError("output_states: channel/state dims differ");
  const std::vector<int> dims = {d_a, d_b};
  const std::vector<int> keep = {1};
  StateTolerances loose;
  loose.positivity = 1e-9;

  std::vector<DensityMatrix> outputs;
  outputs.reserve(static_cast<size_t>(e.size()));
  for (const DensityMatrix& rho_i : encode(rho0, e, d_a, d_b)) {
    const DensityMatrix evolved = apply(ch, rho_i);
    outputs.push_back(validate_state(partial_trace(evolved.matrix(), dims, keep), loose));
  }
  const DensityMatrix evolved0 = apply(ch, rho0);
  DensityMatrix baseline =
      validate_state(partial_trace(evolved0.matrix(), dims, keep), loose);
  return make_family(e.probs(), std::move(outputs), std::move(baseline));
}

double holevo_information(const OutputFamily& f) {
  StateTolerances loose;
  loose.positivity = 1e-9;
  const DensityMatrix avg = validate_state(average_output(f), loose);
  double chi = von_neumann_entropy(avg);
  for (int i = 0; i < f.probs.size(); ++i) {
    const double p = f.probs[i];
    if (p == 0.0) continue;
    chi -= p * von_neumann_entropy(f.outputs[static_cast<size_t>(i)]);
  }
  // concavity guarantees chi >= 0; clip rounding undershoot
  if (chi < 0.0 && chi > -1e-12) chi = 0.0;
  return chi;
}

DensityMatrix complementary_state(const OutputFamily& f, int i) {
  if (i < 0 || i >= f.probs.size()) throw DimensionError("complementary_state: index out of range");
  const double p = f.probs[i];
  if (p >= 1.0 - kBoundaryEps) {
    throw DomainError("complementary_state: undefined at p_i = 1");
  }
  const Matrix avg = average_output(f);
  const Matrix comp =
      (avg - p * f.outputs[static_cast<size_t>(i)].matrix()) / (1.0 - p);
  StateTolerances loose;
  loose.positivity = 1e-9;
  return validate_state(comp, loose);
}

CapacityBounds capacity_bounds(const OutputFamily& f) {
  double lower = 0.0;
  double upper = 0.0;
  for (int i = 0; i < f.probs.size(); ++i) {
    const double p = f.probs[i];
    if (p == 0.0 || p == 1.0) continue;  // boundary entries contribute zero
    const DensityMatrix comp = complementary_state(f, i);
    const double tn = trace_norm(f.outputs[static_cast<size_t>(i)].matrix() - comp.matrix());
    lower += 0.5 * p * (1.0 - p) * (1.0 - p) * tn * tn;
    upper += -0.5 * p * std::log(p) * tn;
  }
  return CapacityBounds{lower, upper};
}

double skew_identity_deviation(const OutputFamily& f) {
  StateTolerances loose;
  loose.positivity = 1e-9;
  const DensityMatrix avg = validate_state(average_output(f), loose);
  double max_dev = 0.0;
  double chi_from_skew = 0.0;
  for (int i = 0; i < f.probs.size(); ++i) {
    const double p = f.probs[i];
    if (!(p > 0.0 && p < 1.0)) {
      throw DomainError("skew_identity_deviation: probabilities must be strictly in (0,1)");
    }
    const DensityMatrix& rho_i = f.outputs[static_cast<size_t>(i)];
    const DensityMatrix comp = complementary_state(f, i);
    const double rel = relative_entropy(rho_i, avg);
    const double skew = skew_divergence(rho_i, comp, p);
    max_dev = std::max(max_dev, std::abs(rel - (-std::log(p)) * skew));
    chi_from_skew += -p * std::log(p) * skew;
  }
  max_dev = std::max(max_dev, std::abs(holevo_information(f) - chi_from_skew));
  return max_dev;
}

TmaxBound tmax_bound(const OutputFamily& f) {
  double t_max = 0.0;
  for (int i = 0; i < f.probs.size(); ++i) {
    if (f.probs[i] == 0.0) continue;
    for (int j = i + 1; j < f.probs.size(); ++j) {
      if (f.probs[j] == 0.0) continue;
      t_max = std::max(t_max, trace_distance(f.outputs[static_cast<size_t>(i)],
                                             f.outputs[static_cast<size_t>(j)]));
    }
  }
  return TmaxBound{t_max, shannon_entropy(f.probs) * t_max};
}

LrBounds lr_capacity_bound(double shannon, double eps) {
  if (eps < 0.0) throw DomainError("lr_capacity_bound: eps_lr must be nonnegative");
  return LrBounds{0.5 * shannon * eps, shannon * eps};
}

BoundReport bound_report(const OutputFamily& f) {
  BoundReport r;
  r.c_chi = holevo_information(f);
  const CapacityBounds cb = capacity_bounds(f);
  r.lower = cb.lower;
  r.upper = cb.upper;
  r.shannon = shannon_entropy(f.probs);
  const TmaxBound tb = tmax_bound(f);
  r.t_max = tb.t_max;
  r.tmax_bound = tb.bound;
  for (int i = 0; i < f.probs.size(); ++i) {
    const double p = f.probs[i];
    PerIndexBound entry{p, 0.0, 0.0};
    if (p > 0.0 && p < 1.0) {
      const DensityMatrix comp = complementary_state(f, i);
      entry.comp_trace_norm =
          trace_norm(f.outputs[static_cast<size_t>(i)].matrix() - comp.matrix());
      entry.skew = skew_divergence(f.outputs[static_cast<size_t>(i)], comp, p);
    }
    r.per_index.push_back(entry);
  }
  return r;
}

std::vector<CommutatorCheckEntry> commutator_bound_check(const KrausChannel& ch,
                                                         const DensityMatrix& rho0,
                                                         const Ensemble& e, int d_a, int d_b,
                                                         const OptimizerConfig& opt) {
  const OutputFamily f = output_states(ch, rho0, e, d_a, d_b);
  std::vector<CommutatorCheckEntry> entries;
  entries.reserve(static_cast<size_t>(e.size()));
  for (int i = 0; i < e.size(); ++i) {
    const Matrix diff = f.outputs[static_cast<size_t>(i)].matrix() - f.baseline.matrix();
    const double lhs = trace_norm(diff);

    // the optimal distinguishing observable sign(ρ_i - ρ_0) certifies
    // sup >= lhs, so seed the search with it
    const HermitianEigen eig = herm_eig(diff);
    RealVector signs(eig.eigenvalues.size());
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
      signs(k) = eig.eigenvalues(k) >= 0.0 ? 1.0 : -1.0;
    }
    const Matrix witness =
        eig.eigenvectors * signs.asDiagonal() * eig.eigenvectors.adjoint();

    OptimizerConfig per_index = opt;
    per_index.seed = derive_seed(opt.seed, static_cast<std::uint64_t>(i));
    const SupEstimate sup =
        sup_commutator(ch, e.unitaries()[static_cast<size_t>(i)], d_a, d_b, per_index,
                       {witness});
    entries.push_back(CommutatorCheckEntry{lhs, sup.estimate, lhs > 2.0 + 1e-9});
  }
  return entries;
}

}  // namespace opspread
