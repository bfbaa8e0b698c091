#include "opspread/states.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "opspread/errors.hpp"

namespace opspread {

namespace {

// clamp entropy-like results that undershoot zero by rounding noise
double clamp_noise(double v) { return (v < 0.0 && v > -1e-12) ? 0.0 : v; }

}  // namespace

DensityMatrix validate_state(const Matrix& m, const StateTolerances& tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError("validate_state: matrix must be square and nonempty");
  }
  require_finite(m, "validate_state");
  const double herm_dev = operator_norm(m - m.adjoint());
  if (herm_dev > tol.hermiticity) {
    std::ostringstream os;
    os << "validate_state: hermiticity violation |m - m†| = " << herm_dev;
    throw HermiticityError(os.str());
  }
  Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw DomainError("validate_state: eigensolver failed");
  }
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol.positivity) {
    std::ostringstream os;
    os << "validate_state: positivity violation, min eigenvalue = " << min_eig;
    throw PositivityError(os.str());
  }
  const double tr = sym.trace().real();
  if (std::abs(tr - 1.0) > tol.trace) {
    std::ostringstream os;
    os << "validate_state: trace violation, Tr = " << tr;
    throw TraceError(os.str());
  }
  return DensityMatrix(std::move(sym));
}

ProbabilityVector ProbabilityVector::validate(std::vector<double> weights, double tol) {
  if (weights.empty()) throw DimensionError("ProbabilityVector: empty");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0)) {
      std::ostringstream os;
      os << "ProbabilityVector: weight " << w << " outside [0,1]";
      throw DomainError(os.str());
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol) {
    std::ostringstream os;
    os << "ProbabilityVector: weights sum to " << sum;
    throw DomainError(os.str());
  }
  return ProbabilityVector(std::move(weights));
}

double von_neumann_entropy(const DensityMatrix& rho, double clip) {
  const HermitianEigen eig = herm_eig(rho.matrix());
  double s = 0.0;
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    const double w = eig.eigenvalues(k);
    if (w > clip) s -= w * std::log(w);
  }
  return clamp_noise(s);
}

double relative_entropy(const DensityMatrix& eta, const DensityMatrix& mu,
                        double clip) {
  if (eta.dim() != mu.dim()) {
    throw DimensionError("relative_entropy: dimension mismatch");
  }
  const HermitianEigen ee = herm_eig(eta.matrix());
  const HermitianEigen em = herm_eig(mu.matrix());
  // overlap(i,j) = |⟨a_i|b_j⟩|²
  const Matrix cross = ee.eigenvectors.adjoint() * em.eigenvectors;
  const RealMatrix overlap = cross.cwiseAbs2();

  double result = 0.0;
  double kernel_mass = 0.0;
  for (Eigen::Index i = 0; i < ee.eigenvalues.size(); ++i) {
    const double p = ee.eigenvalues(i);
    if (p <= clip) continue;
    result += p * std::log(p);
    for (Eigen::Index j = 0; j < em.eigenvalues.size(); ++j) {
      const double q = em.eigenvalues(j);
      if (q > clip) {
        result -= p * overlap(i, j) * std::log(q);
      } else {
        kernel_mass += p * overlap(i, j);
      }
    }
  }
  if (kernel_mass > 1e-9) return std::numeric_limits<double>::infinity();
  return clamp_noise(result);
}

double trace_distance(const DensityMatrix& eta, const DensityMatrix& mu) {
  if (eta.dim() != mu.dim()) {
    throw DimensionError("trace_distance: dimension mismatch");
  }
  return 0.5 * trace_norm(eta.matrix() - mu.matrix());
}

double skew_divergence(const DensityMatrix& eta, const DensityMatrix& mu,
                       double lambda, double clip) {
  if (eta.dim() != mu.dim()) {
    throw DimensionError("skew_divergence: dimension mismatch");
  }
  if (!(lambda > 0.0 && lambda < 1.0)) {
    std::ostringstream os;
    os << "skew_divergence: lambda = " << lambda << " not in (0,1)";
    throw DomainError(os.str());
  }
  const Matrix mix = lambda * eta.matrix() + (1.0 - lambda) * mu.matrix();
  const DensityMatrix mixture = validate_state(mix);
  return relative_entropy(eta, mixture, clip) / (-std::log(lambda));
}

double shannon_entropy(const ProbabilityVector& p) {
  double s = 0.0;
  for (double w : p.weights()) {
    if (w > 0.0) s -= w * std::log(w);
  }
  return clamp_noise(s);
}

}  // namespace opspread
