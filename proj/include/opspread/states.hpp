#pragma once

#include <vector>

#include "opspread/matkernel.hpp"

namespace opspread {

struct StateTolerances {
  double hermiticity = 1e-10;   // spectral norm of m - m†
  double positivity = 1e-10;    // eigenvalue floor is -positivity
  double trace = 1e-10;         // |Tr m - 1|
};

/// Certified density matrix. Construction goes through validate_state(),
/// which checks Hermiticity, positivity and unit trace and stores the
/// symmetrized matrix.
class DensityMatrix {
 public:
  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& matrix() const { return mat_; }

  friend DensityMatrix validate_state(const Matrix& m, const StateTolerances& tol);

 private:
  explicit DensityMatrix(Matrix m) : mat_(std::move(m)) {}
  Matrix mat_;
};

/// Rejects with HermiticityError / PositivityError / TraceError, each named
/// distinctly.
DensityMatrix validate_state(const Matrix& m, const StateTolerances& tol = {});

/// Nonnegative weights summing to one.
class ProbabilityVector {
 public:
  static ProbabilityVector validate(std::vector<double> weights, double tol = 1e-12);
  int size() const { return static_cast<int>(weights_.size()); }
  double operator[](int i) const { return weights_[static_cast<size_t>(i)]; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  explicit ProbabilityVector(std::vector<double> w) : weights_(std::move(w)) {}
  std::vector<double> weights_;
};

/// -Σ w log w over eigenvalues above `clip`, in nats.
double von_neumann_entropy(const DensityMatrix& rho, double clip = kEigClip);

/// Tr η (log η - log μ) with the support convention; +infinity when the
/// support of η leaks outside the support of μ (kernel detected by `clip`).
double relative_entropy(const DensityMatrix& eta, const DensityMatrix& mu,
                        double clip = kEigClip);

/// ½‖η - μ‖₁ ∈ [0, 1].
double trace_distance(const DensityMatrix& eta, const DensityMatrix& mu);

/// S(η ‖ λη + (1-λ)μ) / (-log λ) for λ strictly inside (0, 1). Finite for
/// all valid states because the mixture's support contains supp(η).
double skew_divergence(const DensityMatrix& eta, const DensityMatrix& mu,
                       double lambda, double clip = kEigClip);

/// -Σ p log p in nats, with 0 log 0 = 0.
double shannon_entropy(const ProbabilityVector& p);

}  // namespace opspread
