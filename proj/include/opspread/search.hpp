#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "opspread/matkernel.hpp"

namespace opspread {

struct OptimizerConfig {
  int restarts = 20;
  int max_iters = 300;
  double init_step = 0.6;
  double shrink = 0.5;
  double tol = 1e-4;  // step size below which a restart stops
  std::uint64_t seed = 0;
};

void validate(const OptimizerConfig& cfg);

/// Chart on U(d): theta are the d² coefficients of a fixed orthonormal
/// Hermitian basis, and the unitary is exp(i Σ theta_k B_k).
struct UnitaryParams {
  int dim;
  Eigen::VectorXd theta;
};

/// Fixed orthonormal (Tr B_a B_b = δ_ab) Hermitian basis of d×d matrices.
/// Order: I/√d, then for each pair i<j (lexicographic) the symmetric and
/// antisymmetric elements, then the d-1 diagonal (Gell-Mann-type) elements.
std::vector<Matrix> hermitian_basis(int dim);

Matrix unitary_from_params(const UnitaryParams& p);

struct PatternSearchResult {
  Eigen::VectorXd x;
  double value;
  std::vector<double> trace;  // best value after each sweep, nondecreasing
};

/// Derivative-free coordinate pattern search (maximization): greedy ± steps
/// per coordinate, step shrinks when a full sweep yields no improvement,
/// stops when the step drops below `tol` or after `max_iters` sweeps.
PatternSearchResult pattern_search(const std::function<double(const Eigen::VectorXd&)>& objective,
                                   Eigen::VectorXd x0, int max_iters, double init_step,
                                   double shrink, double tol);

}  // namespace opspread
