#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "opspread/errors.hpp"

namespace opspread {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Eigenvalues at or below this are treated as zero in spectral functions
/// (the 0·log 0 = 0 convention).
inline constexpr double kEigClip = 1e-12;

/// Default spectral-norm tolerance for Hermiticity / unitarity checks.
inline constexpr double kHermTol = 1e-10;

/// Spectral decomposition of a Hermitian matrix: ascending eigenvalues and
/// the unitary of eigenvectors, so that V diag(w) V† reconstructs the input.
struct HermitianEigen {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

void require_finite(const Matrix& m, const char* what);
bool is_hermitian(const Matrix& m, double tol = kHermTol);
bool is_unitary(const Matrix& m, double tol = kHermTol);

/// Kronecker (tensor) product, row-major index convention:
/// (a ⊗ b)[(i,k),(j,l)] = a(i,j) b(k,l).
Matrix kron(const Matrix& a, const Matrix& b);

/// Trace out all tensor factors not listed in `keep`. `dims` are the factor
/// dimensions in kron order; `keep` holds strictly ascending factor indices.
/// The result lives on the kept factors in their original order.
Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<int>& keep);

/// Eigendecomposition of (m + m†)/2. Rejects inputs whose anti-Hermitian
/// part exceeds `tol` in spectral norm.
HermitianEigen herm_eig(const Matrix& m, double tol = kHermTol);

/// Sum of singular values. Requires a square matrix.
double trace_norm(const Matrix& m);

/// Largest singular value.
double operator_norm(const Matrix& m);

/// All singular values, descending.
RealVector singular_values(const Matrix& m);

/// Matrix logarithm on the support of a Hermitian PSD matrix: eigenvalues
/// above `clip` map to their log, the rest contribute zero. Eigenvalues
/// below -clip are rejected.
Matrix herm_log(const Matrix& m, double clip = kEigClip);

/// exp(-i h t) for Hermitian h. Returns the exact identity at t = 0.
Matrix evolution_unitary(const Matrix& h, double t);

}  // namespace opspread
