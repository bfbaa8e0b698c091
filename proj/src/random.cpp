#include "opspread/random.hpp"

#include <cmath>

namespace opspread {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer applied to master + golden-ratio stride
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform_real(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(Rng& rng) {
  double u1 = uniform_real(rng);
  while (u1 <= 0.0) u1 = uniform_real(rng);
  const double u2 = uniform_real(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Complex complex_normal(Rng& rng) {
  const double re = standard_normal(rng);
  const double im = standard_normal(rng);
  return Complex(re, im);
}

Matrix ginibre(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = complex_normal(rng);
  }
  return g;
}

Matrix haar_isometry(int rows, int cols, Rng& rng) {
  if (rows < cols || cols < 1) {
    throw DimensionError("haar_isometry: need rows >= cols >= 1");
  }
  const Matrix g = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

Matrix haar_unitary(int dim, Rng& rng) { return haar_isometry(dim, dim, rng); }

DensityMatrix random_density_matrix(int dim, Rng& rng) {
  const Matrix g = ginibre(dim, dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return validate_state(rho);
}

DensityMatrix random_pure_state(int dim, Rng& rng) {
  Eigen::VectorXcd psi(dim);
  for (int i = 0; i < dim; ++i) psi(i) = complex_normal(rng);
  psi.normalize();
  return validate_state(psi * psi.adjoint());
}

std::vector<double> random_simplex(int m, Rng& rng) {
  if (m < 1) throw DimensionError("random_simplex: need m >= 1");
  std::vector<double> w(static_cast<size_t>(m));
  double sum = 0.0;
  for (double& x : w) {
    double u = uniform_real(rng);
    while (u <= 0.0) u = uniform_real(rng);
    x = -std::log(u);
    sum += x;
  }
  for (double& x : w) x /= sum;
  return w;
}

}  // namespace opspread
