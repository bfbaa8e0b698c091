#pragma once

// Test-only oracles, kept independent of the library code paths they check.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// partial trace straight from the index-sum definition, two factors only
inline Matrix partial_trace_bruteforce(const Matrix& m, int da, int db, bool keep_b) {
  const int dk = keep_b ? db : da;
  const int dt = keep_b ? da : db;
  Matrix out = Matrix::Zero(dk, dk);
  for (int r = 0; r < dk; ++r) {
    for (int c = 0; c < dk; ++c) {
      Complex sum = 0.0;
      for (int t = 0; t < dt; ++t) {
        const int row = keep_b ? t * db + r : r * db + t;
        const int col = keep_b ? t * db + c : c * db + t;
        sum += m(row, col);
      }
      out(r, c) = sum;
    }
  }
  return out;
}

// eigenvalues of a 2x2 Hermitian matrix in closed form, ascending
inline std::vector<double> herm2x2_eigenvalues(const Matrix& m) {
  const double a = m(0, 0).real();
  const double c = m(1, 1).real();
  const double b2 = std::norm(m(0, 1));
  const double mid = 0.5 * (a + c);
  const double rad = std::sqrt(0.25 * (a - c) * (a - c) + b2);
  return {mid - rad, mid + rad};
}

// eigenvalues of a 3x3 Hermitian matrix via the trigonometric solution of
// the characteristic cubic, ascending
inline std::vector<double> herm3x3_eigenvalues(const Matrix& m) {
  const double q = (m(0, 0).real() + m(1, 1).real() + m(2, 2).real()) / 3.0;
  Matrix shifted = m - q * Matrix::Identity(3, 3);
  double p2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) p2 += std::norm(shifted(i, j));
  }
  const double p = std::sqrt(p2 / 6.0);
  if (p == 0.0) return {q, q, q};
  const Matrix b = shifted / p;
  const double detb = (b.determinant()).real();
  double r = detb / 2.0;
  r = std::min(1.0, std::max(-1.0, r));
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
  const double e2 = 3.0 * q - e1 - e3;
  std::vector<double> out = {e1, e2, e3};
  std::sort(out.begin(), out.end());
  return out;
}

// matrix exponential by plain scaled Taylor series (square-free, test scale)
inline Matrix exp_taylor(const Matrix& m) {
  int s = 0;
  double norm = m.cwiseAbs().sum();
  while (norm > 0.5 && s < 40) {
    norm /= 2.0;
    ++s;
  }
  const Matrix scaled = m / std::pow(2.0, s);
  Matrix sum = Matrix::Identity(m.rows(), m.cols());
  Matrix term = sum;
  for (int k = 1; k <= 30; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < s; ++k) sum = sum * sum;
  return sum;
}

// scalar binary entropy pieces for diagonal states
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace oracles
