#include "opspread/matkernel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace opspread {

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw DomainError(std::string(what) + ": non-finite entries");
  }
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return operator_norm(m - m.adjoint()) <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const Matrix gram = m.adjoint() * m;
  return operator_norm(gram - Matrix::Identity(m.cols(), m.cols())) <= tol;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  require_finite(a, "kron lhs");
  require_finite(b, "kron rhs");
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
  if (m.rows() != m.cols()) {
    throw DimensionError("partial_trace: matrix must be square");
  }
  long long total = 1;
  for (int d : dims) {
    if (d <= 0) throw DimensionError("partial_trace: factor dims must be positive");
    total *= d;
  }
  if (total != m.rows()) {
    throw DimensionError("partial_trace: product of dims does not match matrix size");
  }
  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  int prev = -1;
  for (int k : keep) {
    if (k < 0 || k >= n) throw DimensionError("partial_trace: keep index out of range");
    if (k <= prev) throw DimensionError("partial_trace: keep indices must be strictly ascending");
    kept[k] = true;
    prev = k;
  }

  // strides of each factor in the flattened row-major index
  std::vector<long long> stride(n, 1);
  for (int f = n - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

  std::vector<int> keep_factors, trace_factors;
  for (int f = 0; f < n; ++f) (kept[f] ? keep_factors : trace_factors).push_back(f);

  long long dim_keep = 1, dim_trace = 1;
  for (int f : keep_factors) dim_keep *= dims[f];
  for (int f : trace_factors) dim_trace *= dims[f];

  // base offset of every kept / traced multi-index
  auto offsets = [&](const std::vector<int>& factors, long long count) {
    std::vector<long long> out(count, 0);
    std::vector<int> counter(factors.size(), 0);
    for (long long idx = 0; idx < count; ++idx) {
      long long off = 0;
      for (size_t f = 0; f < factors.size(); ++f) off += counter[f] * stride[factors[f]];
      out[idx] = off;
      for (int f = static_cast<int>(factors.size()) - 1; f >= 0; --f) {
        if (++counter[f] < dims[factors[f]]) break;
        counter[f] = 0;
      }
    }
    return out;
  };
  const std::vector<long long> keep_off = offsets(keep_factors, dim_keep);
  const std::vector<long long> trace_off = offsets(trace_factors, dim_trace);

  Matrix out = Matrix::Zero(dim_keep, dim_keep);
  for (long long r = 0; r < dim_keep; ++r) {
    for (long long c = 0; c < dim_keep; ++c) {
      Complex sum = 0.0;
      for (long long t = 0; t < dim_trace; ++t) {
        sum += m(keep_off[r] + trace_off[t], keep_off[c] + trace_off[t]);
      }
      out(r, c) = sum;
    }
  }
  return out;
}

HermitianEigen herm_eig(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) throw DimensionError("herm_eig: matrix must be square");
  require_finite(m, "herm_eig");
  const double dev = operator_norm(m - m.adjoint());
  if (dev > tol) {
    std::ostringstream os;
    os << "herm_eig: input not Hermitian, |m - m†| = " << dev;
    throw HermiticityError(os.str());
  }
  const Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw DomainError("herm_eig: eigensolver failed to converge");
  }
  return HermitianEigen{solver.eigenvalues(), solver.eigenvectors()};
}

RealVector singular_values(const Matrix& m) {
  if (m.size() == 0) return RealVector();
  // Jacobi is the most accurate at desk scale; switch to divide & conquer
  // only once matrices get large enough for it to matter.
  if (std::max(m.rows(), m.cols()) <= 64) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues();
  }
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues();
}

double trace_norm(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("trace_norm: matrix must be square");
  if (m.size() == 0) return 0.0;
  return singular_values(m).sum();
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

Matrix herm_log(const Matrix& m, double clip) {
  const HermitianEigen eig = herm_eig(m);
  RealVector logs(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    const double w = eig.eigenvalues(k);
    if (w < -clip) {
      std::ostringstream os;
      os << "herm_log: eigenvalue " << w << " below -clip = " << -clip;
      throw PositivityError(os.str());
    }
    logs(k) = (w > clip) ? std::log(w) : 0.0;
  }
  return eig.eigenvectors * logs.asDiagonal() * eig.eigenvectors.adjoint();
}

Matrix evolution_unitary(const Matrix& h, double t) {
  if (t == 0.0) {
    if (h.rows() != h.cols()) throw DimensionError("evolution_unitary: matrix must be square");
    return Matrix::Identity(h.rows(), h.cols());
  }
  const HermitianEigen eig = herm_eig(h);
  Eigen::VectorXcd phases(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    phases(k) = std::exp(Complex(0.0, -eig.eigenvalues(k) * t));
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace opspread
