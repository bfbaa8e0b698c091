#include "opspread/search.hpp"

#include <cmath>
#include <sstream>

#include "opspread/errors.hpp"

namespace opspread {

void validate(const OptimizerConfig& cfg) {
  auto fail = [](const std::string& why) { throw DomainError("OptimizerConfig: " + why); };
  if (cfg.restarts < 1) fail("restarts must be >= 1");
  if (cfg.max_iters < 1) fail("max_iters must be >= 1");
  if (!(cfg.init_step > 0.0)) fail("init_step must be > 0");
  if (!(cfg.shrink > 0.0 && cfg.shrink < 1.0)) fail("shrink must be in (0,1)");
  if (!(cfg.tol > 0.0)) fail("tol must be > 0");
}

std::vector<Matrix> hermitian_basis(int dim) {
  if (dim < 1) throw DimensionError("hermitian_basis: dim must be >= 1");
  std::vector<Matrix> basis;
  basis.reserve(static_cast<size_t>(dim) * dim);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  basis.push_back(Matrix::Identity(dim, dim) / std::sqrt(static_cast<double>(dim)));
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      Matrix sym = Matrix::Zero(dim, dim);
      sym(i, j) = inv_sqrt2;
      sym(j, i) = inv_sqrt2;
      basis.push_back(sym);
      Matrix asym = Matrix::Zero(dim, dim);
      asym(i, j) = Complex(0.0, -inv_sqrt2);
      asym(j, i) = Complex(0.0, inv_sqrt2);
      basis.push_back(asym);
    }
  }
  for (int l = 1; l < dim; ++l) {
    Matrix diag = Matrix::Zero(dim, dim);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int i = 0; i < l; ++i) diag(i, i) = norm;
    diag(l, l) = -l * norm;
    basis.push_back(diag);
  }
  return basis;
}

Matrix unitary_from_params(const UnitaryParams& p) {
  if (p.theta.size() != static_cast<Eigen::Index>(p.dim) * p.dim) {
    std::ostringstream os;
    os << "unitary_from_params: expected " << p.dim * p.dim << " parameters, got "
       << p.theta.size();
    throw DimensionError(os.str());
  }
  const std::vector<Matrix> basis = hermitian_basis(p.dim);
  Matrix h = Matrix::Zero(p.dim, p.dim);
  for (size_t k = 0; k < basis.size(); ++k) {
    h += p.theta(static_cast<Eigen::Index>(k)) * basis[k];
  }
  // exp(iH) = conj of the evolution at t = -1
  return evolution_unitary(h, -1.0);
}

PatternSearchResult pattern_search(const std::function<double(const Eigen::VectorXd&)>& objective,
                                   Eigen::VectorXd x0, int max_iters, double init_step,
                                   double shrink, double tol) {
  Eigen::VectorXd x = std::move(x0);
  double fx = objective(x);
  double step = init_step;
  std::vector<double> trace;
  trace.push_back(fx);
  for (int iter = 0; iter < max_iters && step >= tol; ++iter) {
    bool improved = false;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      for (double sign : {1.0, -1.0}) {
        const double saved = x(k);
        x(k) = saved + sign * step;
        const double f = objective(x);
        if (f > fx) {
          fx = f;
          improved = true;
          break;  // keep the move
        }
        x(k) = saved;
      }
    }
    if (!improved) step *= shrink;
    trace.push_back(fx);
  }
  return PatternSearchResult{std::move(x), fx, std::move(trace)};
}

}  // namespace opspread
