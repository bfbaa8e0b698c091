#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "opspread/optimize.hpp"
#include "opspread/random.hpp"

using namespace opspread;

namespace {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix swap_gate() {
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1;
  return s;
}

Matrix cnot_gate() {
  Matrix c = Matrix::Zero(4, 4);
  c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1;
  return c;
}

DensityMatrix basis_state(int dim) {
  Matrix m = Matrix::Zero(dim, dim);
  m(0, 0) = 1.0;
  return validate_state(m);
}

OptimizerConfig quick_cfg() {
  OptimizerConfig cfg;
  cfg.restarts = 8;
  cfg.max_iters = 120;
  cfg.init_step = 0.6;
  cfg.shrink = 0.5;
  cfg.tol = 1e-4;
  cfg.seed = 1;
  return cfg;
}

}  // namespace

TEST_CASE("hermitian basis is orthonormal and complete") {
  for (int dim : {2, 3, 4}) {
    const std::vector<Matrix> basis = hermitian_basis(dim);
    REQUIRE(static_cast<int>(basis.size()) == dim * dim);
    for (size_t a = 0; a < basis.size(); ++a) {
      CHECK(operator_norm(basis[a] - basis[a].adjoint()) < 1e-14);
      for (size_t b = 0; b < basis.size(); ++b) {
        const double expect = a == b ? 1.0 : 0.0;
        CHECK(std::abs((basis[a] * basis[b]).trace().real() - expect) < 1e-13);
      }
    }
  }
}

TEST_CASE("unitary_from_params: identity, unitarity, analytic exponential") {
  const UnitaryParams zero{3, Eigen::VectorXd::Zero(9)};
  CHECK(operator_norm(unitary_from_params(zero) - Matrix::Identity(3, 3)) < 1e-14);

  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd theta(4);
    for (int k = 0; k < 4; ++k) theta(k) = (2.0 * uniform_real(rng) - 1.0) * M_PI;
    const Matrix u = unitary_from_params(UnitaryParams{2, theta});
    CHECK(operator_norm(u.adjoint() * u - Matrix::Identity(2, 2)) < 1e-10);
  }

  // the X basis element is X/sqrt(2); coefficient sqrt(2)·(pi/2) gives
  // exp(i (pi/2) X) = iX
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(4);
  theta(1) = std::sqrt(2.0) * M_PI / 2.0;  // basis order: I/√2, sym(0,1), asym(0,1), diag
  const Matrix u = unitary_from_params(UnitaryParams{2, theta});
  const Matrix expect = Complex(0, 1) * pauli_x();
  CHECK(operator_norm(u - expect) < 1e-12);

  CHECK_THROWS_AS(unitary_from_params(UnitaryParams{3, theta}), DimensionError);
}

TEST_CASE("pattern search maximizes a smooth concave objective") {
  auto objective = [](const Eigen::VectorXd& x) {
    return -(x(0) - 1.5) * (x(0) - 1.5) - 2.0 * (x(1) + 0.5) * (x(1) + 0.5);
  };
  const PatternSearchResult res =
      pattern_search(objective, Eigen::VectorXd::Zero(2), 200, 0.5, 0.5, 1e-6);
  CHECK(res.value > -1e-6);
  CHECK(std::abs(res.x(0) - 1.5) < 1e-3);
  CHECK(std::abs(res.x(1) + 0.5) < 1e-3);
  for (size_t k = 1; k < res.trace.size(); ++k) CHECK(res.trace[k] >= res.trace[k - 1]);
}

TEST_CASE("maximize_holevo: product channel stays at zero") {
  Rng rng(5);
  const KrausChannel prod =
      product_channel(random_channel(2, 2, rng()), random_channel(2, 2, rng()));
  OptimizerConfig cfg = quick_cfg();
  cfg.restarts = 3;
  cfg.max_iters = 40;
  const OptimizeResult res =
      maximize_holevo(prod, random_density_matrix(4, rng),
                      2, ProbabilityVector::validate({0.5, 0.5}), 2, 2, cfg);
  CHECK(res.value <= 1e-9);
}

TEST_CASE("maximize_holevo reaches ln 2 on SWAP and CNOT") {
  const ProbabilityVector uniform = ProbabilityVector::validate({0.5, 0.5});
  const double ln2 = std::log(2.0);
  for (const Matrix& gate : {swap_gate(), cnot_gate()}) {
    const KrausChannel ch = unitary_channel(gate, std::make_pair(2, 2));
    const OptimizeResult res =
        maximize_holevo(ch, basis_state(4), 2, uniform, 2, 2, quick_cfg());
    CHECK(res.value >= ln2 - 1e-3);
    CHECK(res.value <= ln2 + 1e-9);  // log d_B ceiling
  }
}

TEST_CASE("maximize_holevo invariants: ceilings, determinism, fresh evaluation") {
  Rng rng(7);
  const KrausChannel ch = random_channel(4, 4, rng());
  const DensityMatrix rho0 = random_density_matrix(4, rng);
  const ProbabilityVector probs = ProbabilityVector::validate({0.3, 0.7});
  OptimizerConfig cfg = quick_cfg();
  cfg.restarts = 4;
  cfg.max_iters = 80;

  const OptimizeResult a = maximize_holevo(ch, rho0, 2, probs, 2, 2, cfg);
  const OptimizeResult b = maximize_holevo(ch, rho0, 2, probs, 2, 2, cfg);

  CHECK(a.value <= std::min(shannon_entropy(probs), std::log(2.0)) + 1e-9);
  REQUIRE(a.best.size() == b.best.size());
  for (int i = 0; i < a.best.size(); ++i) {
    CHECK((a.best.unitaries()[static_cast<size_t>(i)] -
           b.best.unitaries()[static_cast<size_t>(i)])
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }

  const double fresh = holevo_information(output_states(ch, rho0, a.best, 2, 2));
  CHECK(std::abs(fresh - a.value) < 1e-12);

  for (const auto& restart_trace : a.trace) {
    for (size_t k = 1; k < restart_trace.size(); ++k) {
      CHECK(restart_trace[k] >= restart_trace[k - 1]);
    }
  }

  const std::string csv = trace_to_csv(a.trace);
  CHECK(csv.rfind("restart,iter,best_value\n", 0) == 0);
  size_t rows = 0;
  for (const auto& restart_trace : a.trace) rows += restart_trace.size();
  CHECK(static_cast<size_t>(std::count(csv.begin(), csv.end(), '\n')) == rows + 1);
}

TEST_CASE("positivity_witness separates product from non-product") {
  Rng rng(11);
  const KrausChannel prod =
      product_channel(random_channel(2, 2, rng()), random_channel(2, 2, rng()));
  OptimizerConfig cfg = quick_cfg();
  cfg.restarts = 3;
  cfg.max_iters = 40;
  const WitnessResult none =
      positivity_witness(prod, random_density_matrix(4, rng), 2, 2, cfg);
  CHECK_FALSE(none.found);

  const KrausChannel swap = unitary_channel(swap_gate(), std::make_pair(2, 2));
  const WitnessResult hit = positivity_witness(swap, basis_state(4), 2, 2, quick_cfg());
  CHECK(hit.found);
  CHECK(hit.value == doctest::Approx(std::log(2.0)).epsilon(1e-3));
}
