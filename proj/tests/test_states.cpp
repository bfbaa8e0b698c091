#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "opspread/random.hpp"
#include "opspread/states.hpp"
#include "oracles.hpp"

using namespace opspread;

namespace {

DensityMatrix diag_state(std::initializer_list<double> diag) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(diag.size()),
                          static_cast<Eigen::Index>(diag.size()));
  int i = 0;
  for (double d : diag) m(i, i) = d, ++i;
  return validate_state(m);
}

}  // namespace

TEST_CASE("validate_state accepts and rejects with distinct errors") {
  CHECK_NOTHROW(validate_state(Matrix::Identity(2, 2) * 0.5));

  Matrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(validate_state(neg), PositivityError);

  Matrix bad_trace(2, 2);
  bad_trace << 0.6, 0, 0, 0.6;
  CHECK_THROWS_AS(validate_state(bad_trace), TraceError);

  Rng rng(3);
  CHECK_THROWS_AS(validate_state(ginibre(2, 2, rng)), HermiticityError);
}

TEST_CASE("validate_state stores the symmetrized input") {
  Matrix almost(2, 2);
  almost << 0.5, Complex(0.1, 1e-12), Complex(0.1, 1e-12), 0.5;
  const DensityMatrix rho = validate_state(almost);
  CHECK(operator_norm(rho.matrix() - rho.matrix().adjoint()) == 0.0);
}

TEST_CASE("von Neumann entropy closed forms") {
  Rng rng(5);
  const DensityMatrix pure = random_pure_state(4, rng);
  CHECK(von_neumann_entropy(pure) == doctest::Approx(0.0).epsilon(1e-10));

  CHECK(von_neumann_entropy(diag_state({0.5, 0.5})) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));

  const double expect = -(oracles::xlogx(0.25) + oracles::xlogx(0.75));
  CHECK(von_neumann_entropy(diag_state({0.25, 0.75})) ==
        doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("entropy range and unitary invariance") {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 4);
    const DensityMatrix rho = random_density_matrix(dim, rng);
    const double s = von_neumann_entropy(rho);
    CHECK(s >= 0.0);
    CHECK(s <= std::log(static_cast<double>(dim)) + 1e-12);
    const Matrix u = haar_unitary(dim, rng);
    const DensityMatrix rotated = validate_state(u * rho.matrix() * u.adjoint());
    CHECK(std::abs(von_neumann_entropy(rotated) - s) < 1e-10);
  }
}

TEST_CASE("relative entropy closed forms and support convention") {
  const DensityMatrix ket0 = diag_state({1.0, 0.0});
  const DensityMatrix ket1 = diag_state({0.0, 1.0});
  const DensityMatrix mixed = diag_state({0.5, 0.5});

  Rng rng(9);
  const DensityMatrix rho = random_density_matrix(3, rng);
  CHECK(relative_entropy(rho, rho) == doctest::Approx(0.0).epsilon(1e-11));

  CHECK(relative_entropy(ket0, mixed) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(std::isinf(relative_entropy(ket0, ket1)));
}

TEST_CASE("Pinsker inequality on random pairs") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 3);
    const DensityMatrix a = random_density_matrix(dim, rng);
    const DensityMatrix b = random_density_matrix(dim, rng);
    const double rel = relative_entropy(a, b);
    if (!std::isfinite(rel)) continue;
    const double t = trace_distance(a, b);
    CHECK(rel >= 2.0 * t * t - 1e-10);
  }
}

TEST_CASE("trace distance examples and metric properties") {
  const DensityMatrix ket0 = diag_state({1.0, 0.0});
  const DensityMatrix ket1 = diag_state({0.0, 1.0});
  CHECK(trace_distance(ket0, ket1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(trace_distance(ket0, ket0) == 0.0);
  CHECK(trace_distance(diag_state({0.8, 0.2}), diag_state({0.6, 0.4})) ==
        doctest::Approx(0.2).epsilon(1e-13));

  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 3);
    const DensityMatrix a = random_density_matrix(dim, rng);
    const DensityMatrix b = random_density_matrix(dim, rng);
    const DensityMatrix c = random_density_matrix(dim, rng);
    CHECK(trace_distance(a, b) == trace_distance(b, a));
    CHECK(trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-12);
    CHECK(trace_distance(a, b) <= 1.0 + 1e-12);
  }
}

TEST_CASE("skew divergence examples") {
  Rng rng(17);
  const DensityMatrix rho = random_density_matrix(3, rng);
  for (double lam : {0.1, 0.5, 0.9}) {
    CHECK(skew_divergence(rho, rho, lam) == doctest::Approx(0.0).epsilon(1e-10));
  }

  const DensityMatrix ket0 = diag_state({1.0, 0.0});
  const DensityMatrix ket1 = diag_state({0.0, 1.0});
  for (double lam : {0.2, 0.5, 0.8}) {
    CHECK(skew_divergence(ket0, ket1, lam) == doctest::Approx(1.0).epsilon(1e-12));
  }

  // compose-from-parts oracle at lambda = 0.3
  const DensityMatrix a = random_density_matrix(2, rng);
  const DensityMatrix b = random_density_matrix(2, rng);
  const double lam = 0.3;
  const DensityMatrix mix = validate_state(lam * a.matrix() + (1 - lam) * b.matrix());
  const double direct = relative_entropy(a, mix) / (-std::log(lam));
  CHECK(skew_divergence(a, b, lam) == doctest::Approx(direct).epsilon(1e-13));

  CHECK_THROWS_AS(skew_divergence(a, b, 0.0), DomainError);
  CHECK_THROWS_AS(skew_divergence(a, b, 1.0), DomainError);
}

TEST_CASE("skew divergence sandwich over randomized pairs") {
  // 2(1-l)^2/(-log l) T^2 <= S_l <= T across dims {2,3,4,6}
  Rng rng(19);
  const int dims[] = {2, 3, 4, 6};
  int evaluations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = dims[trial % 4];
    const DensityMatrix a = random_density_matrix(dim, rng);
    const DensityMatrix b = random_density_matrix(dim, rng);
    const double t = trace_distance(a, b);
    for (double lam : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double s = skew_divergence(a, b, lam);
      const double lo = 2.0 * (1 - lam) * (1 - lam) / (-std::log(lam)) * t * t;
      CHECK(s >= lo - 1e-10);
      CHECK(s <= t + 1e-10);
      ++evaluations;
    }
  }
  CHECK(evaluations == 5000);
}

TEST_CASE("shannon entropy and the diagonal-state equivalence") {
  const ProbabilityVector half = ProbabilityVector::validate({0.5, 0.5});
  CHECK(shannon_entropy(half) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(shannon_entropy(ProbabilityVector::validate({1.0, 0.0})) == 0.0);

  const ProbabilityVector p = ProbabilityVector::validate({0.25, 0.75});
  CHECK(shannon_entropy(p) ==
        doctest::Approx(von_neumann_entropy(diag_state({0.25, 0.75}))).epsilon(1e-13));
}

TEST_CASE("probability vector validation") {
  CHECK_THROWS_AS(ProbabilityVector::validate({0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(ProbabilityVector::validate({1.2, -0.2}), DomainError);
  CHECK_THROWS_AS(ProbabilityVector::validate({}), DimensionError);
}
