#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "opspread/channels.hpp"
#include "opspread/random.hpp"

using namespace opspread;

namespace {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix swap_gate() {
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1;
  return s;
}

}  // namespace

TEST_CASE("from_kraus validation") {
  CHECK_NOTHROW(KrausChannel::from_kraus({Matrix::Identity(2, 2)}));

  const double inv = 1.0 / std::sqrt(2.0);
  CHECK_NOTHROW(KrausChannel::from_kraus({inv * pauli_x(), inv * pauli_z()}));

  CHECK_THROWS_AS(KrausChannel::from_kraus({0.5 * pauli_x()}), CompletenessError);
  CHECK_THROWS_AS(KrausChannel::from_kraus({}), DimensionError);
  CHECK_THROWS_AS(
      KrausChannel::from_kraus({Matrix::Identity(2, 2)}, std::make_pair(2, 2)),
      DimensionError);
}

TEST_CASE("unitary_channel basics and conjugation oracle") {
  CHECK_NOTHROW(unitary_channel(Matrix::Identity(3, 3)));
  Rng rng(3);
  CHECK_THROWS_AS(unitary_channel(ginibre(3, 3, rng)), UnitarityError);

  const Matrix u = haar_unitary(4, rng);
  const KrausChannel ch = unitary_channel(u);
  const DensityMatrix rho = random_density_matrix(4, rng);
  const Matrix expect = u * rho.matrix() * u.adjoint();
  CHECK(operator_norm(apply(ch, rho).matrix() - expect) < 1e-12);

  // SWAP exchanges marginals
  const KrausChannel swap = unitary_channel(swap_gate(), std::make_pair(2, 2));
  const DensityMatrix a = random_density_matrix(2, rng);
  const DensityMatrix b = random_density_matrix(2, rng);
  const DensityMatrix joint = validate_state(kron(a.matrix(), b.matrix()));
  const DensityMatrix out = apply(swap, joint);
  CHECK(operator_norm(partial_trace(out.matrix(), {2, 2}, {1}) - a.matrix()) < 1e-12);
  CHECK(operator_norm(partial_trace(out.matrix(), {2, 2}, {0}) - b.matrix()) < 1e-12);
}

TEST_CASE("product_channel structure and sequential-application oracle") {
  Rng rng(5);
  const KrausChannel ta = random_channel(2, 3, rng());
  const KrausChannel tb = random_channel(3, 2, rng());
  const KrausChannel prod = product_channel(ta, tb);
  CHECK(prod.kraus_ops().size() == ta.kraus_ops().size() * tb.kraus_ops().size());
  CHECK(prod.subsystem_dims() == std::make_pair(2, 3));

  const KrausChannel id2 = unitary_channel(Matrix::Identity(2, 2));
  const KrausChannel idid = product_channel(id2, id2);
  const DensityMatrix rho4 = random_density_matrix(4, rng);
  CHECK(operator_norm(apply(idid, rho4).matrix() - rho4.matrix()) < 1e-12);

  // on product inputs, apply factor-by-factor
  const DensityMatrix ra = random_density_matrix(2, rng);
  const DensityMatrix rb = random_density_matrix(3, rng);
  const DensityMatrix joint = validate_state(kron(ra.matrix(), rb.matrix()));
  const Matrix seq = kron(apply(ta, ra).matrix(), apply(tb, rb).matrix());
  CHECK(operator_norm(apply(prod, joint).matrix() - seq) < 1e-12);
}

TEST_CASE("apply: depolarizing fixture and trace audit") {
  // full depolarizer from the 4 normalized Pauli conjugations
  std::vector<Matrix> ops;
  for (const Matrix& p : {Matrix(Matrix::Identity(2, 2)), pauli_x(), pauli_y(), pauli_z()}) {
    ops.push_back(0.5 * p);
  }
  const KrausChannel depol = KrausChannel::from_kraus(std::move(ops));
  Rng rng(7);
  const DensityMatrix rho = random_density_matrix(2, rng);
  CHECK(operator_norm(apply(depol, rho).matrix() - 0.5 * Matrix::Identity(2, 2)) < 1e-12);

  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 3);
    const KrausChannel ch = random_channel(dim, 1 + static_cast<int>(rng() % 4), rng());
    const DensityMatrix in = random_density_matrix(dim, rng);
    const DensityMatrix out = apply(ch, in);
    CHECK(std::abs(out.matrix().trace().real() - 1.0) < 1e-10);
  }
}

TEST_CASE("adjoint_apply: unitality, unitary case, duality pairing") {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 3);
    const KrausChannel ch = random_channel(dim, 1 + static_cast<int>(rng() % 4), rng());
    CHECK(operator_norm(adjoint_apply(ch, Matrix::Identity(dim, dim)) -
                        Matrix::Identity(dim, dim)) < 1e-10);

    const Matrix o = ginibre(dim, dim, rng);
    const DensityMatrix rho = random_density_matrix(dim, rng);
    const Complex lhs = (apply(ch, rho).matrix() * o).trace();
    const Complex rhs = (rho.matrix() * adjoint_apply(ch, o)).trace();
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }

  const Matrix u = haar_unitary(3, rng);
  const KrausChannel ch = unitary_channel(u);
  const Matrix o = ginibre(3, 3, rng);
  CHECK(operator_norm(adjoint_apply(ch, o) - u.adjoint() * o * u) < 1e-12);
}

TEST_CASE("product channels keep B-local observables B-local in the Heisenberg picture") {
  Rng rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    const KrausChannel ta = random_channel(2, 2, rng());
    const KrausChannel tb = random_channel(3, 2, rng());
    const KrausChannel prod = product_channel(ta, tb);
    const Matrix ob = ginibre(3, 3, rng);
    const Matrix lhs = adjoint_apply(prod, kron(Matrix::Identity(2, 2), ob));
    const Matrix rhs = kron(Matrix::Identity(2, 2), adjoint_apply(tb, ob));
    CHECK(operator_norm(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("random_channel: dilation properties and determinism") {
  Rng rng(11);
  for (int s = 0; s < 100; ++s) {
    const KrausChannel ch = random_channel(3, 4, static_cast<std::uint64_t>(s));
    Matrix gram = Matrix::Zero(3, 3);
    for (const Matrix& k : ch.kraus_ops()) gram += k.adjoint() * k;
    CHECK(operator_norm(gram - Matrix::Identity(3, 3)) < 1e-10);
  }

  // env_dim = 1 gives a unitary channel
  const KrausChannel uch = random_channel(4, 1, 42);
  CHECK(uch.kraus_ops().size() == 1);
  CHECK(is_unitary(uch.kraus_ops()[0], 1e-10));

  const KrausChannel a = random_channel(3, 2, 123);
  const KrausChannel b = random_channel(3, 2, 123);
  for (size_t i = 0; i < a.kraus_ops().size(); ++i) {
    CHECK((a.kraus_ops()[i] - b.kraus_ops()[i]).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("choi_matrix: identity rank-1, PSD, trace = dim") {
  const KrausChannel id = unitary_channel(Matrix::Identity(3, 3));
  const ChoiMatrix choi = choi_matrix(id);
  CHECK(std::abs(choi.matrix.trace().real() - 3.0) < 1e-12);
  const RealVector sv = singular_values(choi.matrix);
  CHECK(sv(0) == doctest::Approx(3.0).epsilon(1e-12));  // unnormalized projector
  CHECK(sv(1) < 1e-10 * sv(0));

  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const KrausChannel ch = random_channel(3, 3, rng());
    const HermitianEigen eig = herm_eig(choi_matrix(ch).matrix);
    CHECK(eig.eigenvalues.minCoeff() > -1e-10);
    CHECK(std::abs(choi_matrix(ch).matrix.trace().real() - 3.0) < 1e-10);
  }
}

TEST_CASE("is_product: products, identity, SWAP") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const KrausChannel prod =
        product_channel(random_channel(2, 2, rng()), random_channel(2, 3, rng()));
    const ProductTest pt = is_product(prod);
    CHECK(pt.is_product);
    CHECK(pt.schmidt_values(1) < 1e-8 * pt.schmidt_values(0));
  }

  const KrausChannel id4 =
      unitary_channel(Matrix::Identity(4, 4), std::make_pair(2, 2));
  CHECK(is_product(id4).is_product);

  const KrausChannel swap = unitary_channel(swap_gate(), std::make_pair(2, 2));
  const ProductTest pt = is_product(swap);
  CHECK_FALSE(pt.is_product);
  // the reshuffled Choi operator of SWAP is a 16x16 permutation: all 16
  // singular values equal one
  CHECK(pt.schmidt_values.size() == 16);
  for (Eigen::Index i = 0; i < pt.schmidt_values.size(); ++i) {
    CHECK(pt.schmidt_values(i) == doctest::Approx(1.0).epsilon(1e-12));
  }

  const KrausChannel untagged = unitary_channel(swap_gate());
  CHECK_THROWS_AS(is_product(untagged), DimensionError);
}

TEST_CASE("serialization round-trips exactly") {
  Rng rng(19);
  const KrausChannel ch = random_channel(3, 4, rng());
  const KrausChannel tagged = product_channel(random_channel(2, 2, 7), random_channel(2, 2, 8));
  for (const KrausChannel* c : {&ch, &tagged}) {
    const KrausChannel back = channel_from_text(to_text(*c));
    CHECK(back.dim() == c->dim());
    CHECK(back.subsystem_dims() == c->subsystem_dims());
    REQUIRE(back.kraus_ops().size() == c->kraus_ops().size());
    for (size_t i = 0; i < back.kraus_ops().size(); ++i) {
      CHECK((back.kraus_ops()[i] - c->kraus_ops()[i]).cwiseAbs().maxCoeff() == 0.0);
    }
  }
  CHECK_THROWS_AS(channel_from_text("not a channel"), ParseError);
}
