#include <doctest.h>

#include <cmath>

#include "coex/errors.hpp"
#include "coex/families.hpp"
#include "coex/halmos.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace coex;
using namespace coex::testing;

namespace {

double recon_tol(const HermitianMatrix& m) { return 1e-10 * (1.0 + spectral_norm(m)); }

}  // namespace

TEST_CASE("eig_hermitian: Pauli z and identity") {
  const auto sz = eig_hermitian(HermitianMatrix(pauli_z()));
  CHECK(sz.values(0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(sz.values(1) == doctest::Approx(1.0).epsilon(1e-15));

  const auto id = eig_hermitian(HermitianMatrix::identity(3));
  for (int j = 0; j < 3; ++j) CHECK(std::abs(id.values(j) - 1.0) < 1e-14);
}

TEST_CASE("eig_hermitian: compression of P1 P2 P1 to the first basis vector of the C3 pair") {
  const ProjectionPair pp = dim3_pair();
  const Matrix h = pp.p1.matrix() * pp.p2.matrix() * pp.p1.matrix();
  const HermitianMatrix h0(h.topLeftCorner(1, 1));
  CHECK(std::abs(eig_hermitian(h0).values(0) - 1.0 / 3.0) < 1e-14);
  // The full operator has spectrum {0, 0, 1/3}.
  const auto full = eig_hermitian(HermitianMatrix(h));
  CHECK(std::abs(full.values(2) - 1.0 / 3.0) < 1e-14);
  CHECK(std::abs(full.values(0)) < 1e-14);
}

TEST_CASE("eig_hermitian: rejects asymmetric input at construction") {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = 0.5;
  CHECK_THROWS_AS(HermitianMatrix{m}, Error);
  try {
    HermitianMatrix bad(m);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonHermitian);
    CHECK(e.value() > 0.1);
  }
  CHECK_THROWS_AS(HermitianMatrix(Matrix::Zero(2, 3)), Error);
}

TEST_CASE("eig_hermitian: round trip, ordering and orthonormality on random matrices") {
  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index dim = uniform_int(rng, 1, 10);
    const HermitianMatrix m = random_hermitian(rng, dim, uniform(rng, 0.01, 10.0));
    const SpectralDecomposition sd = eig_hermitian(m);
    for (Eigen::Index j = 1; j < dim; ++j) CHECK(sd.values(j - 1) <= sd.values(j));
    CHECK(max_abs_diff(sd.vectors.adjoint() * sd.vectors, Matrix::Identity(dim, dim)) < 1e-10);
    CHECK(max_abs_diff(sd.reconstruct(), m.matrix()) <= recon_tol(m));
    CHECK(std::abs(min_eigenvalue(m) - min_eig_reference(m.matrix())) <= recon_tol(m));
  }
}

TEST_CASE("eig_hermitian: 2x2 closed form on nearly degenerate and diagonal inputs") {
  Matrix m(2, 2);
  m << 1.0, Complex(1e-13, 1e-13), Complex(1e-13, -1e-13), 1.0;
  const HermitianMatrix h(m);
  const auto sd = eig_hermitian(h);
  CHECK(max_abs_diff(sd.reconstruct(), m) < 1e-15);
  CHECK(max_abs_diff(sd.vectors.adjoint() * sd.vectors, Matrix::Identity(2, 2)) < 1e-14);

  Matrix d(2, 2);
  d << 3.0, 0.0, 0.0, -2.0;
  const auto sd2 = eig_hermitian(HermitianMatrix(d));
  CHECK(sd2.values(0) == -2.0);
  CHECK(sd2.values(1) == 3.0);
  CHECK(max_abs_diff(sd2.reconstruct(), d) == 0.0);
}

TEST_CASE("is_psd") {
  CHECK(is_psd(HermitianMatrix::identity(3), 1e-10));
  CHECK_FALSE(is_psd(-HermitianMatrix::identity(3), 1e-10));

  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index dim = uniform_int(rng, 2, 8);
    const auto pp = random_projection_pair(rng, dim);
    const HermitianMatrix c = central_element(pp.p1, pp.p2);
    CHECK(is_psd(c, 1e-10));
    CHECK(is_psd(HermitianMatrix::identity(dim) - c, 1e-10));
  }
}

TEST_CASE("is_psd: closed under addition") {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index dim = uniform_int(rng, 1, 8);
    const Matrix x = random_complex(rng, dim, dim);
    const Matrix y = random_complex(rng, dim, uniform_int(rng, 1, static_cast<int>(dim)));
    const HermitianMatrix a = HermitianMatrix::symmetrized(x * x.adjoint());
    const HermitianMatrix b = HermitianMatrix::symmetrized(y * y.adjoint());
    REQUIRE(is_psd(a, 1e-10));
    REQUIRE(is_psd(b, 1e-10));
    CHECK(is_psd(a + b, 1e-10));
  }
}

TEST_CASE("abs_op: fixed examples") {
  CHECK(max_abs_diff(abs_op(HermitianMatrix(pauli_z())).matrix(), Matrix::Identity(2, 2)) < 1e-15);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = -2.0;
  d(1, 1) = 3.0;
  Matrix expect = Matrix::Zero(2, 2);
  expect(0, 0) = 2.0;
  expect(1, 1) = 3.0;
  CHECK(max_abs_diff(abs_op(HermitianMatrix(d)).matrix(), expect) < 1e-15);
}

TEST_CASE("abs_op: matches Denman-Beavers square root of the square") {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const HermitianMatrix a = random_hermitian(rng, 4);
    const HermitianMatrix b = random_hermitian(rng, 4);
    const HermitianMatrix diff = a - b;
    const Matrix ref = sqrt_pd(diff.matrix() * diff.matrix());
    CHECK(max_abs_diff(abs_op(diff).matrix(), ref) < 1e-9);
  }
}

TEST_CASE("abs_op: square equals the square of the argument, result PSD") {
  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index dim = uniform_int(rng, 2, 8);
    const HermitianMatrix m = random_hermitian(rng, dim);
    const HermitianMatrix a = abs_op(m);
    const Matrix m2 = m.matrix() * m.matrix();
    CHECK(max_abs_diff(a.matrix() * a.matrix(), m2) <= 1e-10 * (1.0 + m2.cwiseAbs().maxCoeff()));
    CHECK(is_psd(a, 1e-12));
  }
}

TEST_CASE("apply_spectral: complement of a projection, arccos on H, polynomial") {
  Rng rng(31);
  const HermitianMatrix p = random_projection(rng, 5, 2);
  const HermitianMatrix q = apply_spectral(p, [](double x) { return 1.0 - x; });
  CHECK(max_abs_diff(q.matrix(), (HermitianMatrix::identity(5) - p).matrix()) < 1e-12);

  Matrix h(1, 1);
  h(0, 0) = 1.0 / 3.0;
  const HermitianMatrix theta = apply_spectral(HermitianMatrix(h), [](double x) { return std::acos(2 * x - 1); });
  CHECK(std::abs(theta(0, 0).real() - std::acos(-1.0 / 3.0)) < 1e-15);

  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index dim = uniform_int(rng, 2, 8);
    const auto pp = random_projection_pair(rng, dim);
    const HermitianMatrix c = central_element(pp.p1, pp.p2);
    const HermitianMatrix c2 = apply_spectral(c, [](double x) { return x * x; });
    CHECK(max_abs_diff(c2.matrix(), c.matrix() * c.matrix()) < 1e-10);
  }
}

TEST_CASE("apply_spectral: identity function reproduces the matrix") {
  Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const HermitianMatrix m = random_hermitian(rng, uniform_int(rng, 1, 9));
    CHECK(max_abs_diff(apply_spectral(m, [](double x) { return x; }).matrix(), m.matrix()) <= recon_tol(m));
  }
}

TEST_CASE("cluster_eigenvalues groups by gap") {
  RealVector v(5);
  v << 0.0, 1e-12, 0.5, 0.5 + 5e-9, 1.0;
  const auto groups = cluster_eigenvalues(v, 1e-8);
  REQUIRE(groups.size() == 3);
  CHECK(groups[0] == std::make_pair(Eigen::Index{0}, Eigen::Index{2}));
  CHECK(groups[1] == std::make_pair(Eigen::Index{2}, Eigen::Index{4}));
  CHECK(groups[2] == std::make_pair(Eigen::Index{4}, Eigen::Index{5}));
  CHECK(cluster_eigenvalues(RealVector(0), 1e-8).empty());
}

TEST_CASE("arithmetic helpers keep hermiticity") {
  Rng rng(41);
  const HermitianMatrix a = random_hermitian(rng, 4);
  const HermitianMatrix b = random_hermitian(rng, 4);
  CHECK(hermiticity_defect(anticommutator(a, b).matrix()) == 0.0);
  CHECK(hermiticity_defect(sandwich(a, b).matrix()) == 0.0);
  CHECK(max_abs_diff(sandwich(a, b).matrix(), a.matrix() * b.matrix() * a.matrix()) < 1e-12);
  CHECK_THROWS_AS(max_abs_diff(Matrix::Zero(2, 2), Matrix::Zero(3, 3)), Error);
}
