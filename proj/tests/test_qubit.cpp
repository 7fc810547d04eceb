#include <doctest.h>

#include <cmath>

#include "coex/errors.hpp"
#include "support/random.hpp"

using namespace coex;
using namespace coex::testing;

namespace {

const double kRt2 = std::sqrt(2.0);

BlochEffect scaled_axis(double s, int axis) {
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
  a(axis) = s;
  return {s, a};
}

// 2(tr A tr B - tr AB) = αβ - a·b, computed without Bloch components.
double bracket_from_matrices(const Matrix2& a, const Matrix2& b) {
  return 2.0 * ((a.trace() * b.trace()).real() - (a * b).trace().real());
}

double c_reference(const BlochEffect& a, const BlochEffect& b) {
  const Matrix2 am = bloch_matrix(a);
  const Matrix2 bm = bloch_matrix(b);
  const Matrix2 ac = Matrix2::Identity() - am;
  const Matrix2 bc = Matrix2::Identity() - bm;
  auto br = bracket_from_matrices;
  const double rad = br(am, am) * br(ac, ac) * br(bm, bm) * br(bc, bc);
  return std::sqrt(std::max(0.0, rad)) - br(am, ac) * br(bm, bc) + br(am, bc) * br(ac, bm) +
         br(am, bm) * br(ac, bc);
}

}  // namespace

TEST_CASE("to_bloch / from_bloch: fixed examples") {
  const BlochEffect p = to_bloch(HermitianMatrix(Matrix(0.5 * (Matrix2::Identity() + pauli_z()))));
  CHECK(p.alpha == doctest::Approx(1.0));
  CHECK(p.a.isApprox(Eigen::Vector3d(0, 0, 1)));

  const BlochEffect id = to_bloch(HermitianMatrix::identity(2));
  CHECK(id.alpha == doctest::Approx(2.0));
  CHECK(id.a.norm() < 1e-15);

  const Matrix a1 = (1.0 / (2.0 * kRt2)) * (Matrix2::Identity() + pauli_z());
  const BlochEffect b1 = to_bloch(HermitianMatrix(a1));
  CHECK(std::abs(b1.alpha - 1.0 / kRt2) < 1e-15);
  CHECK(std::abs(b1.a(2) - 1.0 / kRt2) < 1e-15);
  CHECK(std::abs(b1.a(0)) + std::abs(b1.a(1)) < 1e-15);
}

TEST_CASE("to_bloch / from_bloch: errors") {
  CHECK_THROWS_AS(to_bloch(HermitianMatrix::identity(3)), Error);
  try {
    (void)make_bloch(0.5, {0.0, 0.0, 0.9});
    FAIL("expected NotAnEffect");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAnEffect);
  }
  CHECK_THROWS_AS(make_bloch(1.9, {0.0, 0.5, 0.0}), Error);
  CHECK_THROWS_AS(to_bloch(HermitianMatrix(Matrix(1.2 * Matrix2::Identity()))), Error);
  CHECK_FALSE((BlochEffect{0.5, {0.0, 0.0, 0.9}}).is_valid());
}

TEST_CASE("to_bloch / from_bloch: round trip") {
  Rng rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    const BlochEffect b = random_bloch(rng);
    const Effect e = from_bloch(b);
    CHECK(max_abs_diff(from_bloch(to_bloch(e)).matrix(), e.matrix()) < 1e-10);
    const BlochEffect back = to_bloch(e);
    CHECK(std::abs(back.alpha - b.alpha) < 1e-12);
    CHECK((back.a - b.a).norm() < 1e-12);
  }
}

TEST_CASE("bracket") {
  const BlochEffect p{1.0, {0.0, 0.6, 0.8}};
  CHECK(std::abs(bracket(p, p)) < 1e-15);
  const BlochEffect id{2.0, Eigen::Vector3d::Zero()};
  CHECK(bracket(id, id) == 4.0);
  const BlochEffect a1{1.0 / kRt2, {0.0, 0.0, 1.0 / kRt2}};
  const BlochEffect b1{1.0 / kRt2, {1.0 / kRt2, 0.0, 0.0}};
  CHECK(std::abs(bracket(a1, b1) - 0.5) < 1e-15);

  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const BlochEffect a = random_bloch(rng);
    const BlochEffect b = random_bloch(rng);
    CHECK(std::abs(bracket(a, b) - bracket_from_matrices(bloch_matrix(a), bloch_matrix(b))) < 1e-12);
    CHECK(bracket(a, a) >= -1e-15);
  }
}

TEST_CASE("c_function: fixed examples") {
  const BlochEffect half{1.0, Eigen::Vector3d::Zero()};
  CHECK(std::abs(c_function(half, half) - 2.0) < 1e-15);

  const BlochEffect a1{1.0 / kRt2, {0.0, 0.0, 1.0 / kRt2}};
  const BlochEffect b1{1.0 / kRt2, {1.0 / kRt2, 0.0, 0.0}};
  CHECK(c_function(a1, b1) < 0.0);

  const double s = 2.0 - kRt2;
  CHECK(std::abs(c_function(scaled_axis(s, 0), scaled_axis(s, 1))) < 1e-9);
  // Closed form along the scaled family: 2s²[(2 - s)² - 2].
  for (double x : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
    CHECK(std::abs(c_function(scaled_axis(x, 0), scaled_axis(x, 1)) - 2 * x * x * ((2 - x) * (2 - x) - 2)) <
          1e-14);
  }
}

TEST_CASE("c_function: negative radicand signals invalid input") {
  const BlochEffect bad{0.5, {0.0, 0.0, 0.9}};
  const BlochEffect ok{1.0, Eigen::Vector3d::Zero()};
  try {
    (void)c_function(bad, ok);
    FAIL("expected NegativeRadicand");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NegativeRadicand);
  }
}

TEST_CASE("c_function: matches matrix-based evaluation") {
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const BlochEffect a = random_bloch(rng);
    const BlochEffect b = random_bloch(rng);
    CHECK(std::abs(c_function(a, b) - c_reference(a, b)) < 1e-12);
  }
}

TEST_CASE("c_function: symmetry is exact, complement invariance to 1e-12") {
  Rng rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const BlochEffect a = random_bloch(rng);
    const BlochEffect b = random_bloch(rng);
    const double c = c_function(a, b);
    CHECK(c_function(b, a) == c);
    CHECK(std::abs(c_function(a.complement(), b) - c) <= 1e-12);
    CHECK(std::abs(c_function(a, b.complement()) - c) <= 1e-12);
    CHECK(std::abs(c_function(a.complement(), b.complement()) - c) <= 1e-12);
  }
}

TEST_CASE("qubit_coexistent: fixed examples") {
  const double x = 1.0 / kRt2;
  const BlochEffect a{1.0, {0.0, 0.0, x}};
  const BlochEffect b{1.0, {x, 0.0, 0.0}};
  CHECK(std::abs(c_function_unbiased(a, b)) < 1e-15);
  CHECK(qubit_coexistent(a, b));
  CHECK(qubit_decision(a, b) == Decision::borderline);

  const BlochEffect a1{x, {0.0, 0.0, x}};
  const BlochEffect b1{x, {x, 0.0, 0.0}};
  CHECK_FALSE(qubit_coexistent(a1, b1));
  CHECK(qubit_decision(a1, b1) == Decision::not_coexistent);

  // c vanishes identically when one effect is 0 or 1; such pairs commute.
  const BlochEffect zero{0.0, Eigen::Vector3d::Zero()};
  CHECK(c_function(zero, b1) == 0.0);
  CHECK(qubit_decision(zero, b1) == Decision::coexistent);
  CHECK(qubit_decision(b1, zero.complement()) == Decision::coexistent);
  CHECK(bloch_commute(a, BlochEffect{0.5, {0.0, 0.0, 0.1}}));
  CHECK_FALSE(bloch_commute(a, b));

  // Commuting: parallel Bloch vectors.
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::Vector3d n(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
    n.normalize();
    const double r1 = uniform(rng, -1, 1);
    const double r2 = uniform(rng, -1, 1);
    const BlochEffect p{uniform(rng, std::abs(r1), 2 - std::abs(r1)), r1 * n};
    const BlochEffect q{uniform(rng, std::abs(r2), 2 - std::abs(r2)), r2 * n};
    CHECK(qubit_coexistent(p, q));
  }
}

TEST_CASE("c_function_rank1: agrees on scaled projections") {
  for (double s : {0.0, 0.2, 0.5, 2.0 - kRt2, 0.8, 1.0}) {
    for (double t : {0.1, 0.4, 0.7, 1.0}) {
      const BlochEffect a = scaled_axis(s, 0);
      const BlochEffect b = scaled_axis(t, 1);
      CHECK(std::abs(c_function_rank1(a, b) - c_function(a, b)) < 1e-12);
    }
  }
  // Rank-1 effects r·P, and complements of rank-1 effects. Here ⟨A|A⟩ = 0
  // holds only up to rounding and the square root in the full formula
  // lifts that to about √ε, so agreement is checked at 1e-7.
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::Vector3d n(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
    n.normalize();
    const double r = uniform(rng);
    const BlochEffect rank1{r, r * n};
    const BlochEffect other = random_bloch(rng);
    CHECK(std::abs(c_function_rank1(rank1, other) - c_function(rank1, other)) < 1e-7);
    CHECK(std::abs(c_function_rank1(other, rank1.complement()) - c_function(other, rank1.complement())) <
          1e-7);
  }
  try {
    (void)c_function_rank1(BlochEffect{1.0, {0.0, 0.0, 0.5}}, BlochEffect{1.0, {0.5, 0.0, 0.0}});
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionViolated);
  }
}

TEST_CASE("c_function_unbiased: agrees and reproduces the perpendicular boundary") {
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const BlochEffect a = random_unbiased_bloch(rng);
    const BlochEffect b = random_unbiased_bloch(rng);
    CHECK(std::abs(c_function_unbiased(a, b) - c_function(a, b)) < 1e-12);
  }
  // a ⊥ b: c = 2 - 2‖a‖² - 2‖b‖², zero on ‖a‖² + ‖b‖² = 1.
  for (int trial = 0; trial < 200; ++trial) {
    const double phi = uniform(rng, 0, 2 * M_PI);
    const double ra = uniform(rng);
    const double rb = uniform(rng);
    const BlochEffect a{1.0, {ra * std::cos(phi), ra * std::sin(phi), 0.0}};
    const BlochEffect b{1.0, {0.0, 0.0, rb}};
    CHECK(std::abs(c_function_unbiased(a, b) - (2 - 2 * ra * ra - 2 * rb * rb)) < 1e-13);
    const double rb_edge = std::sqrt(1 - ra * ra);
    const BlochEffect edge{1.0, {0.0, 0.0, rb_edge}};
    CHECK(std::abs(c_function(a, edge)) < 1e-12);
  }
  CHECK_THROWS_AS(c_function_unbiased(BlochEffect{0.9, {0.0, 0.0, 0.1}}, BlochEffect{1.0, {0.0, 0.0, 0.1}}),
                  Error);
}

TEST_CASE("decide") {
  CHECK(decide(1e-3, 1e-9) == Decision::coexistent);
  CHECK(decide(-1e-3, 1e-9) == Decision::not_coexistent);
  CHECK(decide(1e-10, 1e-9) == Decision::borderline);
  CHECK(decide(-1e-10, 1e-9) == Decision::borderline);
}
