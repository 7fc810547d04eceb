#include "coex/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "coex/errors.hpp"

namespace coex {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianMatrix rank_one(const Vector& v) { return HermitianMatrix::symmetrized(v * v.adjoint()); }

HermitianMatrix qubit_projection(double nx, double ny, double nz) {
  return HermitianMatrix::symmetrized(
      0.5 * (Matrix2::Identity() + nx * pauli_x() + ny * pauli_y() + nz * pauli_z()));
}

ProjectionPair dim3_pair() {
  Vector psi1 = Vector::Zero(3);
  psi1(0) = 1.0;
  const Vector phi = Vector::Constant(3, 1.0 / std::sqrt(3.0));
  return {rank_one(psi1), rank_one(phi)};
}

ProjectionPair fourier_pair() {
  const Eigen::Index n = 4;
  Matrix f(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double ang = 2.0 * std::numbers::pi * static_cast<double>(j * k) / static_cast<double>(n);
      f(j, k) = std::polar(0.5, -ang);
    }
  }
  Matrix p1 = Matrix::Zero(n, n);
  p1(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  return {HermitianMatrix::symmetrized(p1), HermitianMatrix::symmetrized(f * p1 * f.adjoint())};
}

ProjectionPair rank1_pair(double overlap, int copies) {
  if (!(overlap >= 0.0 && overlap <= 1.0)) throw Error(ErrorKind::InvalidRange, "overlap must lie in [0, 1]", overlap);
  if (copies < 1) throw Error(ErrorKind::InvalidRange, "copy count must be positive", copies);
  Vector psi1(2), psi2(2);
  psi1 << 1.0, 0.0;
  psi2 << overlap, std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
  Matrix v1 = psi1, v2 = psi2;
  for (int c = 1; c < copies; ++c) {
    v1 = kron(v1, psi1);
    v2 = kron(v2, psi2);
  }
  return {rank_one(v1.col(0)), rank_one(v2.col(0))};
}

double dim3_s_max() { return (3.0 - std::sqrt(3.0)) / 2.0; }
double dim3_t_max() { return 3.0 - std::sqrt(6.0); }

double dim3_boundary(double s, double t) {
  const double rad = 2.0 * (2.0 * s * s - 6.0 * s + 3.0) * (t * t - 6.0 * t + 3.0);
  return std::sqrt(std::max(0.0, rad)) + 16.0 * s * t - 12.0 * s - 15.0 * t + 9.0;
}

double dim4_t_threshold() { return 8.0 * (3.0 - 2.0 * std::sqrt(2.0)) / 7.0; }

double dim4_boundary(double s, double t) {
  double best = std::numeric_limits<double>::infinity();
  for (double ang : {std::numbers::pi / 8.0, 3.0 * std::numbers::pi / 8.0}) {
    const double h = std::cos(ang) * std::cos(ang);
    if (s <= 0.0 || t <= 0.0) continue;
    best = std::min(best, (1.0 - s * h) * (1.0 - t * h) / (s * t * h * h) - h);
  }
  return best;
}

double rank1_boundary(double s, double t, double overlap, int copies) {
  const double sn = std::pow(s, copies);
  const double tn = std::pow(t, copies);
  if (sn <= 0.0 || tn <= 0.0) return std::numeric_limits<double>::infinity();
  return (1.0 - sn) * (1.0 - tn) / (sn * tn) - std::pow(overlap, 2 * copies);
}

}  // namespace coex
