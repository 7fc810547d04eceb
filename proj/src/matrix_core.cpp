#include "coex/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "coex/errors.hpp"

namespace coex {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NotAnEffect: return "NotAnEffect";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NegativeRadicand: return "NegativeRadicand";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NotAProjection: return "NotAProjection";
    case ErrorKind::DegenerateAngle: return "DegenerateAngle";
    case ErrorKind::NotInAlgebra: return "NotInAlgebra";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::RankViolation: return "RankViolation";
    case ErrorKind::InvalidRange: return "InvalidRange";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what, double value)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), value_(value) {}

Error::Error(ErrorKind kind, const std::string& what)
    : Error(kind, what, std::numeric_limits<double>::quiet_NaN()) {}

Tolerances& default_tolerances() {
  static Tolerances tol;
  return tol;
}

double hermiticity_defect(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

HermitianMatrix::HermitianMatrix(const Matrix& m) : HermitianMatrix(m, default_tolerances().herm) {}

HermitianMatrix::HermitianMatrix(const Matrix& m, double tol_herm) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
  }
  const double defect = hermiticity_defect(m);
  if (!(defect <= tol_herm)) {
    std::ostringstream os;
    os << "symmetry defect " << defect << " exceeds " << tol_herm;
    throw Error(ErrorKind::NonHermitian, os.str(), defect);
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
  return symmetrized(Matrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index dim) { return symmetrized(Matrix::Zero(dim, dim)); }

HermitianMatrix HermitianMatrix::symmetrized(const Matrix& m) {
  HermitianMatrix h;
  h.m_ = 0.5 * (m + m.adjoint());
  return h;
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& o) {
  if (o.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "operand dimensions differ");
  m_ += o.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& o) {
  if (o.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "operand dimensions differ");
  m_ -= o.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
HermitianMatrix operator-(const HermitianMatrix& a) { return -1.0 * a; }
HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }

HermitianMatrix anticommutator(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "operand dimensions differ");
  return HermitianMatrix::symmetrized(a.matrix() * b.matrix() + b.matrix() * a.matrix());
}

HermitianMatrix sandwich(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "operand dimensions differ");
  return HermitianMatrix::symmetrized(a.matrix() * b.matrix() * a.matrix());
}

Matrix SpectralDecomposition::reconstruct() const {
  return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
}

namespace {

// M = mean·1 + x σx + y σy + z σz with eigenvalues mean ∓ r.
SpectralDecomposition eig_hermitian_2x2(const Matrix& m) {
  const double mean = 0.5 * (m(0, 0).real() + m(1, 1).real());
  const double z = 0.5 * (m(0, 0).real() - m(1, 1).real());
  const double x = m(1, 0).real();
  const double y = m(1, 0).imag();
  const double r = std::hypot(x, y, z);
  SpectralDecomposition sd;
  sd.values.resize(2);
  sd.values << mean - r, mean + r;
  sd.vectors.resize(2, 2);
  if (r == 0.0) {
    sd.vectors.setIdentity();
    return sd;
  }
  Vector lo(2), hi(2);
  if (z >= 0.0) {
    hi << Complex(r + z, 0.0), Complex(x, y);
    lo << Complex(-x, y), Complex(r + z, 0.0);
  } else {
    lo << Complex(r - z, 0.0), Complex(-x, -y);
    hi << Complex(x, -y), Complex(r - z, 0.0);
  }
  sd.vectors.col(0) = lo / lo.norm();
  sd.vectors.col(1) = hi / hi.norm();
  return sd;
}

}  // namespace

SpectralDecomposition eig_hermitian(const HermitianMatrix& m) {
  SpectralDecomposition sd;
  const Eigen::Index n = m.dim();
  if (n == 0) return sd;
  if (n == 1) {
    sd.values = RealVector::Constant(1, m(0, 0).real());
    sd.vectors = Matrix::Identity(1, 1);
    return sd;
  }
  if (n == 2) return eig_hermitian_2x2(m.matrix());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix(), Eigen::ComputeEigenvectors);
  sd.values = solver.eigenvalues();
  sd.vectors = solver.eigenvectors();
  return sd;
}

double spectral_norm(const HermitianMatrix& m) {
  if (m.dim() == 0) return 0.0;
  const RealVector ev = eig_hermitian(m).values;
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

double min_eigenvalue(const HermitianMatrix& m) {
  if (m.dim() == 0) return 0.0;
  if (m.dim() == 1) return m(0, 0).real();
  if (m.dim() == 2) {
    const Matrix& a = m.matrix();
    const double z = 0.5 * (a(0, 0).real() - a(1, 1).real());
    return 0.5 * (a(0, 0).real() + a(1, 1).real()) - std::hypot(std::abs(a(1, 0)), z);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

bool is_psd(const HermitianMatrix& m, double tol) {
  if (m.dim() == 0) return true;
  const RealVector ev = eig_hermitian(m).values;
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return ev(0) >= -tol * std::max(1.0, norm);
}

HermitianMatrix abs_op(const HermitianMatrix& m) {
  return apply_spectral(m, [](double x) { return std::abs(x); });
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> cluster_eigenvalues(const RealVector& values,
                                                                       double gap) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  const Eigen::Index n = values.size();
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i == n || std::abs(values(i) - values(i - 1)) >= gap) {
      out.emplace_back(start, i);
      start = i;
    }
  }
  return out;
}

Matrix2 pauli_x() {
  Matrix2 s;
  s << 0, 1, 1, 0;
  return s;
}

Matrix2 pauli_y() {
  Matrix2 s;
  s << 0, Complex(0, -1), Complex(0, 1), 0;
  return s;
}

Matrix2 pauli_z() {
  Matrix2 s;
  s << 1, 0, 0, -1;
  return s;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "operand shapes differ");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace coex
