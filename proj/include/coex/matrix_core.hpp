#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace coex {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Matrix2 = Eigen::Matrix2cd;

/// Relative tolerances shared by the spectral routines. The process-wide
/// defaults may be overridden once at startup; nothing mutates them later.
struct Tolerances {
  double herm = 1e-10;
  double orth = 1e-10;
  double recon = 1e-10;
};

Tolerances& default_tolerances();

/// Dense complex Hermitian matrix. Construction checks the symmetry within
/// a relative tolerance and stores the exactly symmetrized matrix.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const Matrix& m);
  HermitianMatrix(const Matrix& m, double tol_herm);

  static HermitianMatrix identity(Eigen::Index dim);
  static HermitianMatrix zero(Eigen::Index dim);
  /// Symmetrizes without checking; for matrices Hermitian by construction.
  static HermitianMatrix symmetrized(const Matrix& m);

  const Matrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  HermitianMatrix& operator+=(const HermitianMatrix& o);
  HermitianMatrix& operator-=(const HermitianMatrix& o);
  HermitianMatrix& operator*=(double s);

 private:
  Matrix m_;
};

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b);
HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a);
HermitianMatrix operator*(double s, HermitianMatrix a);
HermitianMatrix operator*(HermitianMatrix a, double s);

/// A B + B A, Hermitian whenever A and B are.
HermitianMatrix anticommutator(const HermitianMatrix& a, const HermitianMatrix& b);
/// The sandwich A B A.
HermitianMatrix sandwich(const HermitianMatrix& a, const HermitianMatrix& b);

/// Largest entrywise modulus of M - M*, relative to max(1, max|M_ij|).
double hermiticity_defect(const Matrix& m);

struct SpectralDecomposition {
  RealVector values;  // ascending
  Matrix vectors;     // orthonormal columns

  Matrix reconstruct() const;
};

SpectralDecomposition eig_hermitian(const HermitianMatrix& m);

double spectral_norm(const HermitianMatrix& m);
double min_eigenvalue(const HermitianMatrix& m);

/// λ_min(M) ≥ -tol · max(1, ‖M‖).
bool is_psd(const HermitianMatrix& m, double tol);

/// Σ f(λ_j) v_j v_j* over a given decomposition.
template <class F>
HermitianMatrix apply_spectral(const SpectralDecomposition& sd, F&& f) {
  const Eigen::Index n = sd.values.size();
  RealVector fv(n);
  for (Eigen::Index j = 0; j < n; ++j) fv(j) = f(sd.values(j));
  return HermitianMatrix::symmetrized(sd.vectors * fv.asDiagonal() * sd.vectors.adjoint());
}

template <class F>
HermitianMatrix apply_spectral(const HermitianMatrix& m, F&& f) {
  return apply_spectral(eig_hermitian(m), std::forward<F>(f));
}

/// |M| = Σ |λ_j| v_j v_j*.
HermitianMatrix abs_op(const HermitianMatrix& m);

/// Index ranges [first, last) of eigenvalues whose consecutive gaps are
/// below `gap`. Input must be sorted.
std::vector<std::pair<Eigen::Index, Eigen::Index>> cluster_eigenvalues(const RealVector& values,
                                                                       double gap);

/// Pauli matrices.
Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();

/// Largest entrywise modulus of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace coex
