#pragma once

#include <array>
#include <optional>
#include <vector>

#include "coex/effects.hpp"

namespace coex {

/// One distinct angle θ ∈ (0, π) of the pair, with h = cos²(θ/2) the
/// matching eigenvalue of P P' P restricted to the non-commutative part.
struct AngleGroup {
  double theta = 0.0;
  double h = 0.0;
  Eigen::Index multiplicity = 0;
};

/// Dimensions of the joint eigenspaces of (P1, P2) on the commutation
/// domain, indexed as (1,1), (1,0), (0,1), (0,0).
struct CommSplit {
  std::array<Eigen::Index, 4> dims{0, 0, 0, 0};

  Eigen::Index total() const { return dims[0] + dims[1] + dims[2] + dims[3]; }
};

/// Canonical basis of the algebra generated by two projections.
///
/// Columns of `basis` are ordered as: for every angle group, `multiplicity`
/// consecutive pairs (e, f); then the four commutation-domain groups in
/// CommSplit order. In each (e, f) pair the construction projection (P1,
/// or P2 when `swapped`) acts as ½(1 + σz) and the other one as
/// ½(1 + sinθ σx + cosθ σz).
struct TwoProjectionDecomposition {
  Eigen::Index dim = 0;
  std::vector<AngleGroup> angles;
  Matrix basis;
  CommSplit split;
  bool swapped = false;

  /// Dimension of the non-commutative part (twice the number of pairs).
  Eigen::Index noncommutative_dim() const;
  /// Column offset of commutation-domain group g.
  Eigen::Index split_offset(int g) const;
  /// The spectrum of H = cos²(Θ/2), one entry per group.
  std::vector<double> h_values() const;
};

struct DecomposeOptions {
  /// Eigenvalues of i[P1, P2] (which are ±½ sinθ) at or below this count
  /// as commuting.
  double kernel_tol = 1e-9;
  /// Relative gap below which eigenvalues of H share one angle group.
  double cluster_tol = 1e-8;
  double projection_tol = 1e-9;
};

/// 1 - (P1 - P2)². Checks both three-term factorizations. Throws NotAProjection.
HermitianMatrix central_element(const HermitianMatrix& p1, const HermitianMatrix& p2,
                                double projection_tol = kEffectTol);

/// Orthonormal basis (columns) of ker [P1, P2].
Matrix commutation_kernel(const HermitianMatrix& p1, const HermitianMatrix& p2,
                          const DecomposeOptions& opts = {});

TwoProjectionDecomposition decompose(const HermitianMatrix& p1, const HermitianMatrix& p2,
                                     const DecomposeOptions& opts = {});

/// Largest deviation of U* P1 U and U* P2 U from the canonical form, and
/// of U*U from the identity.
double canonical_form_residual(const TwoProjectionDecomposition& d, const HermitianMatrix& p1,
                               const HermitianMatrix& p2);

/// Image of an algebra element: one 2×2 block per angle group and one
/// scalar per non-empty commutation-domain group.
struct BlockFunction {
  std::vector<Matrix2> blocks;
  std::array<std::optional<double>, 4> scalars;
};

/// Frobenius-orthogonal projection of A onto the algebra: blocks averaged
/// over each multiplicity group, scalars averaged over each split group.
/// `residual` is the largest entry of A - reconstruct(projection).
struct AlgebraProjection {
  BlockFunction blocks;
  double residual = 0.0;
};

AlgebraProjection project_to_algebra(const HermitianMatrix& a, const TwoProjectionDecomposition& d);

inline constexpr double kMembershipTol = 1e-8;

/// Residual ≤ tol · max(1, max|A_ij|).
bool in_algebra(const HermitianMatrix& a, const TwoProjectionDecomposition& d,
                double tol = kMembershipTol);

/// Throws NotInAlgebra carrying the largest violating entry.
BlockFunction block_of(const HermitianMatrix& a, const TwoProjectionDecomposition& d,
                       double tol = kMembershipTol);

/// Throws ShapeMismatch when the block or scalar layout does not fit d.
HermitianMatrix reconstruct(const BlockFunction& bf, const TwoProjectionDecomposition& d);

/// ½(1 + σz) and ½(1 + sinθ σx + cosθ σz).
Matrix2 canonical_first(double theta);
Matrix2 canonical_second(double theta);

}  // namespace coex
