#pragma once

#include "coex/matrix_core.hpp"

namespace coex {

inline constexpr double kEffectTol = 1e-9;

/// Hermitian matrix with spectrum in [0, 1]. Only `validate_effect` and
/// the closed operations below produce one.
class Effect : public HermitianMatrix {
 public:
  Effect() = default;

 private:
  explicit Effect(const HermitianMatrix& m) : HermitianMatrix(m) {}
  friend Effect validate_effect(const HermitianMatrix& m, double tol);
  friend Effect complement(const Effect& a);
};

/// Accepts M when its spectrum lies in [-tol, 1 + tol]. Eigenvalues that
/// stray outside [0, 1] are clamped in the stored matrix; an in-range
/// matrix is stored unchanged. Throws NotAnEffect with the worst eigenvalue.
Effect validate_effect(const HermitianMatrix& m, double tol = kEffectTol);
Effect validate_effect(const Matrix& m, double tol = kEffectTol);

/// 1 - A.
Effect complement(const Effect& a);

/// ½(A + B - |A - B|). Not necessarily positive.
HermitianMatrix gen_inf(const HermitianMatrix& a, const HermitianMatrix& b);

/// Largest of the two disjunct margins of the generalized-infimum
/// condition, each margin being the smallest eigenvalue over its two
/// infima. The condition holds iff this is ≥ 0.
double ginf_margin(const Effect& a, const Effect& b);

bool ginf_condition(const Effect& a, const Effect& b, double tol = kEffectTol);

/// ‖AB - BA‖ ≤ tol · ‖A‖‖B‖ (operator norms; ‖[A,B]‖ via the Hermitian i[A,B]).
bool commute(const HermitianMatrix& a, const HermitianMatrix& b, double tol = kEffectTol);

/// A ≤ B in the PSD order, relative tolerance as in is_psd.
bool psd_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol = kEffectTol);

/// A ≤ B, B ≤ A, A ≤ B⊥ or B⊥ ≤ A.
bool comparable(const Effect& a, const Effect& b, double tol = kEffectTol);

/// P² = P and spectrum within tol of {0, 1}.
bool is_projection(const HermitianMatrix& p, double tol = kEffectTol);

/// Number of eigenvalues above ½ for a projection.
Eigen::Index projection_rank(const HermitianMatrix& p);

}  // namespace coex
