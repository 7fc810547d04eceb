#pragma once

#include "coex/matrix_core.hpp"

namespace coex {

struct ProjectionPair {
  HermitianMatrix p1;
  HermitianMatrix p2;
};

/// Kronecker product.
Matrix kron(const Matrix& a, const Matrix& b);

/// |v⟩⟨v| for a unit vector v.
HermitianMatrix rank_one(const Vector& v);

/// ½(1 + n·σ) for a unit vector n.
HermitianMatrix qubit_projection(double nx, double ny, double nz);

/// C³: P1 = |ψ1⟩⟨ψ1|, P2 = |φ⟩⟨φ| with φ the uniform superposition.
ProjectionPair dim3_pair();

/// C⁴: P1 onto the first two basis vectors, P2 its conjugate by the
/// discrete Fourier transform.
ProjectionPair fourier_pair();

/// n-fold tensor powers of |ψ1⟩⟨ψ1| and |ψ2⟩⟨ψ2| in C², |⟨ψ1|ψ2⟩| = overlap.
ProjectionPair rank1_pair(double overlap, int copies = 1);

/// Valid scalings of s(P1 + P2) and t(P1 + P2⊥) in the C³ family.
double dim3_s_max();
double dim3_t_max();

/// √(2(2s² - 6s + 3)(t² - 6t + 3)) + 16st - 12s - 15t + 9: nonnegative
/// exactly on the coexistence region of the C³ family.
double dim3_boundary(double s, double t);

/// Largest t coexisting with s = 1 in the C⁴ sandwich family, 8(3 - 2√2)/7.
double dim4_t_threshold();

/// min over h ∈ {cos²(π/8), cos²(3π/8)} of (1 - sh)(1 - th)/(s t h²) - h.
double dim4_boundary(double s, double t);

/// (1 - sⁿ)(1 - tⁿ)/(sⁿ tⁿ) - overlap^{2n}.
double rank1_boundary(double s, double t, double overlap, int copies);

}  // namespace coex
