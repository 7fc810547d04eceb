#pragma once

#include <Eigen/Dense>

#include "coex/effects.hpp"

namespace coex {

/// Three-valued outcome of a test whose boundary is a measure-zero set.
enum class Decision { coexistent, not_coexistent, borderline };

const char* to_string(Decision d);

/// `value` ≥ 0 means coexistent; |value| ≤ tol is borderline.
Decision decide(double value, double tol);

inline constexpr double kDecisionTol = 1e-9;
inline constexpr double kRadicandClamp = 1e-12;

/// Qubit effect ½(α·1 + a·σ). The fields are public so raw parameter
/// tuples can be passed around; `make_bloch` is the validating path.
struct BlochEffect {
  double alpha = 0.0;
  Eigen::Vector3d a = Eigen::Vector3d::Zero();

  BlochEffect complement() const { return {2.0 - alpha, -a}; }
  bool is_valid(double tol = kEffectTol) const;
};

/// Validates ‖a‖ ≤ α ≤ 2 - ‖a‖ within tol and clamps the result onto the
/// valid set. Throws NotAnEffect.
BlochEffect make_bloch(double alpha, const Eigen::Vector3d& a, double tol = kEffectTol);

BlochEffect to_bloch(const HermitianMatrix& m, double tol = kEffectTol);
Effect from_bloch(const BlochEffect& b);
Matrix2 bloch_matrix(const BlochEffect& b);

/// ⟨A|B⟩ = αβ - a·b.
double bracket(const BlochEffect& a, const BlochEffect& b);

/// The qubit coexistence function: nonnegative iff A and B are coexistent.
/// Throws NegativeRadicand for inputs that are not effects.
double c_function(const BlochEffect& a, const BlochEffect& b);

/// Simplified form valid when one of A, A⊥, B, B⊥ has rank ≤ 1.
double c_function_rank1(const BlochEffect& a, const BlochEffect& b, double tol = kEffectTol);

/// Simplified form valid when α = β = 1.
double c_function_unbiased(const BlochEffect& a, const BlochEffect& b, double tol = kEffectTol);

bool qubit_coexistent(const BlochEffect& a, const BlochEffect& b, double tol = kDecisionTol);

/// ‖a × b‖ ≤ tol. The matrices commute exactly when the Bloch vectors are parallel.
bool bloch_commute(const BlochEffect& a, const BlochEffect& b, double tol = kDecisionTol);

/// Commuting pairs are coexistent even where c vanishes (for example A = 0);
/// otherwise decide(c, tol).
Decision qubit_decision(const BlochEffect& a, const BlochEffect& b, double tol = kDecisionTol);

}  // namespace coex
