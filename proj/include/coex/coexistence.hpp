#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coex/effects.hpp"
#include "coex/halmos.hpp"
#include "coex/oracle.hpp"
#include "coex/qubit.hpp"

namespace coex {

enum class Method { blockwise_c, rank1_fastpath, scaled_central, oracle };

const char* to_string(Method m);

/// G1..G4 with G1 + G2 = A, G1 + G3 = B, ΣG = 1.
struct JointObservable {
  std::vector<Effect> effects;
  /// Largest deviation of the margins and of the sum from A, B and 1.
  double residual = 0.0;
};

/// Builds the joint observable whose first effect is G. Returns nullopt
/// when one of the four operators fails validate_effect at `tol`.
std::optional<JointObservable> joint_from_g(const Effect& a, const Effect& b, const HermitianMatrix& g,
                                            double tol = kEffectTol);

struct CoexistenceVerdict {
  Decision decision = Decision::borderline;
  /// min over angles of c(M_A(θ), M_B(θ)); empty when there are no angles.
  std::optional<double> min_c;
  std::optional<double> witness_theta;
  std::vector<double> block_c;
  std::optional<JointObservable> joint;
  Method method = Method::blockwise_c;
};

struct CoexistenceOptions {
  double decision_tol = kDecisionTol;
  double membership_tol = kMembershipTol;
  bool build_joint = true;
  /// Used on the 2×2 blocks when assembling a joint observable.
  OracleOptions block_oracle{1e-12, 200000, 1e-16, 50};
};

/// Blockwise decision for two effects of the algebra described by `d`.
/// The commutation-domain part never obstructs coexistence. Throws
/// NotInAlgebra.
CoexistenceVerdict coexistent_in_algebra(const Effect& a, const Effect& b,
                                         const TwoProjectionDecomposition& d,
                                         const CoexistenceOptions& opts = {});

/// Decision from the feasibility oracle alone: feasible → coexistent,
/// infeasible or stalled → not coexistent, out of iterations → borderline.
CoexistenceVerdict oracle_verdict(const Effect& a, const Effect& b, const OracleOptions& opts = {});

/// sP1 and tP2 with rank P1 = 1: coexistent iff they commute or sP1 + tP2 ≤ 1.
bool rank1_scaled_check(double s, const HermitianMatrix& p1, double t, const HermitianMatrix& p2,
                        double tol = kEffectTol);

using ScalarFunction = std::function<double(double)>;

/// Spectrum of H: a finite point set or a closed interval.
struct HSpectrum {
  std::vector<double> points;
  std::optional<std::pair<double, double>> interval;

  static HSpectrum finite(std::vector<double> pts) { return {std::move(pts), std::nullopt}; }
  static HSpectrum range(double lo, double hi) { return {{}, std::make_pair(lo, hi)}; }
};

struct ScaledCentralOptions {
  double tol = kDecisionTol;
  int grid_n = 4097;
};

struct ScaledCentralResult {
  double infimum = 0.0;
  double argmin = 0.0;
  Decision decision = Decision::borderline;
  bool coexistent = false;
};

/// (1 - f1(h))/f1(h) · (1 - f2(h))/f2(h) - h, +∞ when f1(h) or f2(h) is 0.
double scaled_central_expression(const ScalarFunction& f1, const ScalarFunction& f2, double h);

/// Coexistence of f1(C)P1 and f2(C)P2 from the infimum of the expression
/// above over the spectrum of H. Interval spectra are minimized on a
/// uniform grid followed by golden-section refinement. Throws InvalidRange.
ScaledCentralResult scaled_central_check(const ScalarFunction& f1, const ScalarFunction& f2,
                                         const HSpectrum& spec, const ScaledCentralOptions& opts = {});

/// (1 / (1 + overlapⁿ))^{1/n}: the largest equal scaling s = t for which
/// n-fold tensor copies of sP1, tP2 (rank-1, |⟨ψ1|ψ2⟩| = overlap) coexist.
double copies_bound(double overlap, int n);

struct GinfEquivalence {
  bool ginf = false;
  bool coex = false;
  double ginf_margin = 0.0;
  /// Infimum of the scaled-central expression; +∞ without angles.
  double infimum = 0.0;
};

/// Evaluates the generalized-infimum condition on the full matrices
/// f1(C)P1, f2(C)P2 and, independently, the scaled-central criterion on
/// the spectrum of H.
GinfEquivalence ginf_equals_coexistence_check(const ScalarFunction& f1, const ScalarFunction& f2,
                                              const HermitianMatrix& p1, const HermitianMatrix& p2,
                                              const TwoProjectionDecomposition& d,
                                              double tol = kEffectTol);

/// Decision for f1(C)P1, f2(C)P2 taken from the scaled-central criterion
/// on the angles of `d`; the joint observable is assembled blockwise.
CoexistenceVerdict scaled_central_verdict(const ScalarFunction& f1, const ScalarFunction& f2,
                                          const HermitianMatrix& p1, const HermitianMatrix& p2,
                                          const TwoProjectionDecomposition& d,
                                          const CoexistenceOptions& opts = {});

/// f(C)·P, an effect whenever f maps [0,1] into [0,1].
Effect central_scaled(const ScalarFunction& f, const HermitianMatrix& c, const HermitianMatrix& p);

/// A = s·P with P a projection (s = 0 gives P = 0).
struct ScaledProjection {
  double scale = 0.0;
  HermitianMatrix projection;
};

std::optional<ScaledProjection> as_scaled_projection(const Effect& a, double tol = kEffectTol);

struct AutoCheck {
  CoexistenceVerdict verdict;
  std::optional<TwoProjectionDecomposition> decomposition;
  std::string note;
};

/// Picks a method: the blockwise criterion for a supplied projection pair;
/// the rank-1 fast path or the blockwise criterion when A and B are scaled
/// projections; the feasibility oracle otherwise.
AutoCheck auto_check(const Effect& a, const Effect& b,
                     const std::optional<std::pair<HermitianMatrix, HermitianMatrix>>& projections,
                     const CoexistenceOptions& opts = {}, const OracleOptions& oracle_opts = {});

}  // namespace coex
