#pragma once

#include <optional>

#include "coex/effects.hpp"

namespace coex {

struct OracleOptions {
  double tol_feas = 1e-9;
  int max_iter = 10000;
  /// Sweep displacement (Frobenius, relative to max(1, ‖G‖)) counted as stalled.
  double stall_tol = 1e-12;
  int stall_sweeps = 50;
  /// Required margin of the normalized dual bound.
  double certificate_tol = 1e-12;
};

/// `infeasible`: a dual certificate was found. `stalled`: no certificate,
/// but the iterates stopped moving with a positive residual.
enum class OracleStatus { feasible, infeasible, stalled, max_iter };

const char* to_string(OracleStatus s);

struct FeasibilityResult {
  bool feasible = false;
  std::optional<HermitianMatrix> G;
  double residual = 0.0;
  int iterations = 0;
  OracleStatus status = OracleStatus::max_iter;
  /// Normalized value of the dual bound at exit; negative proves infeasibility.
  double certificate = 0.0;
};

/// Largest violation of 0 ≤ G ≤ A, A + B - 1 ≤ G ≤ B (0 when all hold).
double feasibility_residual(const HermitianMatrix& a, const HermitianMatrix& b, const HermitianMatrix& g);

/// Searches the set {G : 0 ≤ G ≤ A, A + B - 1 ≤ G ≤ B} by cyclic
/// projections with Dykstra correction terms, starting from the
/// generalized infimum of A and B.
///
/// The correction terms are normal-cone elements, so after clipping they
/// give PSD Z0..Z3 with, for every feasible G,
///   tr(G R) + tr(Z1 A) + tr(Z2 B) - tr(Z3 (A + B - 1)) ≥ 0,  R = Z0 - Z1 - Z2 + Z3.
/// Feasible G also satisfy 0 ≤ G ≤ 1, so tr(G R) ≤ tr(R₊) and a negative
/// value of tr(R₊) + tr(Z1 A) + tr(Z2 B) - tr(Z3 (A + B - 1)) certifies
/// infeasibility. On inconsistent problems the corrections grow linearly
/// and the certificate appears after a few sweeps.
///
/// Without a certificate, infeasibility is declared when the sweep
/// displacement stays below `stall_tol` (relative to the iterate and the
/// corrections) for `stall_sweeps` consecutive sweeps while the residual
/// exceeds 10·tol_feas. Running out of iterations leaves `feasible` false
/// with status max_iter; callers treat that as inconclusive.
FeasibilityResult feasibility_oracle(const Effect& a, const Effect& b, const OracleOptions& opts = {});

}  // namespace coex
