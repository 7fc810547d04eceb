#include "coex/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "coex/errors.hpp"

namespace coex {

const char* to_string(OracleStatus s) {
  switch (s) {
    case OracleStatus::feasible: return "feasible";
    case OracleStatus::infeasible: return "infeasible";
    case OracleStatus::stalled: return "stalled";
    case OracleStatus::max_iter: return "max_iter";
  }
  return "unknown";
}

namespace {

Matrix positive_part(const Matrix& m) {
  const SpectralDecomposition sd = eig_hermitian(HermitianMatrix::symmetrized(m));
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < sd.values.size(); ++j) {
    if (sd.values(j) > 0.0) out.noalias() += sd.values(j) * sd.vectors.col(j) * sd.vectors.col(j).adjoint();
  }
  return out;
}

double real_trace_product(const Matrix& a, const Matrix& b) {
  return (a.cwiseProduct(b.transpose())).sum().real();
}

double violation(const Matrix& m) {
  return std::max(0.0, -min_eigenvalue(HermitianMatrix::symmetrized(m)));
}

/// Midpoint of the generalized supremum of the lower bounds 0, A + B - 1
/// and the generalized infimum of the upper bounds A, B.
Matrix start_point(const Effect& a, const Effect& b) {
  const Eigen::Index n = a.dim();
  const HermitianMatrix lower = HermitianMatrix::symmetrized(a.matrix() + b.matrix() - Matrix::Identity(n, n));
  const Matrix lo = 0.5 * (lower.matrix() + abs_op(lower).matrix());
  return 0.5 * (lo + gen_inf(a, b).matrix());
}

}  // namespace

double feasibility_residual(const HermitianMatrix& a, const HermitianMatrix& b, const HermitianMatrix& g) {
  if (a.dim() != b.dim() || a.dim() != g.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "operand dimensions differ");
  }
  const Matrix lower = a.matrix() + b.matrix() - Matrix::Identity(a.dim(), a.dim());
  return std::max({violation(g.matrix()), violation(a.matrix() - g.matrix()),
                   violation(b.matrix() - g.matrix()), violation(g.matrix() - lower)});
}

FeasibilityResult feasibility_oracle(const Effect& a, const Effect& b, const OracleOptions& opts) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "effect dimensions differ");
  const Eigen::Index n = a.dim();
  const Matrix& am = a.matrix();
  const Matrix& bm = b.matrix();
  const Matrix lower = am + bm - Matrix::Identity(n, n);

  // Projections onto {G ≥ 0}, {G ≤ A}, {G ≤ B}, {G ≥ A + B - 1}.
  auto project = [&](int set, const Matrix& x) -> Matrix {
    switch (set) {
      case 0: return positive_part(x);
      case 1: return am - positive_part(am - x);
      case 2: return bm - positive_part(bm - x);
      default: return lower + positive_part(x - lower);
    }
  };

  FeasibilityResult res;
  Matrix x = start_point(a, b);
  std::array<Matrix, 4> incr;
  incr.fill(Matrix::Zero(n, n));

  res.residual = feasibility_residual(a, b, HermitianMatrix::symmetrized(x));
  if (res.residual <= opts.tol_feas) {
    res.feasible = true;
    res.status = OracleStatus::feasible;
    res.G = HermitianMatrix::symmetrized(x);
    return res;
  }

  // Dual bound from the current corrections, normalized by 1 + Σ tr Z.
  auto dual_bound = [&]() {
    const Matrix z0 = positive_part(-incr[0]);
    const Matrix z1 = positive_part(incr[1]);
    const Matrix z2 = positive_part(incr[2]);
    const Matrix z3 = positive_part(-incr[3]);
    const Matrix r = z0 - z1 - z2 + z3;
    const double bound = positive_part(r).trace().real() + real_trace_product(z1, am) +
                         real_trace_product(z2, bm) - real_trace_product(z3, lower);
    const double mass = z0.trace().real() + z1.trace().real() + z2.trace().real() + z3.trace().real();
    return bound / (1.0 + mass);
  };

  int quiet = 0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    const Matrix prev = x;
    for (int s = 0; s < 4; ++s) {
      const Matrix y = x + incr[static_cast<std::size_t>(s)];
      x = project(s, y);
      incr[static_cast<std::size_t>(s)] = y - x;
    }
    res.iterations = it;
    res.residual = feasibility_residual(a, b, HermitianMatrix::symmetrized(x));
    if (res.residual <= opts.tol_feas) {
      res.feasible = true;
      res.status = OracleStatus::feasible;
      res.G = HermitianMatrix::symmetrized(x);
      return res;
    }
    res.certificate = dual_bound();
    if (res.certificate < -opts.certificate_tol) {
      res.status = OracleStatus::infeasible;
      return res;
    }
    double scale = std::max(1.0, x.norm());
    for (const auto& p : incr) scale = std::max(scale, p.norm());
    if ((x - prev).norm() < opts.stall_tol * scale && res.residual > 10.0 * opts.tol_feas) {
      if (++quiet >= opts.stall_sweeps) {
        res.status = OracleStatus::stalled;
        return res;
      }
    } else {
      quiet = 0;
    }
  }
  res.status = OracleStatus::max_iter;
  return res;
}

}  // namespace coex
