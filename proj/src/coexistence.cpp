#include "coex/coexistence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "coex/errors.hpp"

namespace coex {

const char* to_string(Method m) {
  switch (m) {
    case Method::blockwise_c: return "blockwise_c";
    case Method::rank1_fastpath: return "rank1_fastpath";
    case Method::scaled_central: return "scaled_central";
    case Method::oracle: return "oracle";
  }
  return "unknown";
}

std::optional<JointObservable> joint_from_g(const Effect& a, const Effect& b, const HermitianMatrix& g,
                                            double tol) {
  const HermitianMatrix id = HermitianMatrix::identity(a.dim());
  JointObservable jo;
  try {
    jo.effects.push_back(validate_effect(g, tol));
    jo.effects.push_back(validate_effect(a - g, tol));
    jo.effects.push_back(validate_effect(b - g, tol));
    jo.effects.push_back(validate_effect(id - a - b + g, tol));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotAnEffect) return std::nullopt;
    throw;
  }
  const auto& G = jo.effects;
  const HermitianMatrix sum = G[0] + G[1] + G[2] + G[3];
  jo.residual = std::max({max_abs_diff((G[0] + G[1]).matrix(), a.matrix()),
                          max_abs_diff((G[0] + G[2]).matrix(), b.matrix()),
                          max_abs_diff(sum.matrix(), id.matrix())});
  return jo;
}

namespace {

Effect block_effect(const Matrix2& m) {
  return validate_effect(HermitianMatrix::symmetrized(m), 1e-8);
}

// Per-angle G from the 2×2 oracle, minimal feasible scalar on the
// commutation domain, assembled into the full space.
std::optional<JointObservable> build_joint_blockwise(const Effect& a, const Effect& b,
                                                     const BlockFunction& fa, const BlockFunction& fb,
                                                     const TwoProjectionDecomposition& d,
                                                     const CoexistenceOptions& opts) {
  BlockFunction g;
  for (std::size_t j = 0; j < fa.blocks.size(); ++j) {
    const FeasibilityResult r =
        feasibility_oracle(block_effect(fa.blocks[j]), block_effect(fb.blocks[j]), opts.block_oracle);
    if (!r.feasible) return std::nullopt;
    g.blocks.push_back(r.G->matrix());
  }
  for (std::size_t k = 0; k < 4; ++k) {
    if (!fa.scalars[k]) continue;
    const double av = std::clamp(*fa.scalars[k], 0.0, 1.0);
    const double bv = std::clamp(*fb.scalars[k], 0.0, 1.0);
    g.scalars[k] = std::max(av + bv - 1.0, 0.0);
  }
  return joint_from_g(a, b, reconstruct(g, d));
}

}  // namespace

CoexistenceVerdict coexistent_in_algebra(const Effect& a, const Effect& b,
                                         const TwoProjectionDecomposition& d,
                                         const CoexistenceOptions& opts) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "effect dimensions differ");
  const BlockFunction fa = block_of(a, d, opts.membership_tol);
  const BlockFunction fb = block_of(b, d, opts.membership_tol);

  CoexistenceVerdict v;
  v.method = Method::blockwise_c;
  v.decision = Decision::coexistent;
  for (std::size_t j = 0; j < d.angles.size(); ++j) {
    const BlochEffect ba = to_bloch(block_effect(fa.blocks[j]));
    const BlochEffect bb = to_bloch(block_effect(fb.blocks[j]));
    const double c = c_function(ba, bb);
    v.block_c.push_back(c);
    if (!v.min_c || c < *v.min_c) {
      v.min_c = c;
      v.witness_theta = d.angles[j].theta;
    }
    const Decision dj = qubit_decision(ba, bb, opts.decision_tol);
    if (dj == Decision::not_coexistent) {
      v.decision = dj;
    } else if (dj == Decision::borderline && v.decision == Decision::coexistent) {
      v.decision = dj;
    }
  }
  if (opts.build_joint && v.decision != Decision::not_coexistent) {
    v.joint = build_joint_blockwise(a, b, fa, fb, d, opts);
  }
  return v;
}

CoexistenceVerdict oracle_verdict(const Effect& a, const Effect& b, const OracleOptions& opts) {
  const FeasibilityResult r = feasibility_oracle(a, b, opts);
  CoexistenceVerdict v;
  v.method = Method::oracle;
  switch (r.status) {
    case OracleStatus::feasible:
      v.decision = Decision::coexistent;
      v.joint = joint_from_g(a, b, *r.G, std::max(kEffectTol, 10.0 * opts.tol_feas));
      break;
    case OracleStatus::infeasible:
    case OracleStatus::stalled: v.decision = Decision::not_coexistent; break;
    case OracleStatus::max_iter: v.decision = Decision::borderline; break;
  }
  return v;
}

bool rank1_scaled_check(double s, const HermitianMatrix& p1, double t, const HermitianMatrix& p2,
                        double tol) {
  if (p1.dim() != p2.dim()) throw Error(ErrorKind::DimensionMismatch, "projection dimensions differ");
  if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorKind::InvalidRange, "scalings must lie in [0, 1]");
  }
  if (!is_projection(p1, tol) || !is_projection(p2, tol)) {
    throw Error(ErrorKind::NotAProjection, "rank-1 check needs two projections");
  }
  const Eigen::Index r = projection_rank(p1);
  if (r != 1) {
    throw Error(ErrorKind::RankViolation, "first projection must have rank 1", static_cast<double>(r));
  }
  const HermitianMatrix a = s * p1;
  const HermitianMatrix b = t * p2;
  return commute(a, b, tol) || is_psd(HermitianMatrix::identity(p1.dim()) - a - b, tol);
}

double scaled_central_expression(const ScalarFunction& f1, const ScalarFunction& f2, double h) {
  const double a1 = f1(h);
  const double a2 = f2(h);
  constexpr double slack = 1e-12;
  if (!(a1 >= -slack && a1 <= 1.0 + slack && a2 >= -slack && a2 <= 1.0 + slack)) {
    std::ostringstream os;
    os << "scaling functions must map into [0, 1]; got " << a1 << ", " << a2 << " at h = " << h;
    throw Error(ErrorKind::InvalidRange, os.str(), a1 < -slack || a1 > 1.0 + slack ? a1 : a2);
  }
  if (a1 <= 0.0 || a2 <= 0.0) return std::numeric_limits<double>::infinity();
  return (1.0 - a1) / a1 * ((1.0 - a2) / a2) - h;
}

namespace {

double golden_minimize(const std::function<double(double)>& fn, double lo, double hi, double& arg) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = fn(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = fn(x2);
    }
  }
  if (f1 <= f2) {
    arg = x1;
    return f1;
  }
  arg = x2;
  return f2;
}

}  // namespace

ScaledCentralResult scaled_central_check(const ScalarFunction& f1, const ScalarFunction& f2,
                                         const HSpectrum& spec, const ScaledCentralOptions& opts) {
  auto check_h = [](double h) {
    if (!(h >= 0.0 && h <= 1.0)) throw Error(ErrorKind::InvalidRange, "spectrum of H must lie in [0, 1]", h);
  };
  auto expr = [&](double h) { return scaled_central_expression(f1, f2, h); };

  ScaledCentralResult res;
  res.infimum = std::numeric_limits<double>::infinity();
  if (spec.interval) {
    const auto [lo, hi] = *spec.interval;
    check_h(lo);
    check_h(hi);
    if (lo > hi) throw Error(ErrorKind::InvalidRange, "empty interval");
    if (opts.grid_n < 2) throw Error(ErrorKind::InvalidRange, "grid needs at least two points");
    const int n = opts.grid_n;
    int best = 0;
    for (int i = 0; i < n; ++i) {
      const double h = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
      const double v = expr(h);
      if (v < res.infimum) {
        res.infimum = v;
        res.argmin = h;
        best = i;
      }
    }
    if (std::isfinite(res.infimum) && hi > lo) {
      const double step = (hi - lo) / static_cast<double>(n - 1);
      const double a = std::max(lo, lo + step * (best - 1));
      const double b = std::min(hi, lo + step * (best + 1));
      double arg = res.argmin;
      const double v = golden_minimize(expr, a, b, arg);
      if (v < res.infimum) {
        res.infimum = v;
        res.argmin = arg;
      }
    }
  } else {
    if (spec.points.empty()) throw Error(ErrorKind::InvalidRange, "spectrum of H is empty");
    for (double h : spec.points) {
      check_h(h);
      const double v = expr(h);
      if (v < res.infimum) {
        res.infimum = v;
        res.argmin = h;
      }
    }
  }
  res.decision = std::isinf(res.infimum) ? Decision::coexistent : decide(res.infimum, opts.tol);
  res.coexistent = res.infimum >= -opts.tol;
  return res;
}

double copies_bound(double overlap, int n) {
  if (!(overlap >= 0.0 && overlap <= 1.0)) throw Error(ErrorKind::InvalidRange, "overlap must lie in [0, 1]", overlap);
  if (n < 1) throw Error(ErrorKind::InvalidRange, "copy count must be positive", n);
  return std::pow(1.0 / (1.0 + std::pow(overlap, n)), 1.0 / n);
}

Effect central_scaled(const ScalarFunction& f, const HermitianMatrix& c, const HermitianMatrix& p) {
  const HermitianMatrix fc = apply_spectral(c, [&](double x) { return f(std::clamp(x, 0.0, 1.0)); });
  return validate_effect(HermitianMatrix::symmetrized(fc.matrix() * p.matrix()));
}

GinfEquivalence ginf_equals_coexistence_check(const ScalarFunction& f1, const ScalarFunction& f2,
                                              const HermitianMatrix& p1, const HermitianMatrix& p2,
                                              const TwoProjectionDecomposition& d, double tol) {
  const HermitianMatrix c = central_element(p1, p2);
  const Effect a = central_scaled(f1, c, p1);
  const Effect b = central_scaled(f2, c, p2);
  GinfEquivalence out;
  out.ginf_margin = ginf_margin(a, b);
  out.ginf = ginf_condition(a, b, tol);
  if (d.angles.empty()) {
    out.infimum = std::numeric_limits<double>::infinity();
    out.coex = true;
  } else {
    const ScaledCentralResult r = scaled_central_check(f1, f2, HSpectrum::finite(d.h_values()), {tol, 4097});
    out.infimum = r.infimum;
    out.coex = r.coexistent;
  }
  return out;
}

CoexistenceVerdict scaled_central_verdict(const ScalarFunction& f1, const ScalarFunction& f2,
                                          const HermitianMatrix& p1, const HermitianMatrix& p2,
                                          const TwoProjectionDecomposition& d,
                                          const CoexistenceOptions& opts) {
  CoexistenceVerdict v;
  v.method = Method::scaled_central;
  if (d.angles.empty()) {
    v.decision = Decision::coexistent;
  } else {
    const ScaledCentralResult r =
        scaled_central_check(f1, f2, HSpectrum::finite(d.h_values()), {opts.decision_tol, 4097});
    v.decision = r.decision;
    for (const auto& g : d.angles) {
      if (std::abs(g.h - r.argmin) <= 1e-15) v.witness_theta = g.theta;
    }
  }
  if (opts.build_joint && v.decision != Decision::not_coexistent) {
    const HermitianMatrix c = central_element(p1, p2);
    const Effect a = central_scaled(f1, c, p1);
    const Effect b = central_scaled(f2, c, p2);
    v.joint = build_joint_blockwise(a, b, block_of(a, d, opts.membership_tol),
                                    block_of(b, d, opts.membership_tol), d, opts);
  }
  return v;
}

std::optional<ScaledProjection> as_scaled_projection(const Effect& a, double tol) {
  const SpectralDecomposition sd = eig_hermitian(a);
  std::vector<Eigen::Index> support;
  for (Eigen::Index j = 0; j < sd.values.size(); ++j) {
    if (sd.values(j) > tol) support.push_back(j);
  }
  ScaledProjection out;
  out.projection = HermitianMatrix::zero(a.dim());
  if (support.empty()) return out;
  const double lo = sd.values(support.front());
  const double hi = sd.values(support.back());
  if (hi - lo > tol * std::max(1.0, hi)) return std::nullopt;
  Matrix p = Matrix::Zero(a.dim(), a.dim());
  double sum = 0.0;
  for (Eigen::Index j : support) {
    p += sd.vectors.col(j) * sd.vectors.col(j).adjoint();
    sum += sd.values(j);
  }
  out.scale = sum / static_cast<double>(support.size());
  out.projection = HermitianMatrix::symmetrized(p);
  return out;
}

AutoCheck auto_check(const Effect& a, const Effect& b,
                     const std::optional<std::pair<HermitianMatrix, HermitianMatrix>>& projections,
                     const CoexistenceOptions& opts, const OracleOptions& oracle_opts) {
  AutoCheck out;
  if (projections) {
    out.decomposition = decompose(projections->first, projections->second);
    out.verdict = coexistent_in_algebra(a, b, *out.decomposition, opts);
    return out;
  }
  const auto sa = as_scaled_projection(a);
  const auto sb = as_scaled_projection(b);
  if (!sa || !sb) {
    out.note = "inputs are not scaled projections and no projection pair was given; "
               "falling back to the feasibility oracle";
    out.verdict = oracle_verdict(a, b, oracle_opts);
    return out;
  }
  out.decomposition = decompose(sa->projection, sb->projection);
  CoexistenceVerdict blockwise = coexistent_in_algebra(a, b, *out.decomposition, opts);

  const Eigen::Index ra = projection_rank(sa->projection);
  const Eigen::Index rb = projection_rank(sb->projection);
  if (ra != 1 && rb != 1) {
    out.verdict = std::move(blockwise);
    return out;
  }
  CoexistenceVerdict v;
  v.method = Method::rank1_fastpath;
  v.min_c = blockwise.min_c;
  v.witness_theta = blockwise.witness_theta;
  v.block_c = blockwise.block_c;
  const HermitianMatrix id = HermitianMatrix::identity(a.dim());
  if (commute(a, b, opts.decision_tol)) {
    v.decision = Decision::coexistent;
    if (opts.build_joint) v.joint = joint_from_g(a, b, gen_inf(a, b));
  } else {
    v.decision = decide(min_eigenvalue(id - a - b), opts.decision_tol);
    if (opts.build_joint && v.decision != Decision::not_coexistent) {
      v.joint = joint_from_g(a, b, HermitianMatrix::zero(a.dim()));
    }
  }
  out.verdict = std::move(v);
  return out;
}

}  // namespace coex
