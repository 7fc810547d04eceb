#include "coex/effects.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coex/errors.hpp"

namespace coex {

namespace {

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "dimensions " << a.dim() << " and " << b.dim() << " differ";
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
}

/// Lexicographic order on entries, used to canonicalize operand order.
bool entrywise_less(const Matrix& a, const Matrix& b) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const Complex x = a(k);
    const Complex y = b(k);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

}  // namespace

Effect validate_effect(const HermitianMatrix& m, double tol) {
  if (m.dim() == 0) return Effect(m);
  const SpectralDecomposition sd = eig_hermitian(m);
  const double lo = sd.values(0);
  const double hi = sd.values(sd.values.size() - 1);
  if (lo < -tol) {
    std::ostringstream os;
    os << "eigenvalue " << lo << " below 0";
    throw Error(ErrorKind::NotAnEffect, os.str(), lo);
  }
  if (hi > 1.0 + tol) {
    std::ostringstream os;
    os << "eigenvalue " << hi << " above 1";
    throw Error(ErrorKind::NotAnEffect, os.str(), hi);
  }
  if (lo >= 0.0 && hi <= 1.0) return Effect(m);
  return Effect(apply_spectral(sd, [](double x) { return std::clamp(x, 0.0, 1.0); }));
}

Effect validate_effect(const Matrix& m, double tol) { return validate_effect(HermitianMatrix(m), tol); }

Effect complement(const Effect& a) {
  return Effect(HermitianMatrix::identity(a.dim()) - a);
}

HermitianMatrix gen_inf(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a, b);
  if (entrywise_less(b.matrix(), a.matrix())) return 0.5 * (b + a - abs_op(b - a));
  return 0.5 * (a + b - abs_op(a - b));
}

double ginf_margin(const Effect& a, const Effect& b) {
  require_same_dim(a, b);
  const Effect ac = complement(a);
  const Effect bc = complement(b);
  const double first = std::min(min_eigenvalue(gen_inf(a, b)), min_eigenvalue(gen_inf(ac, bc)));
  const double second = std::min(min_eigenvalue(gen_inf(a, bc)), min_eigenvalue(gen_inf(ac, b)));
  return std::max(first, second);
}

bool ginf_condition(const Effect& a, const Effect& b, double tol) {
  require_same_dim(a, b);
  const Effect ac = complement(a);
  const Effect bc = complement(b);
  const bool first = is_psd(gen_inf(a, b), tol) && is_psd(gen_inf(ac, bc), tol);
  if (first) return true;
  return is_psd(gen_inf(a, bc), tol) && is_psd(gen_inf(ac, b), tol);
}

bool commute(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  require_same_dim(a, b);
  if (a.dim() == 0) return true;
  const Matrix comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();
  const HermitianMatrix icomm = HermitianMatrix::symmetrized(Complex(0, 1) * comm);
  return spectral_norm(icomm) <= tol * spectral_norm(a) * spectral_norm(b);
}

bool psd_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  require_same_dim(a, b);
  return is_psd(b - a, tol);
}

bool comparable(const Effect& a, const Effect& b, double tol) {
  require_same_dim(a, b);
  const Effect bc = complement(b);
  return psd_leq(a, b, tol) || psd_leq(b, a, tol) || psd_leq(a, bc, tol) || psd_leq(bc, a, tol);
}

bool is_projection(const HermitianMatrix& p, double tol) {
  if (p.dim() == 0) return true;
  const double scale = std::max(1.0, p.matrix().cwiseAbs().maxCoeff());
  if (max_abs_diff(p.matrix() * p.matrix(), p.matrix()) > tol * scale) return false;
  const RealVector ev = eig_hermitian(p).values;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::min(std::abs(ev(i)), std::abs(ev(i) - 1.0)) > tol) return false;
  }
  return true;
}

Eigen::Index projection_rank(const HermitianMatrix& p) {
  if (p.dim() == 0) return 0;
  const RealVector ev = eig_hermitian(p).values;
  return (ev.array() > 0.5).count();
}

}  // namespace coex
