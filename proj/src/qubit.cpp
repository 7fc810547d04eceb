#include "coex/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coex/errors.hpp"

namespace coex {

const char* to_string(Decision d) {
  switch (d) {
    case Decision::coexistent: return "coexistent";
    case Decision::not_coexistent: return "not_coexistent";
    case Decision::borderline: return "borderline";
  }
  return "unknown";
}

Decision decide(double value, double tol) {
  if (std::abs(value) <= tol) return Decision::borderline;
  return value > 0 ? Decision::coexistent : Decision::not_coexistent;
}

bool BlochEffect::is_valid(double tol) const {
  const double r = a.norm();
  return r <= alpha + tol && alpha <= 2.0 - r + tol;
}

BlochEffect make_bloch(double alpha, const Eigen::Vector3d& a, double tol) {
  BlochEffect b{alpha, a};
  if (!b.is_valid(tol)) {
    std::ostringstream os;
    os << "Bloch parameters alpha=" << alpha << " |a|=" << a.norm()
       << " violate |a| <= alpha <= 2 - |a|";
    // The offending eigenvalue of ½(α + a·σ).
    const double lo = 0.5 * (alpha - a.norm());
    const double hi = 0.5 * (alpha + a.norm());
    throw Error(ErrorKind::NotAnEffect, os.str(), lo < 0 ? lo : hi);
  }
  double r = b.a.norm();
  if (r > 1.0) {
    b.a /= r;
    r = 1.0;
  }
  b.alpha = std::clamp(b.alpha, r, 2.0 - r);
  return b;
}

BlochEffect to_bloch(const HermitianMatrix& m, double tol) {
  if (m.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "Bloch form needs a 2x2 matrix");
  const Matrix2 mm = m.matrix();
  const double alpha = mm.trace().real();
  const Eigen::Vector3d a((mm * pauli_x()).trace().real(), (mm * pauli_y()).trace().real(),
                          (mm * pauli_z()).trace().real());
  return make_bloch(alpha, a, tol);
}

Matrix2 bloch_matrix(const BlochEffect& b) {
  return 0.5 * (b.alpha * Matrix2::Identity() + b.a(0) * pauli_x() + b.a(1) * pauli_y() +
                b.a(2) * pauli_z());
}

Effect from_bloch(const BlochEffect& b) {
  if (!b.is_valid()) {
    throw Error(ErrorKind::NotAnEffect, "Bloch parameters outside the effect set",
                0.5 * (b.alpha - b.a.norm()));
  }
  return validate_effect(HermitianMatrix::symmetrized(bloch_matrix(b)));
}

double bracket(const BlochEffect& a, const BlochEffect& b) { return a.alpha * b.alpha - a.a.dot(b.a); }

double c_function(const BlochEffect& a, const BlochEffect& b) {
  const BlochEffect ac = a.complement();
  const BlochEffect bc = b.complement();
  // Grouped per effect so that swapping A and B is bitwise symmetric.
  double radicand = (bracket(a, a) * bracket(ac, ac)) * (bracket(b, b) * bracket(bc, bc));
  if (radicand < 0.0) {
    if (radicand < -kRadicandClamp) {
      std::ostringstream os;
      os << "radicand " << radicand << " is negative; inputs are not effects";
      throw Error(ErrorKind::NegativeRadicand, os.str(), radicand);
    }
    radicand = 0.0;
  }
  return std::sqrt(radicand) - bracket(a, ac) * bracket(b, bc) + bracket(a, bc) * bracket(ac, b) +
         bracket(a, b) * bracket(ac, bc);
}

double c_function_rank1(const BlochEffect& a, const BlochEffect& b, double tol) {
  const BlochEffect ac = a.complement();
  const BlochEffect bc = b.complement();
  const double smallest =
      std::min({bracket(a, a), bracket(ac, ac), bracket(b, b), bracket(bc, bc)});
  if (std::abs(smallest) > tol) {
    throw Error(ErrorKind::PreconditionViolated, "none of A, A', B, B' has rank <= 1", smallest);
  }
  return -bracket(a, ac) * bracket(b, bc) + bracket(a, bc) * bracket(ac, b) +
         bracket(a, b) * bracket(ac, bc);
}

double c_function_unbiased(const BlochEffect& a, const BlochEffect& b, double tol) {
  if (std::abs(a.alpha - 1.0) > tol || std::abs(b.alpha - 1.0) > tol) {
    throw Error(ErrorKind::PreconditionViolated, "effects are not unbiased",
                std::max(std::abs(a.alpha - 1.0), std::abs(b.alpha - 1.0)));
  }
  const BlochEffect ac = a.complement();
  const BlochEffect bc = b.complement();
  const double ab = bracket(a, b);
  const double abc = bracket(a, bc);
  return bracket(a, a) * bracket(b, b) - bracket(a, ac) * bracket(b, bc) + abc * abc + ab * ab;
}

bool qubit_coexistent(const BlochEffect& a, const BlochEffect& b, double tol) {
  return c_function(a, b) >= -tol;
}

bool bloch_commute(const BlochEffect& a, const BlochEffect& b, double tol) {
  return a.a.cross(b.a).norm() <= tol;
}

Decision qubit_decision(const BlochEffect& a, const BlochEffect& b, double tol) {
  const double c = c_function(a, b);
  if (bloch_commute(a, b, tol)) return Decision::coexistent;
  return decide(c, tol);
}

}  // namespace coex
