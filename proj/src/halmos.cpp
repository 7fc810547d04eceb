#include "coex/halmos.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coex/errors.hpp"

namespace coex {

namespace {

void require_projection(const HermitianMatrix& p, const char* name, double tol) {
  if (!is_projection(p, tol)) {
    const double defect = max_abs_diff(p.matrix() * p.matrix(), p.matrix());
    std::ostringstream os;
    os << name << " is not a projection (|P^2 - P| = " << defect << ")";
    throw Error(ErrorKind::NotAProjection, os.str(), defect);
  }
}

// Columns of `basis` split by whether the compression of `p` has eigenvalue
// near 1 (first) or near 0 (second).
std::pair<Matrix, Matrix> split_by_projection(const Matrix& basis, const HermitianMatrix& p) {
  if (basis.cols() == 0) return {Matrix(basis.rows(), 0), Matrix(basis.rows(), 0)};
  const HermitianMatrix compressed =
      HermitianMatrix::symmetrized(basis.adjoint() * p.matrix() * basis);
  const SpectralDecomposition sd = eig_hermitian(compressed);
  const Eigen::Index n = sd.values.size();
  const Eigen::Index ones = (sd.values.array() > 0.5).count();
  // Ascending order: zeros first, ones last.
  Matrix on = basis * sd.vectors.rightCols(ones);
  Matrix off = basis * sd.vectors.leftCols(n - ones);
  return {on, off};
}

}  // namespace

Eigen::Index TwoProjectionDecomposition::noncommutative_dim() const {
  Eigen::Index k = 0;
  for (const auto& g : angles) k += 2 * g.multiplicity;
  return k;
}

Eigen::Index TwoProjectionDecomposition::split_offset(int g) const {
  Eigen::Index off = noncommutative_dim();
  for (int i = 0; i < g; ++i) off += split.dims[static_cast<std::size_t>(i)];
  return off;
}

std::vector<double> TwoProjectionDecomposition::h_values() const {
  std::vector<double> out;
  out.reserve(angles.size());
  for (const auto& g : angles) out.push_back(g.h);
  return out;
}

Matrix2 canonical_first(double /*theta*/) {
  Matrix2 m;
  m << 1, 0, 0, 0;
  return m;
}

Matrix2 canonical_second(double theta) {
  return 0.5 * (Matrix2::Identity() + std::sin(theta) * pauli_x() + std::cos(theta) * pauli_z());
}

HermitianMatrix central_element(const HermitianMatrix& p1, const HermitianMatrix& p2,
                                double projection_tol) {
  if (p1.dim() != p2.dim()) throw Error(ErrorKind::DimensionMismatch, "projection dimensions differ");
  require_projection(p1, "P1", projection_tol);
  require_projection(p2, "P2", projection_tol);
  const Eigen::Index n = p1.dim();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix diff = p1.matrix() - p2.matrix();
  const Matrix c = id - diff * diff;

  const Matrix q1 = id - p1.matrix();
  const Matrix q2 = id - p2.matrix();
  const Matrix via1 = p1.matrix() * p2.matrix() * p1.matrix() + q1 * q2 * q1;
  const Matrix via2 = p2.matrix() * p1.matrix() * p2.matrix() + q2 * q1 * q2;
  const double defect = std::max(max_abs_diff(c, via1), max_abs_diff(c, via2));
  // Projection defects of size tol propagate linearly into both identities.
  if (defect > 10.0 * std::max(projection_tol, default_tolerances().recon)) {
    throw Error(ErrorKind::NotAProjection, "central element factorizations disagree", defect);
  }
  return HermitianMatrix::symmetrized(c);
}

Matrix commutation_kernel(const HermitianMatrix& p1, const HermitianMatrix& p2,
                          const DecomposeOptions& opts) {
  if (p1.dim() != p2.dim()) throw Error(ErrorKind::DimensionMismatch, "projection dimensions differ");
  require_projection(p1, "P1", opts.projection_tol);
  require_projection(p2, "P2", opts.projection_tol);
  const Matrix comm = p1.matrix() * p2.matrix() - p2.matrix() * p1.matrix();
  const SpectralDecomposition sd = eig_hermitian(HermitianMatrix::symmetrized(Complex(0, 1) * comm));
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < sd.values.size(); ++i) {
    if (std::abs(sd.values(i)) <= opts.kernel_tol) idx.push_back(i);
  }
  Matrix out(p1.dim(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = sd.vectors.col(idx[j]);
  return out;
}

TwoProjectionDecomposition decompose(const HermitianMatrix& p1, const HermitianMatrix& p2,
                                     const DecomposeOptions& opts) {
  if (p1.dim() != p2.dim()) throw Error(ErrorKind::DimensionMismatch, "projection dimensions differ");
  require_projection(p1, "P1", opts.projection_tol);
  require_projection(p2, "P2", opts.projection_tol);

  TwoProjectionDecomposition d;
  d.dim = p1.dim();
  d.basis = Matrix::Zero(d.dim, d.dim);
  d.swapped = projection_rank(p1) > projection_rank(p2);
  const HermitianMatrix& first = d.swapped ? p2 : p1;
  const HermitianMatrix& second = d.swapped ? p1 : p2;

  const Matrix comm = p1.matrix() * p2.matrix() - p2.matrix() * p1.matrix();
  const SpectralDecomposition csd = eig_hermitian(HermitianMatrix::symmetrized(Complex(0, 1) * comm));
  std::vector<Eigen::Index> support, kernel;
  for (Eigen::Index i = 0; i < csd.values.size(); ++i) {
    (std::abs(csd.values(i)) > opts.kernel_tol ? support : kernel).push_back(i);
  }
  Matrix qk(d.dim, static_cast<Eigen::Index>(support.size()));
  for (std::size_t j = 0; j < support.size(); ++j) qk.col(static_cast<Eigen::Index>(j)) = csd.vectors.col(support[j]);
  Matrix qn(d.dim, static_cast<Eigen::Index>(kernel.size()));
  for (std::size_t j = 0; j < kernel.size(); ++j) qn.col(static_cast<Eigen::Index>(j)) = csd.vectors.col(kernel[j]);

  const Eigen::Index k = qk.cols();
  if (k % 2 != 0) {
    throw Error(ErrorKind::DegenerateAngle, "commutator support has odd dimension",
                static_cast<double>(k));
  }

  Eigen::Index col = 0;
  if (k > 0) {
    const auto [k0, k1] = split_by_projection(qk, first);
    if (k0.cols() != k / 2) {
      throw Error(ErrorKind::DegenerateAngle, "range of the projection on the support is not half of it",
                  static_cast<double>(k0.cols()));
    }
    const HermitianMatrix h = HermitianMatrix::symmetrized(k0.adjoint() * second.matrix() * k0);
    const SpectralDecomposition hsd = eig_hermitian(h);
    const Eigen::Index m = hsd.values.size();

    // Descending h, i.e. ascending θ.
    RealVector hs(m);
    std::vector<double> thetas(static_cast<std::size_t>(m));
    for (Eigen::Index r = 0; r < m; ++r) {
      const Eigen::Index j = m - 1 - r;
      const Vector e = k0 * hsd.vectors.col(j);
      Vector g = second.matrix() * e;
      g -= first.matrix() * g;
      const double nrm = g.norm();
      if (nrm <= 0.5 * opts.kernel_tol) {
        throw Error(ErrorKind::DegenerateAngle, "angle within tolerance of 0 or pi", hsd.values(j));
      }
      const double hv = (e.adjoint() * second.matrix() * e)(0, 0).real();
      hs(r) = hv;
      thetas[static_cast<std::size_t>(r)] = std::atan2(2.0 * nrm, 2.0 * hv - 1.0);
      d.basis.col(col++) = e;
      d.basis.col(col++) = g / nrm;
    }
    RealVector neg = -hs;
    const double gap = opts.cluster_tol * std::max(hs.cwiseAbs().maxCoeff(), 1e-300);
    for (const auto& [lo, hi] : cluster_eigenvalues(neg, gap)) {
      AngleGroup grp;
      grp.multiplicity = hi - lo;
      double th = 0.0, hh = 0.0;
      for (Eigen::Index r = lo; r < hi; ++r) {
        th += thetas[static_cast<std::size_t>(r)];
        hh += hs(r);
      }
      grp.theta = th / static_cast<double>(grp.multiplicity);
      grp.h = hh / static_cast<double>(grp.multiplicity);
      d.angles.push_back(grp);
    }
  }

  const auto [on1, off1] = split_by_projection(qn, p1);
  const auto [on1on2, on1off2] = split_by_projection(on1, p2);
  const auto [off1on2, off1off2] = split_by_projection(off1, p2);
  const Matrix* groups[4] = {&on1on2, &on1off2, &off1on2, &off1off2};
  for (int g = 0; g < 4; ++g) {
    d.split.dims[static_cast<std::size_t>(g)] = groups[g]->cols();
    d.basis.middleCols(col, groups[g]->cols()) = *groups[g];
    col += groups[g]->cols();
  }
  return d;
}

namespace {

// Expected canonical coordinates of one generator.
Matrix canonical_image(const TwoProjectionDecomposition& d, bool construction, int which) {
  Matrix t = Matrix::Zero(d.dim, d.dim);
  Eigen::Index off = 0;
  for (const auto& g : d.angles) {
    const Matrix2 blk = construction ? canonical_first(g.theta) : canonical_second(g.theta);
    for (Eigen::Index r = 0; r < g.multiplicity; ++r, off += 2) t.block<2, 2>(off, off) = blk;
  }
  // which: 1 -> P1, 2 -> P2. P1 is 1 on groups (1,1),(1,0); P2 on (1,1),(0,1).
  for (int grp = 0; grp < 4; ++grp) {
    const bool one = which == 1 ? (grp == 0 || grp == 1) : (grp == 0 || grp == 2);
    const Eigen::Index o = d.split_offset(grp);
    const Eigen::Index n = d.split.dims[static_cast<std::size_t>(grp)];
    if (one) t.block(o, o, n, n).setIdentity();
  }
  return t;
}

}  // namespace

double canonical_form_residual(const TwoProjectionDecomposition& d, const HermitianMatrix& p1,
                               const HermitianMatrix& p2) {
  const Matrix& u = d.basis;
  const Matrix t1 = u.adjoint() * p1.matrix() * u;
  const Matrix t2 = u.adjoint() * p2.matrix() * u;
  const Matrix e1 = canonical_image(d, !d.swapped, 1);
  const Matrix e2 = canonical_image(d, d.swapped, 2);
  const double unit = max_abs_diff(u.adjoint() * u, Matrix::Identity(d.dim, d.dim));
  return std::max({max_abs_diff(t1, e1), max_abs_diff(t2, e2), unit});
}

namespace {

Matrix block_matrix(const BlockFunction& bf, const TwoProjectionDecomposition& d) {
  Matrix t = Matrix::Zero(d.dim, d.dim);
  Eigen::Index off = 0;
  for (std::size_t j = 0; j < d.angles.size(); ++j) {
    for (Eigen::Index r = 0; r < d.angles[j].multiplicity; ++r, off += 2) {
      t.block<2, 2>(off, off) = bf.blocks[j];
    }
  }
  for (int g = 0; g < 4; ++g) {
    const Eigen::Index n = d.split.dims[static_cast<std::size_t>(g)];
    if (n == 0) continue;
    const Eigen::Index o = d.split_offset(g);
    t.block(o, o, n, n) = Matrix::Identity(n, n) * Complex(*bf.scalars[static_cast<std::size_t>(g)]);
  }
  return t;
}

}  // namespace

AlgebraProjection project_to_algebra(const HermitianMatrix& a, const TwoProjectionDecomposition& d) {
  if (a.dim() != d.dim) throw Error(ErrorKind::DimensionMismatch, "operator and decomposition differ in dimension");
  const Matrix t = d.basis.adjoint() * a.matrix() * d.basis;
  AlgebraProjection out;
  Eigen::Index off = 0;
  for (const auto& g : d.angles) {
    Matrix2 acc = Matrix2::Zero();
    for (Eigen::Index r = 0; r < g.multiplicity; ++r, off += 2) acc += t.block<2, 2>(off, off);
    acc /= static_cast<double>(g.multiplicity);
    out.blocks.blocks.push_back(0.5 * (acc + acc.adjoint()));
  }
  for (int g = 0; g < 4; ++g) {
    const Eigen::Index n = d.split.dims[static_cast<std::size_t>(g)];
    if (n == 0) continue;
    const Eigen::Index o = d.split_offset(g);
    out.blocks.scalars[static_cast<std::size_t>(g)] =
        t.block(o, o, n, n).trace().real() / static_cast<double>(n);
  }
  out.residual = max_abs_diff(t, block_matrix(out.blocks, d));
  return out;
}

bool in_algebra(const HermitianMatrix& a, const TwoProjectionDecomposition& d, double tol) {
  const AlgebraProjection p = project_to_algebra(a, d);
  const double scale = a.dim() == 0 ? 1.0 : std::max(1.0, a.matrix().cwiseAbs().maxCoeff());
  return p.residual <= tol * scale;
}

BlockFunction block_of(const HermitianMatrix& a, const TwoProjectionDecomposition& d, double tol) {
  AlgebraProjection p = project_to_algebra(a, d);
  const double scale = a.dim() == 0 ? 1.0 : std::max(1.0, a.matrix().cwiseAbs().maxCoeff());
  if (p.residual > tol * scale) {
    std::ostringstream os;
    os << "largest entry outside the block structure is " << p.residual;
    throw Error(ErrorKind::NotInAlgebra, os.str(), p.residual);
  }
  return std::move(p.blocks);
}

HermitianMatrix reconstruct(const BlockFunction& bf, const TwoProjectionDecomposition& d) {
  if (bf.blocks.size() != d.angles.size()) {
    std::ostringstream os;
    os << bf.blocks.size() << " blocks given for " << d.angles.size() << " angles";
    throw Error(ErrorKind::ShapeMismatch, os.str());
  }
  for (int g = 0; g < 4; ++g) {
    if (d.split.dims[static_cast<std::size_t>(g)] > 0 && !bf.scalars[static_cast<std::size_t>(g)]) {
      throw Error(ErrorKind::ShapeMismatch, "missing scalar for a non-empty commutation-domain group");
    }
  }
  return HermitianMatrix::symmetrized(d.basis * block_matrix(bf, d) * d.basis.adjoint());
}

}  // namespace coex
