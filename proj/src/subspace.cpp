#include "grassop/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "grassop/errors.hpp"
#include "grassop/kernels.hpp"

namespace grassop {

namespace {

using Svd = Eigen::JacobiSVD<Matrix>;

std::size_t len(const Matrix& m) { return static_cast<std::size_t>(m.rows()); }

}  // namespace

void Tolerance::validate() const {
  if (!(rank_rel > 0.0 && rank_rel < 1e-3) || !(angle_abs > 0.0 && angle_abs < 1e-3)) {
    fail(ErrorKind::InvalidInput, "tolerances must lie in (0, 1e-3)");
  }
}

Subspace::Subspace(Index ambient_dim, Tolerance tol) : frame_(ambient_dim, 0), tol_(tol) {
  if (ambient_dim <= 0) {
    fail(ErrorKind::InvalidInput, "ambient dimension must be positive");
  }
  tol_.validate();
}

Subspace Subspace::from_frame(Matrix frame, Tolerance tol) {
  tol.validate();
  if (frame.rows() <= 0) {
    fail(ErrorKind::InvalidInput, "frame must have at least one row");
  }
  if (!all_finite(frame)) {
    fail(ErrorKind::InvalidInput, "frame has non-finite entries");
  }
  if (frame.cols() > frame.rows()) {
    fail(ErrorKind::InvalidInput, "frame has more columns than rows");
  }
  if (orthonormality_defect(frame) >= 10.0 * tol.angle_abs) {
    fail(ErrorKind::InvalidInput, "frame columns are not orthonormal");
  }
  return Subspace(std::move(frame), tol, true);
}

Subspace Subspace::full(Index ambient_dim, Tolerance tol) {
  return Subspace(Matrix::Identity(ambient_dim, ambient_dim), tol, true);
}

Matrix Subspace::projector() const { return frame_ * frame_.adjoint(); }

Subspace make_trusted(Matrix frame, Tolerance tol) { return Subspace(std::move(frame), tol, true); }

bool all_finite(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) {
    return 0.0;
  }
  Svd svd(m);
  return svd.singularValues()(0);
}

Matrix gram(const Matrix& f, const Matrix& g) {
  const auto& k = kernels::active();
  Matrix out(f.cols(), g.cols());
  for (Index j = 0; j < g.cols(); ++j) {
    for (Index i = 0; i < f.cols(); ++i) {
      out(i, j) = k.cdot(f.col(i).data(), g.col(j).data(), len(f));
    }
  }
  return out;
}

Matrix project_out(const Subspace& s, const Matrix& g) {
  const auto& k = kernels::active();
  const Matrix& f = s.frame();
  Matrix r = g;
  const Matrix c = gram(f, g);
  for (Index j = 0; j < r.cols(); ++j) {
    for (Index i = 0; i < f.cols(); ++i) {
      k.caxpy(-c(i, j), f.col(i).data(), r.col(j).data(), len(f));
    }
  }
  return r;
}

Matrix polish(Matrix frame) {
  const auto& k = kernels::active();
  const std::size_t n = len(frame);
  for (int pass = 0; pass < 2; ++pass) {
    for (Index j = 0; j < frame.cols(); ++j) {
      for (Index i = 0; i < j; ++i) {
        const auto c = k.cdot(frame.col(i).data(), frame.col(j).data(), n);
        k.caxpy(-c, frame.col(i).data(), frame.col(j).data(), n);
      }
      const double nrm = std::sqrt(k.norm2(frame.col(j).data(), n));
      if (nrm > 0.0) {
        frame.col(j) /= nrm;
      }
    }
  }
  return frame;
}

double orthonormality_defect(const Matrix& frame) {
  if (frame.cols() == 0) {
    return 0.0;
  }
  const Matrix g = gram(frame, frame);
  return (g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    fail(ErrorKind::DimensionMismatch, "ambient dimensions " + std::to_string(a.ambient_dim()) + " and " +
                                           std::to_string(b.ambient_dim()) + " differ");
  }
}

Subspace orthonormalize(const Matrix& vectors, Tolerance tol) {
  tol.validate();
  if (vectors.rows() <= 0) {
    fail(ErrorKind::InvalidInput, "vectors must have a positive ambient dimension");
  }
  if (!all_finite(vectors)) {
    fail(ErrorKind::InvalidInput, "non-finite entries");
  }
  if (vectors.cols() == 0) {
    return Subspace(vectors.rows(), tol);
  }
  Svd svd(vectors, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = tol.rank_rel * sv(0);
  Index r = 0;
  while (r < sv.size() && sv(r) > cutoff && sv(r) > 0.0) {
    ++r;
  }
  return make_trusted(svd.matrixU().leftCols(r), tol);
}

int numerical_rank(const Matrix& m, Tolerance tol, double reference_scale) {
  if (!all_finite(m)) {
    fail(ErrorKind::InvalidInput, "non-finite entries");
  }
  if (m.size() == 0) {
    return 0;
  }
  Svd svd(m);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) {
    return 0;
  }
  const double cutoff = tol.rank_rel * std::max(sv(0), reference_scale);
  int r = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) {
      ++r;
    }
  }
  return r;
}

namespace {

// SVD of (I - P_big) F_small: right singular vectors with small singular
// values span the intersection, left ones with large values extend `big`.
struct Residual {
  Svd svd;
  const Subspace* big;
  const Subspace* small;
};

Residual residual(const Subspace& a, const Subspace& b) {
  const Subspace& big = a.dim() >= b.dim() ? a : b;
  const Subspace& small = a.dim() >= b.dim() ? b : a;
  Matrix r = project_out(big, small.frame());
  return {Svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV), &big, &small};
}

}  // namespace

Subspace intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  if (a.is_zero() || b.is_zero()) {
    return Subspace(a.ambient_dim(), a.tol());
  }
  auto res = residual(a, b);
  const auto& sv = res.svd.singularValues();
  std::vector<Index> keep;
  for (Index i = sv.size() - 1; i >= 0; --i) {
    if (sv(i) < a.tol().angle_abs) {
      keep.push_back(i);
    }
  }
  Matrix coeffs(res.small->dim(), static_cast<Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    coeffs.col(static_cast<Index>(c)) = res.svd.matrixV().col(keep[c]);
  }
  return make_trusted(polish(res.small->frame() * coeffs), a.tol());
}

Subspace sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  if (b.is_zero()) {
    return a;
  }
  if (a.is_zero()) {
    return b;
  }
  auto res = residual(a, b);
  const auto& sv = res.svd.singularValues();
  Index extra = 0;
  while (extra < sv.size() && sv(extra) >= a.tol().angle_abs) {
    ++extra;
  }
  Matrix frame(a.ambient_dim(), res.big->dim() + extra);
  frame << res.big->frame(), res.svd.matrixU().leftCols(extra);
  return make_trusted(polish(std::move(frame)), a.tol());
}

Subspace complement(const Subspace& s, const std::optional<Subspace>& within) {
  const Subspace outer = within.value_or(Subspace::full(s.ambient_dim(), s.tol()));
  require_same_ambient(s, outer);
  if (!contains(outer, s)) {
    fail(ErrorKind::NotContained, "subspace is not contained in the enclosing space");
  }
  const Index want = outer.dim() - s.dim();
  if (want == 0) {
    return Subspace(s.ambient_dim(), s.tol());
  }
  if (s.is_zero()) {
    return make_trusted(outer.frame(), s.tol());
  }
  Matrix r = project_out(s, outer.frame());
  Svd svd(r, Eigen::ComputeThinU);
  return make_trusted(polish(svd.matrixU().leftCols(want)), s.tol());
}

std::vector<double> principal_angles(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  const Index p = std::min(a.dim(), b.dim());
  if (p == 0) {
    return {};
  }
  auto res = residual(a, b);
  const auto& sines = res.svd.singularValues();  // descending
  Svd cos_svd(gram(res.big->frame(), res.small->frame()));
  const auto& cosines = cos_svd.singularValues();  // descending
  std::vector<double> angles(static_cast<std::size_t>(p));
  for (Index k = 0; k < p; ++k) {
    const double s = std::min(1.0, sines(p - 1 - k));
    const double c = std::min(1.0, cosines(k));
    angles[static_cast<std::size_t>(k)] = s * s < 0.5 ? std::asin(s) : std::acos(c);
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

bool contains(const Subspace& outer, const Subspace& inner) {
  require_same_ambient(outer, inner);
  if (inner.is_zero()) {
    return true;
  }
  if (inner.dim() > outer.dim()) {
    return false;
  }
  return spectral_norm(project_out(outer, inner.frame())) < outer.tol().angle_abs;
}

bool equal(const Subspace& a, const Subspace& b) {
  return a.ambient_dim() == b.ambient_dim() && a.dim() == b.dim() && contains(a, b);
}

bool orthogonal(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  if (a.is_zero() || b.is_zero()) {
    return true;
  }
  return spectral_norm(gram(a.frame(), b.frame())) < a.tol().angle_abs;
}

bool subspaces_adjacent(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  if (a.dim() != b.dim()) {
    fail(ErrorKind::DimensionMismatch, "adjacency needs subspaces of equal dimension");
  }
  if (a.is_zero()) {
    return false;
  }
  return intersect(a, b).dim() == a.dim() - 1;
}

std::vector<Subspace> grassmann_path(const Subspace& x, const Subspace& y, const Subspace& ambient) {
  require_same_ambient(x, y);
  require_same_ambient(x, ambient);
  if (x.dim() != y.dim()) {
    fail(ErrorKind::DimensionMismatch, "path endpoints have different dimensions");
  }
  if (!contains(ambient, x) || !contains(ambient, y)) {
    fail(ErrorKind::NotContained, "path endpoints must lie in the ambient subspace");
  }
  const Subspace common = intersect(x, y);
  const Subspace xr = complement(common, x);
  const Subspace yr = complement(common, y);
  const Index steps = xr.dim();
  std::vector<Subspace> path{x};
  if (steps == 0) {
    return path;
  }
  // Principal vector pairs: x_k^H y_l = 0 for k != l, so every mixed
  // selection below is orthonormal.
  Svd svd(gram(xr.frame(), yr.frame()), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix xs = xr.frame() * svd.matrixU();
  const Matrix ys = yr.frame() * svd.matrixV();
  for (Index t = 1; t < steps; ++t) {
    Matrix frame(x.ambient_dim(), x.dim());
    frame << common.frame(), ys.leftCols(t), xs.rightCols(steps - t);
    path.push_back(make_trusted(polish(std::move(frame)), x.tol()));
  }
  path.push_back(y);
  return path;
}

}  // namespace grassop
