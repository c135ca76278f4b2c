#include "grassop/adjacency.hpp"

#include <cmath>
#include <numbers>

#include "grassop/errors.hpp"

namespace grassop {

namespace {

void require_same_class(const SpectralOperator& a, const SpectralOperator& b) {
  if (!same_class(a, b)) {
    fail(ErrorKind::ClassMismatch, a.signature().describe() + " vs " + b.signature().describe());
  }
}

void require_hermitian(const Matrix& m, const char* name) {
  if (m.rows() != m.cols()) {
    fail(ErrorKind::DimensionMismatch, std::string(name) + " is not square");
  }
  if (!all_finite(m)) {
    fail(ErrorKind::InvalidInput, std::string(name) + " has non-finite entries");
  }
  const double mmax = m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * mmax) {
    fail(ErrorKind::NotHermitian, std::string(name) + " is not Hermitian");
  }
}

// The difference B - A expressed in A's index order.
Matrix difference(const SpectralOperator& a, const SpectralOperator& b) { return to_matrix(b) - to_matrix(a); }

Subspace leading_image(const Matrix& d, Index count, Tolerance tol) {
  Eigen::JacobiSVD<Matrix> svd(d, Eigen::ComputeThinU);
  return make_trusted(svd.matrixU().leftCols(count), tol);
}

}  // namespace

RankTwoCheck condition_a1(const SpectralOperator& a, const SpectralOperator& b, Tolerance tol) {
  require_same_class(a, b);
  const int rank = numerical_rank(difference(a, b), tol, a.signature().scale());
  return {rank == 2, rank};
}

bool is_invariant(const Matrix& m, const Subspace& s, double rel) {
  if (s.is_zero()) {
    return true;
  }
  const Matrix image = m * s.frame();
  return spectral_norm(project_out(s, image)) < rel * spectral_norm(m);
}

bool condition_a2(const SpectralOperator& a, const SpectralOperator& b, Tolerance tol) {
  if (!condition_a1(a, b, tol).holds) {
    fail(ErrorKind::PreconditionViolated, "condition (A2) is only defined when rank(B - A) = 2");
  }
  const Subspace s = leading_image(difference(a, b), 2, tol);
  return is_invariant(to_matrix(a), s);
}

SubspaceRelation relate(const Subspace& x, const Subspace& y) {
  if (x.dim() != y.dim()) {
    return SubspaceRelation::Other;
  }
  if (equal(x, y)) {
    return SubspaceRelation::Equal;
  }
  return intersect(x, y).dim() == x.dim() - 1 ? SubspaceRelation::Adjacent : SubspaceRelation::Other;
}

std::optional<IndexPair> classify_adjacency(const SpectralOperator& a, const SpectralOperator& b) {
  const auto other = aligned_eigenspaces(a, b);
  std::vector<int> moved;
  for (int t = 0; t < a.k(); ++t) {
    switch (relate(a.eigenspace(t), other[static_cast<std::size_t>(t)])) {
      case SubspaceRelation::Equal:
        break;
      case SubspaceRelation::Adjacent:
        moved.push_back(t);
        break;
      case SubspaceRelation::Other:
        return std::nullopt;
    }
  }
  if (moved.size() != 2) {
    return std::nullopt;
  }
  return IndexPair::of(moved[0], moved[1]);
}

ImageRelation image_relation(const SpectralOperator& a, const SpectralOperator& b) {
  require_same_class(a, b);
  switch (relate(image_of(a), image_of(b))) {
    case SubspaceRelation::Equal:
      return ImageRelation::Equal;
    case SubspaceRelation::Adjacent:
      return ImageRelation::Adjacent;
    case SubspaceRelation::Other:
      break;
  }
  return ImageRelation::Other;
}

AdjacencyVerdict is_adjacent(const SpectralOperator& a, const SpectralOperator& b, Tolerance tol) {
  require_same_class(a, b);
  AdjacencyVerdict v;
  const Matrix d = difference(a, b);
  v.diff_rank = numerical_rank(d, tol, a.signature().scale());
  v.a1 = v.diff_rank == 2;
  if (!v.a1) {
    return v;
  }
  v.image_of_diff = leading_image(d, 2, tol);
  v.a2 = is_invariant(to_matrix(a), *v.image_of_diff);
  if (v.a2) {
    v.type_pair = classify_adjacency(a, b);
    if (!v.type_pair) {
      fail(ErrorKind::InternalInconsistency,
           "(A1) and (A2) hold but no pair of adjacent eigenspaces was found; tolerance failure");
    }
  }
  return v;
}

bool adjacency_oracle_agrees(const SpectralOperator& a, const SpectralOperator& b, Tolerance tol) {
  require_same_class(a, b);
  const Matrix d = difference(a, b);
  bool predicate = numerical_rank(d, tol, a.signature().scale()) == 2;
  if (predicate) {
    predicate = is_invariant(to_matrix(a), leading_image(d, 2, tol));
  }
  return predicate == classify_adjacency(a, b).has_value();
}

SpectralOperator make_ij_adjacent(const SpectralOperator& a, int i, int j, Rng& rng) {
  if (i == j || i < 0 || j < 0 || i >= a.k() || j >= a.k()) {
    fail(ErrorKind::BadIndices, "make_ij_adjacent needs two distinct valid indices");
  }
  const Subspace& xi = a.eigenspace(i);
  const Subspace& xj = a.eigenspace(j);
  const Tolerance tol = xi.tol();
  const Vector u = xi.frame() * rng.unit_vector(xi.dim());
  const Vector w = xj.frame() * rng.unit_vector(xj.dim());
  double phi = 0.0;
  do {
    phi = rng.uniform(0.0, std::numbers::pi / 2.0);
  } while (phi < 1e-3 || phi > std::numbers::pi / 2.0 - 1e-3);
  const Vector rotated = std::cos(phi) * u + std::sin(phi) * w;

  const Subspace kept = complement(make_trusted(u, tol), xi);
  Matrix frame(a.ambient_dim(), xi.dim());
  frame << kept.frame(), rotated;
  const Subspace x = make_trusted(polish(std::move(frame)), tol);
  const Subspace y = complement(x, sum(xi, xj));

  std::vector<Subspace> spaces = a.eigenspaces();
  spaces[static_cast<std::size_t>(i)] = x;
  spaces[static_cast<std::size_t>(j)] = y;
  return make_operator(a.signature(), std::move(spaces));
}

std::pair<SpectralOperator, SpectralOperator> pseudo_adjacent_c3() {
  Matrix ma(3, 3);
  ma << 3, 1, 0,
        1, 1, 0,
        0, 0, 0;
  Matrix mb(3, 3);
  mb << 3, 0, 1,
        0, 0, 0,
        1, 0, 1;
  ma /= 2.0;
  mb /= 2.0;
  const ClassSignature sig = infer_signature(ma);
  return {from_matrix(ma, sig), from_matrix(mb, sig)};
}

PseudoAdjacentInstance pseudo_adjacent_general(const Matrix& c, const Subspace& x, double a, Rng& rng,
                                               Tolerance tol) {
  require_hermitian(c, "C");
  const Index n = c.rows();
  if (x.ambient_dim() != n || x.dim() != 1) {
    fail(ErrorKind::DimensionMismatch, "X must be a line in the space C acts on");
  }
  if (a == 0.0 || !std::isfinite(a)) {
    fail(ErrorKind::InvalidInput, "the scalar a must be finite and non-zero");
  }
  const Subspace image_c = orthonormalize(c, tol);
  if (contains(image_c, x)) {
    fail(ErrorKind::DegenerateInput, "X lies inside Im(C)");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig((c + c.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  const double cmax = eig.eigenvalues().cwiseAbs().maxCoeff();
  for (Index t = 0; t < eig.eigenvalues().size(); ++t) {
    const double lambda = eig.eigenvalues()(t);
    if (std::abs(lambda) > tol.rank_rel * cmax && std::abs(lambda - a) <= 1e-6) {
      fail(ErrorKind::DegenerateInput, "a collides with an eigenvalue of C");
    }
  }
  const Subspace m_space = sum(image_c, x);
  if (m_space.dim() >= n) {
    fail(ErrorKind::DegenerateInput, "Im(C) + X fills the space; no room for a second hyperplane");
  }
  const Vector u = complement(image_c, m_space).frame().col(0);
  const Subspace outside = complement(m_space);
  const Vector w = outside.frame() * rng.unit_vector(outside.dim());

  // Quarter turn in span{u, w}: u -> w, w -> -u, identity elsewhere.
  const Matrix rot = Matrix::Identity(n, n) - u * u.adjoint() - w * w.adjoint() + w * u.adjoint() -
                     u * w.adjoint();
  const Vector xv = x.frame().col(0);
  const Vector yv = rot * xv;
  const Matrix ma = c + a * (xv * xv.adjoint());
  const Matrix mb = c + a * (yv * yv.adjoint());

  ClassSignature sig = [&] {
    try {
      return infer_signature(ma);
    } catch (const Error& e) {
      fail(ErrorKind::DegenerateInput, std::string("spectrum of A is degenerate: ") + e.what());
    }
  }();

  Matrix n_frame(n, image_c.dim() + 1);
  n_frame << image_c.frame(), w;
  PseudoAdjacentInstance out{from_matrix(ma, sig, tol), from_matrix(mb, sig, tol), image_c, m_space,
                             make_trusted(polish(std::move(n_frame)), tol)};
  out.x_orthogonal_to_common = orthogonal(image_c, x);
  const auto a1 = condition_a1(out.a, out.b, tol);
  out.a1 = a1.holds;
  out.a2 = out.a1 && condition_a2(out.a, out.b, tol);
  out.adjacent = out.a1 && out.a2;
  return out;
}

bool image_direct_sum_check(const Matrix& t, const Matrix& q, Tolerance tol) {
  require_hermitian(t, "T");
  require_hermitian(q, "Q");
  if (t.rows() != q.rows()) {
    fail(ErrorKind::DimensionMismatch, "T and Q act on different spaces");
  }
  const Subspace image_t = orthonormalize(t, tol);
  const Subspace image_q = orthonormalize(q, tol);
  if (!intersect(image_t, image_q).is_zero()) {
    fail(ErrorKind::PreconditionViolated, "Im(T) and Im(Q) intersect non-trivially");
  }
  const double scale = std::max(spectral_norm(t), spectral_norm(q));
  const int rank_sum = numerical_rank(t + q, tol, scale);
  return rank_sum == image_t.dim() + image_q.dim();
}

}  // namespace grassop
