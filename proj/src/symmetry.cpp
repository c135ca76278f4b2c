#include "grassop/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "grassop/errors.hpp"

namespace grassop {

namespace {

Matrix conj_if(const Matrix& m, bool flag) { return flag ? Matrix(m.conjugate()) : m; }

double unitarity_defect(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

SpectralOperator in_class(const ClassSignature& sig, const SpectralOperator& a) {
  if (!same_signature(sig, a.signature())) {
    fail(ErrorKind::ClassMismatch, "operator is not in the class " + sig.describe());
  }
  std::vector<Subspace> spaces;
  for (int t = 0; t < sig.k(); ++t) {
    spaces.push_back(a.eigenspace(*a.signature().index_of(sig.eigenvalue(t))));
  }
  return make_operator(sig, std::move(spaces));
}

IndexPair random_pair(int k, Rng& rng) {
  const int i = rng.uniform_int(0, k - 1);
  int j = rng.uniform_int(0, k - 2);
  if (j >= i) {
    ++j;
  }
  return IndexPair::of(i, j);
}

}  // namespace

Symmetry Symmetry::make(ClassSignature sig, Matrix u, bool antiunitary, Permutation delta) {
  if (u.rows() != sig.ambient_dim() || u.cols() != sig.ambient_dim()) {
    fail(ErrorKind::DimensionMismatch, "matrix must be N x N");
  }
  if (!all_finite(u) || unitarity_defect(u) > 1e-10) {
    fail(ErrorKind::NotUnitary, "matrix is not unitary within 1e-10");
  }
  if (delta.size() != sig.k() || !delta.in_sd(sig)) {
    fail(ErrorKind::NotInSd, "permutation does not preserve multiplicities");
  }
  return Symmetry{std::move(sig), std::move(u), antiunitary, std::move(delta)};
}

Symmetry Symmetry::identity(const ClassSignature& sig) {
  return Symmetry{sig, Matrix::Identity(sig.ambient_dim(), sig.ambient_dim()), false, Permutation::identity(sig.k())};
}

SpectralOperator apply_symmetry(const Symmetry& s, const SpectralOperator& a) {
  const SpectralOperator relabeled = apply_permutation(s.permutation, in_class(s.signature, a));
  std::vector<Subspace> spaces;
  for (const auto& x : relabeled.eigenspaces()) {
    spaces.push_back(make_trusted(polish(s.matrix * conj_if(x.frame(), s.antiunitary)), x.tol()));
  }
  return make_operator(s.signature, std::move(spaces));
}

Symmetry compose(const Symmetry& s1, const Symmetry& s2) {
  if (!identical_signature(s1.signature, s2.signature)) {
    fail(ErrorKind::SignatureMismatch, "symmetries act on different classes");
  }
  return Symmetry{s1.signature, s1.matrix * conj_if(s2.matrix, s1.antiunitary), s1.antiunitary != s2.antiunitary,
                  compose(s2.permutation, s1.permutation)};
}

Symmetry inverse(const Symmetry& s) {
  Matrix m = s.antiunitary ? Matrix(s.matrix.transpose()) : Matrix(s.matrix.adjoint());
  return Symmetry{s.signature, std::move(m), s.antiunitary, s.permutation.inverse()};
}

bool commutation_check(const Matrix& u, bool antiunitary, const Permutation& delta,
                       const std::vector<SpectralOperator>& samples) {
  auto conjugate_by = [&](const Matrix& m) -> Matrix { return u * conj_if(m, antiunitary) * u.adjoint(); };
  try {
    for (const auto& a : samples) {
      const Matrix left = conjugate_by(to_matrix(apply_permutation(delta, a)));
      const SpectralOperator moved = from_matrix(conjugate_by(to_matrix(a)), a.signature());
      const Matrix right = to_matrix(apply_permutation(delta, moved));
      if (max_abs(left - right) > 1e-9 * std::max(1.0, a.signature().scale())) {
        return false;
      }
    }
  } catch (const Error&) {
    return false;
  }
  return true;
}

IndexPair adjacency_type_transport(const Symmetry& s, IndexPair pair) {
  const int k = s.signature.k();
  if (pair.first == pair.second || pair.first < 0 || pair.second < 0 || pair.first >= k || pair.second >= k) {
    fail(ErrorKind::BadIndices, "need two distinct indices in [0, " + std::to_string(k) + ")");
  }
  const Permutation inv = s.permutation.inverse();
  const IndexPair image = IndexPair::of(inv(pair.first), inv(pair.second));
  const auto& sig = s.signature;
  const bool kept = sig.multiplicity(image.first) == sig.multiplicity(pair.first) &&
                    sig.multiplicity(image.second) == sig.multiplicity(pair.second);
  const bool swapped = sig.multiplicity(image.first) == sig.multiplicity(pair.second) &&
                       sig.multiplicity(image.second) == sig.multiplicity(pair.first);
  if (!kept && !swapped) {
    fail(ErrorKind::InternalInconsistency, "transported type changes the multiplicities");
  }
  return image;
}

AutomorphismReport verify_automorphism(const Symmetry& s, int pairs, Rng& rng) {
  AutomorphismReport report;
  const Symmetry back = inverse(s);
  const auto& sig = s.signature;
  auto check = [&](const SpectralOperator& a, const SpectralOperator& b, std::optional<IndexPair> type) {
    const SpectralOperator fa = apply_symmetry(s, a);
    const SpectralOperator fb = apply_symmetry(s, b);
    const auto v = is_adjacent(fa, fb);
    if (v.adjacent() != type.has_value()) {
      ++report.adjacency_failures;
    } else if (type) {
      if (*v.type_pair != adjacency_type_transport(s, *type)) {
        ++report.type_failures;
      }
      const std::pair<IndexPair, IndexPair> seen{*type, *v.type_pair};
      if (std::find(report.transport.begin(), report.transport.end(), seen) == report.transport.end()) {
        report.transport.push_back(seen);
      }
    }
    if (!same_operator(apply_symmetry(back, fa), a) || !same_operator(apply_symmetry(back, fb), b)) {
      ++report.inverse_failures;
    }
  };
  for (int t = 0; t < pairs; ++t) {
    const SpectralOperator a = random_operator(sig, rng);
    const IndexPair type = random_pair(sig.k(), rng);
    check(a, make_ij_adjacent(a, type.first, type.second, rng), type);
    ++report.adjacent_pairs;

    const SpectralOperator b = random_operator(sig, rng);
    if (!is_adjacent(a, b).adjacent()) {
      check(a, b, std::nullopt);
      ++report.non_adjacent_pairs;
    }
  }
  return report;
}

FrameMapReport verify_frame_map(const Matrix& v, bool antilinear, const ClassSignature& sig, int trials, Rng& rng) {
  if (v.rows() != sig.ambient_dim() || v.cols() != sig.ambient_dim()) {
    fail(ErrorKind::DimensionMismatch, "matrix must be N x N");
  }
  FrameMapReport report;
  auto image = [&](const SpectralOperator& a) {
    std::vector<Subspace> spaces;
    for (const auto& x : a.eigenspaces()) {
      spaces.push_back(orthonormalize(v * conj_if(x.frame(), antilinear), x.tol()));
    }
    return spaces;
  };
  for (int t = 0; t < trials; ++t) {
    ++report.trials;
    const SpectralOperator a = random_operator(sig, rng);
    const IndexPair type = random_pair(sig.k(), rng);
    const SpectralOperator b = make_ij_adjacent(a, type.first, type.second, rng);
    const auto fa = image(a);
    bool orthogonal_images = true;
    for (std::size_t p = 0; p < fa.size(); ++p) {
      for (std::size_t q = p + 1; q < fa.size(); ++q) {
        orthogonal_images = orthogonal_images && orthogonal(fa[p], fa[q]);
      }
    }
    if (!orthogonal_images) {
      ++report.orthogonality_failures;
    }
    try {
      const SpectralOperator ia = make_operator(sig, fa);
      const SpectralOperator ib = make_operator(sig, image(b));
      if (!is_adjacent(ia, ib).adjacent()) {
        ++report.adjacency_failures;
      }
    } catch (const Error&) {
      ++report.class_failures;
    }
  }
  return report;
}

SemilinearMap SemilinearMap::make(Matrix v, bool antilinear) {
  if (v.rows() != v.cols() || v.rows() == 0 || !all_finite(v)) {
    fail(ErrorKind::InvalidInput, "semilinear map needs a finite square matrix");
  }
  const auto sv = Eigen::JacobiSVD<Matrix>(v).singularValues();
  if (!(sv(sv.size() - 1) > Tolerance{}.rank_rel * sv(0))) {
    fail(ErrorKind::NotInvertible, "matrix is numerically singular");
  }
  return SemilinearMap{std::move(v), antilinear};
}

SemilinearMap compose(const SemilinearMap& v, const SemilinearMap& w) {
  return SemilinearMap::make(v.matrix * conj_if(w.matrix, v.antilinear), v.antilinear != w.antilinear);
}

SpectralOperator SemilinearK2Map::operator()(const SpectralOperator& a) const {
  const SpectralOperator aligned = in_class(sig_, a);
  const Subspace& x = aligned.eigenspace(0);
  const Subspace first = orthonormalize(v_.apply(x.frame()), x.tol());
  return make_operator(sig_, {first, complement(first)});
}

SemilinearK2Map semilinear_k2_automorphism(const SemilinearMap& v, const ClassSignature& sig) {
  if (sig.k() != 2) {
    fail(ErrorKind::RequiresKEquals2, "the semilinear family is defined for two eigenvalues");
  }
  if (v.matrix.rows() != sig.ambient_dim()) {
    fail(ErrorKind::DimensionMismatch, "matrix must be N x N");
  }
  return SemilinearK2Map(v, sig);
}

OrthogonalityVerdict orthogonality_defect(const SemilinearMap& v, int trials, Rng& rng) {
  const Index n = v.matrix.rows();
  auto preserved = [&](const Vector& x, const Vector& y) {
    const Matrix fx = v.apply(x);
    const Matrix fy = v.apply(y);
    const double ip = std::abs((fx.adjoint() * fy)(0, 0));
    return ip <= 1e-9 * fx.norm() * fy.norm();
  };
  OrthogonalityVerdict verdict;
  verdict.antiunitary = v.antilinear;
  for (Index a = 0; a < n; ++a) {
    for (Index b = a + 1; b < n; ++b) {
      const Vector ea = Vector::Unit(n, a);
      const Vector eb = Vector::Unit(n, b);
      if (!preserved(ea, eb) || !preserved(ea + eb, ea - eb)) {
        return verdict;
      }
    }
  }
  for (int t = 0; t < trials; ++t) {
    const Vector x = rng.unit_vector(n);
    Vector y = rng.unit_vector(n);
    y -= x * x.dot(y);
    if (y.norm() < 1e-6) {
      continue;
    }
    if (!preserved(x, y)) {
      return verdict;
    }
  }
  verdict.preserves = true;
  const double c = v.apply(Vector::Unit(n, 0)).norm();
  if (unitarity_defect(v.matrix / c) <= 1e-9) {
    verdict.scale = c;
  }
  return verdict;
}

}  // namespace grassop
