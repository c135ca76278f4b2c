#include "grassop/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "grassop/errors.hpp"

namespace grassop {

namespace {

constexpr double kMinEigenvalueGap = 1e-6;

bool eigenvalues_match(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

}  // namespace

ClassSignature ClassSignature::make(std::vector<double> eigenvalues, std::vector<int> multiplicities) {
  if (eigenvalues.size() != multiplicities.size()) {
    fail(ErrorKind::InvalidSignature, "eigenvalue and multiplicity lists differ in length");
  }
  if (eigenvalues.size() < 2) {
    fail(ErrorKind::InvalidSignature, "a class needs at least two distinct eigenvalues");
  }
  for (double a : eigenvalues) {
    if (!std::isfinite(a)) {
      fail(ErrorKind::InvalidSignature, "non-finite eigenvalue");
    }
  }
  for (int n : multiplicities) {
    if (n < 1) {
      fail(ErrorKind::InvalidSignature, "multiplicities must be positive");
    }
  }
  ClassSignature sig;
  sig.eigenvalues_ = std::move(eigenvalues);
  sig.multiplicities_ = std::move(multiplicities);
  sig.ambient_ = std::accumulate(sig.multiplicities_.begin(), sig.multiplicities_.end(), Index{0});
  if (sig.min_gap() <= kMinEigenvalueGap) {
    fail(ErrorKind::InvalidSignature, "eigenvalues must be pairwise separated by more than 1e-6");
  }
  return sig;
}

double ClassSignature::min_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
    for (std::size_t j = i + 1; j < eigenvalues_.size(); ++j) {
      gap = std::min(gap, std::abs(eigenvalues_[i] - eigenvalues_[j]));
    }
  }
  return gap;
}

double ClassSignature::scale() const {
  double s = 0.0;
  for (double a : eigenvalues_) {
    s = std::max(s, std::abs(a));
  }
  return s;
}

std::optional<int> ClassSignature::index_of(double a) const {
  for (int i = 0; i < k(); ++i) {
    if (eigenvalues_match(eigenvalues_[static_cast<std::size_t>(i)], a)) {
      return i;
    }
  }
  return std::nullopt;
}

ClassSignature ClassSignature::canonical() const {
  std::vector<int> order(static_cast<std::size_t>(k()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const auto ux = static_cast<std::size_t>(x);
    const auto uy = static_cast<std::size_t>(y);
    if (multiplicities_[ux] != multiplicities_[uy]) {
      return multiplicities_[ux] > multiplicities_[uy];
    }
    return eigenvalues_[ux] < eigenvalues_[uy];
  });
  std::vector<double> ev;
  std::vector<int> mult;
  for (int i : order) {
    ev.push_back(eigenvalues_[static_cast<std::size_t>(i)]);
    mult.push_back(multiplicities_[static_cast<std::size_t>(i)]);
  }
  return make(std::move(ev), std::move(mult));
}

std::string ClassSignature::describe() const {
  std::ostringstream os;
  os << "sigma={";
  for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
    os << (i ? "," : "") << eigenvalues_[i];
  }
  os << "} d={";
  for (std::size_t i = 0; i < multiplicities_.size(); ++i) {
    os << (i ? "," : "") << multiplicities_[i];
  }
  os << "}";
  return os.str();
}

bool same_signature(const ClassSignature& a, const ClassSignature& b) {
  if (a.k() != b.k() || a.ambient_dim() != b.ambient_dim()) {
    return false;
  }
  for (int i = 0; i < a.k(); ++i) {
    auto j = b.index_of(a.eigenvalue(i));
    if (!j || b.multiplicity(*j) != a.multiplicity(i)) {
      return false;
    }
  }
  return true;
}

bool identical_signature(const ClassSignature& a, const ClassSignature& b) {
  if (a.k() != b.k() || a.ambient_dim() != b.ambient_dim()) {
    return false;
  }
  for (int i = 0; i < a.k(); ++i) {
    if (!eigenvalues_match(a.eigenvalue(i), b.eigenvalue(i)) || a.multiplicity(i) != b.multiplicity(i)) {
      return false;
    }
  }
  return true;
}

ClassSignature infer_signature(const Matrix& m, double merge_rel) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    fail(ErrorKind::DimensionMismatch, "expected a non-empty square matrix");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<double> values;
  std::vector<int> mult;
  double running = 0.0;
  for (Index i = 0; i < ev.size(); ++i) {
    if (i > 0 && ev(i) - ev(i - 1) <= merge_rel * scale) {
      running += ev(i);
      ++mult.back();
      values.back() = running / mult.back();
    } else {
      running = ev(i);
      values.push_back(ev(i));
      mult.push_back(1);
    }
  }
  for (double& v : values) {
    if (std::abs(v) <= merge_rel * scale) {
      v = 0.0;
    }
  }
  return ClassSignature::make(std::move(values), std::move(mult));
}

Permutation Permutation::identity(int k) {
  Permutation p;
  p.images.resize(static_cast<std::size_t>(k));
  std::iota(p.images.begin(), p.images.end(), 0);
  return p;
}

Permutation Permutation::swap(int k, int a, int b) {
  Permutation p = identity(k);
  std::swap(p.images.at(static_cast<std::size_t>(a)), p.images.at(static_cast<std::size_t>(b)));
  return p;
}

bool Permutation::is_bijection() const {
  std::vector<bool> seen(images.size(), false);
  for (int v : images) {
    if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)]) {
      return false;
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

bool Permutation::in_sd(const ClassSignature& sig) const {
  if (size() != sig.k() || !is_bijection()) {
    return false;
  }
  for (int i = 0; i < size(); ++i) {
    if (sig.multiplicity((*this)(i)) != sig.multiplicity(i)) {
      return false;
    }
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation inv;
  inv.images.resize(images.size());
  for (int i = 0; i < size(); ++i) {
    inv.images[static_cast<std::size_t>((*this)(i))] = i;
  }
  return inv;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) {
    fail(ErrorKind::DimensionMismatch, "permutations act on different index sets");
  }
  Permutation r;
  r.images.resize(q.images.size());
  for (int i = 0; i < q.size(); ++i) {
    r.images[static_cast<std::size_t>(i)] = p(q(i));
  }
  return r;
}

SpectralOperator make_operator(ClassSignature sig, std::vector<Subspace> frames) {
  if (static_cast<int>(frames.size()) != sig.k()) {
    fail(ErrorKind::DimensionMismatch, "expected one eigenspace per eigenvalue");
  }
  for (int i = 0; i < sig.k(); ++i) {
    const Subspace& s = frames[static_cast<std::size_t>(i)];
    if (s.ambient_dim() != sig.ambient_dim()) {
      fail(ErrorKind::DimensionMismatch, "eigenspace lives in the wrong ambient space");
    }
    if (s.dim() != sig.multiplicity(i)) {
      fail(ErrorKind::DimensionMismatch, "eigenspace " + std::to_string(i) + " has dimension " +
                                             std::to_string(s.dim()) + ", expected " +
                                             std::to_string(sig.multiplicity(i)));
    }
  }
  for (std::size_t i = 0; i < frames.size(); ++i) {
    for (std::size_t j = i + 1; j < frames.size(); ++j) {
      const double overlap = spectral_norm(gram(frames[i].frame(), frames[j].frame()));
      if (overlap >= 10.0 * frames[i].tol().angle_abs) {
        fail(ErrorKind::NonOrthogonalEigenspaces,
             "eigenspaces " + std::to_string(i) + " and " + std::to_string(j) + " are not orthogonal");
      }
    }
  }
  return SpectralOperator(std::move(sig), std::move(frames));
}

Matrix to_matrix(const SpectralOperator& a) {
  const Index n = a.ambient_dim();
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < a.k(); ++i) {
    const Matrix& f = a.eigenspace(i).frame();
    m += a.signature().eigenvalue(i) * (f * f.adjoint());
  }
  return m;
}

SpectralOperator from_matrix(const Matrix& m, const ClassSignature& sig, Tolerance tol) {
  if (m.rows() != sig.ambient_dim() || m.cols() != sig.ambient_dim()) {
    fail(ErrorKind::DimensionMismatch, "matrix size does not match the signature");
  }
  if (!all_finite(m)) {
    fail(ErrorKind::InvalidInput, "non-finite entries");
  }
  const double mmax = m.cwiseAbs().maxCoeff();
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * mmax) {
    fail(ErrorKind::NotHermitian, "matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig((m + m.adjoint()) / 2.0);
  const auto& ev = eig.eigenvalues();
  const double radius = sig.cluster_radius();
  std::vector<std::vector<Index>> clusters(static_cast<std::size_t>(sig.k()));
  for (Index t = 0; t < ev.size(); ++t) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < sig.k(); ++i) {
      const double dist = std::abs(ev(t) - sig.eigenvalue(i));
      if (dist < best_dist) {
        best_dist = dist;
        best = i;
      }
    }
    if (best_dist >= radius) {
      fail(ErrorKind::SpectrumMismatch, "eigenvalue " + std::to_string(ev(t)) + " is not near the spectrum");
    }
    clusters[static_cast<std::size_t>(best)].push_back(t);
  }
  std::vector<Subspace> frames;
  for (int i = 0; i < sig.k(); ++i) {
    const auto& idx = clusters[static_cast<std::size_t>(i)];
    if (static_cast<int>(idx.size()) != sig.multiplicity(i)) {
      fail(ErrorKind::SpectrumMismatch, "eigenvalue " + std::to_string(sig.eigenvalue(i)) + " has multiplicity " +
                                            std::to_string(idx.size()) + ", expected " +
                                            std::to_string(sig.multiplicity(i)));
    }
    Matrix f(m.rows(), static_cast<Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) {
      f.col(static_cast<Index>(c)) = eig.eigenvectors().col(idx[c]);
    }
    frames.push_back(make_trusted(std::move(f), tol));
  }
  return make_operator(sig, std::move(frames));
}

bool same_class(const SpectralOperator& a, const SpectralOperator& b) {
  return same_signature(a.signature(), b.signature());
}

std::vector<Subspace> aligned_eigenspaces(const SpectralOperator& reference, const SpectralOperator& other) {
  if (!same_class(reference, other)) {
    fail(ErrorKind::ClassMismatch, reference.signature().describe() + " vs " + other.signature().describe());
  }
  std::vector<Subspace> out;
  out.reserve(static_cast<std::size_t>(reference.k()));
  for (int i = 0; i < reference.k(); ++i) {
    out.push_back(other.eigenspace(*other.signature().index_of(reference.signature().eigenvalue(i))));
  }
  return out;
}

bool same_operator(const SpectralOperator& a, const SpectralOperator& b) {
  if (!same_class(a, b)) {
    return false;
  }
  const auto other = aligned_eigenspaces(a, b);
  for (int i = 0; i < a.k(); ++i) {
    if (!equal(a.eigenspace(i), other[static_cast<std::size_t>(i)])) {
      return false;
    }
  }
  return true;
}

Subspace image_of(const SpectralOperator& a) {
  Subspace img(a.ambient_dim(), a.eigenspace(0).tol());
  for (int i = 0; i < a.k(); ++i) {
    if (a.signature().eigenvalue(i) != 0.0) {
      img = sum(img, a.eigenspace(i));
    }
  }
  return img;
}

std::vector<Permutation> sd_group(const ClassSignature& sig) {
  if (sig.k() > 8) {
    fail(ErrorKind::TooManyEigenvalues, "S(d) enumeration is limited to k <= 8");
  }
  std::vector<Permutation> out;
  Permutation p = Permutation::identity(sig.k());
  do {
    if (p.in_sd(sig)) {
      out.push_back(p);
    }
  } while (std::next_permutation(p.images.begin(), p.images.end()));
  return out;
}

SpectralOperator apply_permutation(const Permutation& delta, const SpectralOperator& a) {
  if (!delta.in_sd(a.signature())) {
    fail(ErrorKind::NotInSd, "permutation does not preserve multiplicities");
  }
  std::vector<Subspace> frames;
  frames.reserve(static_cast<std::size_t>(a.k()));
  for (int i = 0; i < a.k(); ++i) {
    frames.push_back(a.eigenspace(delta(i)));
  }
  return make_operator(a.signature(), std::move(frames));
}

SpectralOperator random_operator(const ClassSignature& sig, Rng& rng, Tolerance tol) {
  const Matrix u = rng.unitary(sig.ambient_dim());
  std::vector<Subspace> frames;
  Index col = 0;
  for (int i = 0; i < sig.k(); ++i) {
    frames.push_back(make_trusted(u.middleCols(col, sig.multiplicity(i)), tol));
    col += sig.multiplicity(i);
  }
  return make_operator(sig, std::move(frames));
}

}  // namespace grassop
