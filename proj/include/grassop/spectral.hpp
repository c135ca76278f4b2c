#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grassop/random.hpp"
#include "grassop/subspace.hpp"

namespace grassop {

// (sigma, d): distinct real eigenvalues paired positionally with their
// multiplicities. Indices are 0-based throughout the library.
class ClassSignature {
 public:
  // Validates: k >= 2, equal lengths, positive multiplicities, pairwise
  // eigenvalue gap > 1e-6. The ambient dimension is the multiplicity sum.
  static ClassSignature make(std::vector<double> eigenvalues, std::vector<int> multiplicities);

  int k() const { return static_cast<int>(eigenvalues_.size()); }
  Index ambient_dim() const { return ambient_; }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  const std::vector<int>& multiplicities() const { return multiplicities_; }
  double eigenvalue(int i) const { return eigenvalues_.at(static_cast<std::size_t>(i)); }
  int multiplicity(int i) const { return multiplicities_.at(static_cast<std::size_t>(i)); }

  double min_gap() const;
  // Eigen-clustering radius used by from_matrix.
  double cluster_radius() const { return min_gap() / 4.0; }
  // max |a_i|
  double scale() const;
  // Index whose eigenvalue matches `a` to within 1e-9 relative, if any.
  std::optional<int> index_of(double a) const;

  // Descending multiplicity, then ascending eigenvalue.
  ClassSignature canonical() const;

  std::string describe() const;

 private:
  std::vector<double> eigenvalues_;
  std::vector<int> multiplicities_;
  Index ambient_ = 0;
};

// Equal as sets of (eigenvalue, multiplicity) pairs with equal N.
bool same_signature(const ClassSignature& a, const ClassSignature& b);

// Same pairs in the same positions.
bool identical_signature(const ClassSignature& a, const ClassSignature& b);

// Clusters the eigenvalues of a Hermitian matrix (ascending order) with the
// given relative merge tolerance. A cluster within that tolerance of zero is
// recorded as exactly 0.
ClassSignature infer_signature(const Matrix& m, double merge_rel = 1e-8);

// A bijection on {0, ..., k-1}.
struct Permutation {
  std::vector<int> images;

  static Permutation identity(int k);
  // transposition of a and b on k points
  static Permutation swap(int k, int a, int b);

  int size() const { return static_cast<int>(images.size()); }
  int operator()(int i) const { return images.at(static_cast<std::size_t>(i)); }
  bool is_bijection() const;
  bool in_sd(const ClassSignature& sig) const;
  Permutation inverse() const;
  bool operator==(const Permutation&) const = default;
};

// (p o q)(i) = p(q(i))
Permutation compose(const Permutation& p, const Permutation& q);

// An element of G(sigma, d): one eigenspace per eigenvalue.
class SpectralOperator {
 public:
  const ClassSignature& signature() const { return signature_; }
  const std::vector<Subspace>& eigenspaces() const { return eigenspaces_; }
  const Subspace& eigenspace(int i) const { return eigenspaces_.at(static_cast<std::size_t>(i)); }
  int k() const { return signature_.k(); }
  Index ambient_dim() const { return signature_.ambient_dim(); }

 private:
  SpectralOperator(ClassSignature sig, std::vector<Subspace> spaces)
      : signature_(std::move(sig)), eigenspaces_(std::move(spaces)) {}

  ClassSignature signature_;
  std::vector<Subspace> eigenspaces_;

  friend SpectralOperator make_operator(ClassSignature sig, std::vector<Subspace> frames);
};

// Throws DimensionMismatch (count, ambient or dimension errors) and
// NonOrthogonalEigenspaces.
SpectralOperator make_operator(ClassSignature sig, std::vector<Subspace> frames);

// sum_i a_i F_i F_i^H
Matrix to_matrix(const SpectralOperator& a);

SpectralOperator from_matrix(const Matrix& m, const ClassSignature& sig, Tolerance tol = {});

bool same_class(const SpectralOperator& a, const SpectralOperator& b);

// Eigenspaces of `other` listed in the index order of `reference`'s
// signature. Throws ClassMismatch.
std::vector<Subspace> aligned_eigenspaces(const SpectralOperator& reference, const SpectralOperator& other);

// Same class and equal eigenspaces for every eigenvalue.
bool same_operator(const SpectralOperator& a, const SpectralOperator& b);

// Sum of the eigenspaces belonging to non-zero eigenvalues.
Subspace image_of(const SpectralOperator& a);

// Throws TooManyEigenvalues when k > 8.
std::vector<Permutation> sd_group(const ClassSignature& sig);

// Eigenvalue a_i receives eigenspace X_{delta(i)}. Throws NotInSd.
SpectralOperator apply_permutation(const Permutation& delta, const SpectralOperator& a);

// Haar-random eigenframe split into blocks of sizes n_1, ..., n_k.
SpectralOperator random_operator(const ClassSignature& sig, Rng& rng, Tolerance tol = {});

}  // namespace grassop
