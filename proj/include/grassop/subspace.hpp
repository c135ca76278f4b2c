#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace grassop {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Numerical cutoffs. rank_rel is relative to the largest singular value;
// angle_abs is the principal-angle threshold (radians) below which two
// directions are considered equal.
struct Tolerance {
  double rank_rel = 1e-9;
  double angle_abs = 1e-8;

  void validate() const;
};

// A linear subspace of C^N carried by an orthonormal frame. Frames are not
// canonical; compare subspaces with equal()/principal_angles(), never by
// entries. The zero subspace has an N x 0 frame.
class Subspace {
 public:
  explicit Subspace(Index ambient_dim, Tolerance tol = {});

  // Wraps an orthonormal frame; throws InvalidInput when the columns are not
  // orthonormal to within 10 * tol.angle_abs or contain non-finite entries.
  static Subspace from_frame(Matrix frame, Tolerance tol = {});

  static Subspace full(Index ambient_dim, Tolerance tol = {});

  Index ambient_dim() const { return frame_.rows(); }
  Index dim() const { return frame_.cols(); }
  bool is_zero() const { return frame_.cols() == 0; }
  const Matrix& frame() const { return frame_; }
  const Tolerance& tol() const { return tol_; }

  // frame * frame^H
  Matrix projector() const;

 private:
  Subspace(Matrix frame, Tolerance tol, bool /*trusted*/) : frame_(std::move(frame)), tol_(tol) {}

  Matrix frame_;
  Tolerance tol_;

  friend Subspace make_trusted(Matrix frame, Tolerance tol);
};

// Builds a Subspace from a frame produced internally (already orthonormal).
Subspace make_trusted(Matrix frame, Tolerance tol);

// Column span of `vectors`, dimension = numerical rank.
Subspace orthonormalize(const Matrix& vectors, Tolerance tol = {});

// Number of singular values above rank_rel * max(sigma_max, reference_scale).
// A positive reference_scale keeps round-off in a near-zero difference from
// being promoted to full rank.
int numerical_rank(const Matrix& m, Tolerance tol = {}, double reference_scale = 0.0);

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace complement(const Subspace& s, const std::optional<Subspace>& within = std::nullopt);

// Nondecreasing angles in [0, pi/2]; min(dim a, dim b) of them. Small angles
// come from sines and large ones from cosines so both ends stay accurate.
std::vector<double> principal_angles(const Subspace& a, const Subspace& b);

bool subspaces_adjacent(const Subspace& a, const Subspace& b);

// Path X = Z_0, ..., Z_m = Y inside `ambient` with consecutive members
// adjacent; m = dim X - dim(X cap Y).
std::vector<Subspace> grassmann_path(const Subspace& x, const Subspace& y, const Subspace& ambient);

bool contains(const Subspace& outer, const Subspace& inner);
bool equal(const Subspace& a, const Subspace& b);
bool orthogonal(const Subspace& a, const Subspace& b);

// F^H G, assembled from the active complex dot kernel.
Matrix gram(const Matrix& f, const Matrix& g);
// (I - P_S) G
Matrix project_out(const Subspace& s, const Matrix& g);
// Two passes of modified Gram-Schmidt over the columns (assumed independent).
Matrix polish(Matrix frame);
// max |F^H F - I|
double orthonormality_defect(const Matrix& frame);

double spectral_norm(const Matrix& m);
bool all_finite(const Matrix& m);

void require_same_ambient(const Subspace& a, const Subspace& b);

}  // namespace grassop
