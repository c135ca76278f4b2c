#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "grassop/adjacency.hpp"

namespace grassop {

// A -> U delta(A) U^*, where delta relabels eigenspaces (a_i receives
// X_delta(i)) and U acts on frames, conjugating coordinates first when
// antiunitary.
struct Symmetry {
  ClassSignature signature;
  Matrix matrix;
  bool antiunitary = false;
  Permutation permutation;

  // Throws NotUnitary (|U^H U - I| > 1e-10 entrywise), DimensionMismatch,
  // NotInSd.
  static Symmetry make(ClassSignature sig, Matrix u, bool antiunitary, Permutation delta);
  static Symmetry identity(const ClassSignature& sig);
};

// Throws ClassMismatch when A is not in the symmetry's class.
SpectralOperator apply_symmetry(const Symmetry& s, const SpectralOperator& a);

// apply(compose(s1, s2), A) = apply(s1, apply(s2, A)). Throws SignatureMismatch.
Symmetry compose(const Symmetry& s1, const Symmetry& s2);
Symmetry inverse(const Symmetry& s);

// Checks U delta(A) U^* = delta(U A U^*) within 1e-9 on every sample. A
// matrix that is not unitary makes the right side leave the class; that is
// reported as false.
bool commutation_check(const Matrix& u, bool antiunitary, const Permutation& delta,
                       const std::vector<SpectralOperator>& samples);

// Image of the adjacency type {i, j} under s: {delta^-1(i), delta^-1(j)}.
// Throws BadIndices.
IndexPair adjacency_type_transport(const Symmetry& s, IndexPair pair);

struct AutomorphismReport {
  int adjacent_pairs = 0;
  int non_adjacent_pairs = 0;
  int adjacency_failures = 0;  // adjacency status changed
  int type_failures = 0;       // image type differs from the transported type
  int inverse_failures = 0;    // inverse symmetry does not recover the input
  std::vector<std::pair<IndexPair, IndexPair>> transport;  // observed (type, image type)

  bool ok() const { return adjacency_failures == 0 && type_failures == 0 && inverse_failures == 0; }
};

// `pairs` adjacent pairs from make_ij_adjacent and `pairs` independent random
// (non-adjacent) pairs.
AutomorphismReport verify_automorphism(const Symmetry& s, int pairs, Rng& rng);

struct FrameMapReport {
  int trials = 0;
  int orthogonality_failures = 0;  // image eigenspaces not mutually orthogonal
  int class_failures = 0;          // image is not an operator of the class
  int adjacency_failures = 0;      // adjacent pair mapped to a non-adjacent one

  bool ok() const { return orthogonality_failures == 0 && class_failures == 0 && adjacency_failures == 0; }
};

// Applies an arbitrary invertible V to every eigenspace frame with delta = id
// and records where the result stops being a symmetry.
FrameMapReport verify_frame_map(const Matrix& v, bool antilinear, const ClassSignature& sig, int trials, Rng& rng);

struct SemilinearMap {
  Matrix matrix;
  bool antilinear = false;

  // Throws InvalidInput (not square or not finite), NotInvertible.
  static SemilinearMap make(Matrix v, bool antilinear);

  Matrix apply(const Matrix& x) const { return antilinear ? Matrix(matrix * x.conjugate()) : Matrix(matrix * x); }
};

// (v o w)(x) = v(w(x))
SemilinearMap compose(const SemilinearMap& v, const SemilinearMap& w);

// For k = 2: A -> operator with a_1-eigenspace V(X_1) and a_2-eigenspace its
// orthogonal complement.
class SemilinearK2Map {
 public:
  SpectralOperator operator()(const SpectralOperator& a) const;
  const SemilinearMap& map() const { return v_; }

 private:
  SemilinearK2Map(SemilinearMap v, ClassSignature sig) : v_(std::move(v)), sig_(std::move(sig)) {}

  SemilinearMap v_;
  ClassSignature sig_;

  friend SemilinearK2Map semilinear_k2_automorphism(const SemilinearMap& v, const ClassSignature& sig);
};

// Throws RequiresKEquals2, DimensionMismatch.
SemilinearK2Map semilinear_k2_automorphism(const SemilinearMap& v, const ClassSignature& sig);

struct OrthogonalityVerdict {
  bool preserves = false;
  std::optional<double> scale;  // c with V / c (anti)unitary
  bool antiunitary = false;
};

// Probes e_a +- e_b, (e_a, e_b) and `trials` random orthogonal pairs.
OrthogonalityVerdict orthogonality_defect(const SemilinearMap& v, int trials, Rng& rng);

}  // namespace grassop
