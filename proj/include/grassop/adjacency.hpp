#pragma once

#include <optional>
#include <utility>

#include "grassop/random.hpp"
#include "grassop/spectral.hpp"

namespace grassop {

// Unordered index pair, stored with first < second.
struct IndexPair {
  int first = 0;
  int second = 0;

  static IndexPair of(int a, int b) { return a < b ? IndexPair{a, b} : IndexPair{b, a}; }
  bool contains(int t) const { return t == first || t == second; }
  bool operator==(const IndexPair&) const = default;
};

struct RankTwoCheck {
  bool holds = false;
  int rank = 0;
};

struct AdjacencyVerdict {
  bool a1 = false;  // rank(B - A) == 2
  bool a2 = false;  // Im(B - A) invariant under A (hence under B, with the kernel)
  int diff_rank = 0;
  std::optional<IndexPair> type_pair;    // present iff adjacent
  std::optional<Subspace> image_of_diff;  // present iff a1

  bool adjacent() const { return a1 && a2; }
};

enum class SubspaceRelation { Equal, Adjacent, Other };
enum class ImageRelation { Equal, Adjacent, Other };

// Numerical rank of to_matrix(B) - to_matrix(A), cut off relative to the
// class scale max|a_i|. Throws ClassMismatch.
RankTwoCheck condition_a1(const SpectralOperator& a, const SpectralOperator& b, Tolerance tol = {});

// Requires condition_a1 (PreconditionViolated otherwise). True iff the
// 2-dimensional image S of B - A satisfies ||(I - P_S) A P_S|| < 1e-8 ||A||.
bool condition_a2(const SpectralOperator& a, const SpectralOperator& b, Tolerance tol = {});

// Full verdict. The predicate comes from matrices; the type comes from the
// independent eigenspace comparison in classify_adjacency. If the predicate
// holds and the comparison finds no pair, InternalInconsistency is thrown.
AdjacencyVerdict is_adjacent(const SpectralOperator& a, const SpectralOperator& b, Tolerance tol = {});

// The unique {i, j} such that eigenspaces i and j are adjacent subspaces and
// all others coincide.
std::optional<IndexPair> classify_adjacency(const SpectralOperator& a, const SpectralOperator& b);

SubspaceRelation relate(const Subspace& x, const Subspace& y);

// Relation between Im(A) and Im(B).
ImageRelation image_relation(const SpectralOperator& a, const SpectralOperator& b);

// Whether (A1 and A2) agrees with the structural classification. A false
// return is a counterexample to the characterization of adjacency.
bool adjacency_oracle_agrees(const SpectralOperator& a, const SpectralOperator& b, Tolerance tol = {});

// ||(I - P_S) M P_S||_2 < rel * ||M||_2
bool is_invariant(const Matrix& m, const Subspace& s, double rel = 1e-8);

// B in the same class, (i, j)-adjacent to A: one frame vector of X_i is
// rotated toward X_j by a random angle inside X_i + X_j.
SpectralOperator make_ij_adjacent(const SpectralOperator& a, int i, int j, Rng& rng);

// The fixed C^3 pair A = P + P_X, B = P + P_Y with P the projection on e1,
// X = span{e1 + e2}, Y = span{e1 + e3}: rank-2 difference, not adjacent.
std::pair<SpectralOperator, SpectralOperator> pseudo_adjacent_c3();

struct PseudoAdjacentInstance {
  SpectralOperator a;
  SpectralOperator b;
  Subspace common;   // Im(C) = M cap N
  Subspace m_space;  // Im(C) + X
  Subspace n_space;  // Im(C) + U(X)
  bool x_orthogonal_to_common = false;
  bool a1 = false;
  bool a2 = false;
  bool adjacent = false;
};

// A = C + a P_X and B = U A U^* with U fixing Im(C) pointwise and carrying
// M = Im(C) + X onto a random N with M cap N = Im(C). Throws DegenerateInput
// when X lies in Im(C), when M fills the space, or when the resulting
// spectrum is degenerate.
PseudoAdjacentInstance pseudo_adjacent_general(const Matrix& c, const Subspace& x, double a, Rng& rng,
                                               Tolerance tol = {});

// For Hermitian T, Q with Im(T) cap Im(Q) = 0: rank(T + Q) == rank T + rank Q.
// Throws NotHermitian, PreconditionViolated.
bool image_direct_sum_check(const Matrix& t, const Matrix& q, Tolerance tol = {});

}  // namespace grassop
