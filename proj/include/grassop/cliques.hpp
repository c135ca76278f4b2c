#pragma once

#include <optional>
#include <vector>

#include "grassop/connectivity.hpp"

namespace grassop {

// A (-i,+j)-clique G(T): T lies in the class with one dimension moved from
// a_i to a_j. Members are T + (a_i - a_j) P_X for lines X in T's
// a_j-eigenspace.
struct CliqueDescriptor {
  ClassSignature parent;
  int minus = 0;
  int plus = 1;
  SpectralOperator base;

  IndexPair pair() const { return IndexPair::of(minus, plus); }
  // a_minus-eigenspace of the base, dimension n_minus - 1.
  Subspace center() const { return eigenspace_for(base, parent, minus); }
  // a_plus-eigenspace of the base, dimension n_plus + 1.
  Subspace enlarged() const { return eigenspace_for(base, parent, plus); }
};

bool same_clique(const CliqueDescriptor& d1, const CliqueDescriptor& d2);

// Throws SignatureMismatch unless T lies in reduced_signature(parent, i, j, 1).
CliqueDescriptor star_clique(const SpectralOperator& t, const ClassSignature& parent, int i, int j);

// Throws DimensionMismatch (X not a line), NotContained (X outside enlarged()).
SpectralOperator clique_member(const CliqueDescriptor& d, const Subspace& x);

bool clique_contains(const CliqueDescriptor& d, const SpectralOperator& a);

// The common type of three mutually adjacent operators. Throws
// NotMutuallyAdjacent, InternalInconsistency (types disagree).
IndexPair triangle_type(const SpectralOperator& a, const SpectralOperator& b, const SpectralOperator& c);

enum class CliqueOrientation { Star, Top };

struct CliqueClassification {
  IndexPair pair;
  CliqueOrientation orientation;
  CliqueDescriptor descriptor;
};

// The star (common (n_i - 1)-dimensional part of the a_i-eigenspaces, giving
// a (-i,+j)-clique) is tried before the top (the same test on a_j, giving a
// (-j,+i)-clique), with i < j. Throws NotAClique (fewer than two operators or
// a non-adjacent pair), AmbiguousOrientation (exactly two operators, or
// min(n_i, n_j) = 1), InternalInconsistency.
CliqueClassification classify_clique(const std::vector<SpectralOperator>& ops);

// The (i,j)-line G(T) cap G(Q), i < j, with T in (-i,+j) and Q in (-j,+i).
struct LineDescriptor {
  ClassSignature parent;
  IndexPair pair;
  CliqueDescriptor star;
  CliqueDescriptor top;

  // The 2-dimensional X with Q - T = (a_i - a_j) P_X.
  Subspace plane() const;
};

// Throws NotAdjacent, MultiplicityTooSmall (n_i = 1 or n_j = 1).
LineDescriptor line_through(const SpectralOperator& a, const SpectralOperator& b);

bool line_contains(const LineDescriptor& l, const SpectralOperator& a);

// The member whose a_i-eigenspace is center + x, for a line x in plane().
SpectralOperator line_member(const LineDescriptor& l, const Subspace& x);

bool same_line(const LineDescriptor& l1, const LineDescriptor& l2);

enum class IntersectionKind { Empty, Singleton, Line, Equal };

struct CliqueIntersection {
  IntersectionKind kind = IntersectionKind::Empty;
  std::optional<SpectralOperator> member;
  std::optional<LineDescriptor> line;
};

// Throws ClassMismatch; MultiplicityTooSmall when opposite orientations meet
// with n_i = 1 or n_j = 1 (one clique then contains the other).
CliqueIntersection clique_intersection(const CliqueDescriptor& d1, const CliqueDescriptor& d2);

// Cliques inside one (i,j)-component from d1 to d2, consecutive ones meeting
// in a line. Works with the a_i-eigenspaces (i < j), where (-i,+j)-cliques
// are stars and (-j,+i)-cliques are tops. Throws DifferentComponents,
// MultiplicityTooSmall, InternalInconsistency.
std::vector<CliqueDescriptor> clique_chain(const CliqueDescriptor& d1, const CliqueDescriptor& d2,
                                           const ComponentDescriptor& component);

}  // namespace grassop
