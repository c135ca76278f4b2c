#pragma once

#include <optional>
#include <vector>

#include "grassop/adjacency.hpp"

namespace grassop {

struct OperatorPath {
  std::vector<SpectralOperator> vertices;
  std::vector<IndexPair> edge_types;  // one per consecutive pair

  std::size_t length() const { return edge_types.size(); }
};

// X_p = Y_p for every p outside {i, j}.
bool ij_connected(const SpectralOperator& a, const SpectralOperator& b, int i, int j);

// A path of (i, j)-edges only, obtained by lifting a Grassmann path of the
// smaller of the two eigenspaces inside X_i + X_j. Throws NotIJConnected.
OperatorPath ij_path(const SpectralOperator& a, const SpectralOperator& b, int i, int j);

// A path from A to B in the adjacency graph of the class. Pairs differing in
// at most two eigenspaces go through ij_path. Otherwise the differing
// eigenspaces are fixed one at a time (smallest multiplicity first): each
// Grassmann step X_r -> X of the eigenspace being fixed is realised by first
// rotating the line (X + X_r) cap (W - X_r) into one other eigenspace q with
// (q, t)-edges, then a single (q, r)-edge.
OperatorPath connect(const SpectralOperator& a, const SpectralOperator& b);

// (sigma, d) with m dimensions moved from eigenvalue i to eigenvalue j; when
// m = n_i the eigenvalue a_i disappears. Throws BadIndices,
// PreconditionViolated (m out of range), InvalidSignature (k would drop to 1).
ClassSignature reduced_signature(const ClassSignature& sig, int i, int j, int m);

// The eigenspace of `op` for the parent eigenvalue with index t, or the zero
// subspace if that eigenvalue is absent from op's signature.
Subspace eigenspace_for(const SpectralOperator& op, const ClassSignature& parent, int t);

// An (i, j)-connected component G(T). Canonical form: merged = {i < j}, the
// base T lives in the class with a_i removed and carries M = X_i + X_j as its
// a_j-eigenspace.
struct ComponentDescriptor {
  ClassSignature parent;
  IndexPair merged;
  SpectralOperator base;

  Subspace merged_space() const { return eigenspace_for(base, parent, merged.second); }
};

bool same_component(const ComponentDescriptor& d1, const ComponentDescriptor& d2);

ComponentDescriptor component_of(const SpectralOperator& a, int i, int j);

// The member with a_i-eigenspace X (i = merged.first) and a_j-eigenspace the
// complement of X in M. Throws NotContained, DimensionMismatch.
SpectralOperator component_member(const ComponentDescriptor& d, const Subspace& x);

bool component_contains(const ComponentDescriptor& d, const SpectralOperator& a);

enum class ComponentLink { NotAdjacent, Adjacent, Intersecting, UniqueBridge };

struct ComponentAdjacency {
  ComponentLink link = ComponentLink::NotAdjacent;
  // Adjacent: one of infinitely many adjacent pairs. Intersecting: witness a
  // is the shared operator. UniqueBridge: the only adjacent pair.
  std::optional<SpectralOperator> witness_a;
  std::optional<SpectralOperator> witness_b;
};

// Throws ClassMismatch, PreconditionViolated (equal descriptors).
ComponentAdjacency components_adjacent(const ComponentDescriptor& d1, const ComponentDescriptor& d2);

}  // namespace grassop
