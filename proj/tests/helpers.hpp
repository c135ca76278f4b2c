#pragma once

#include <functional>

#include <gtest/gtest.h>

#include "grassop/cliques.hpp"
#include "grassop/errors.hpp"

namespace grassop::testing {

inline ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& err) {
    return err.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidInput;
}

inline Subspace random_part(const Subspace& s, Index dim, Rng& rng) {
  if (dim == 0) {
    return Subspace(s.ambient_dim(), s.tol());
  }
  return orthonormalize(s.frame() * rng.gaussian(s.dim(), dim), s.tol());
}

// Same eigenspaces outside {i, j}; a fresh split of X_i + X_j.
inline SpectralOperator ij_partner(const SpectralOperator& a, int i, int j, Rng& rng) {
  const Subspace merged = sum(a.eigenspace(i), a.eigenspace(j));
  const Subspace xi = random_part(merged, a.eigenspace(i).dim(), rng);
  std::vector<Subspace> spaces = a.eigenspaces();
  spaces[static_cast<std::size_t>(i)] = xi;
  spaces[static_cast<std::size_t>(j)] = complement(xi, merged);
  return make_operator(a.signature(), std::move(spaces));
}

// The (-minus,+plus)-clique through `a` whose center is `center` (a
// hyperplane of X_minus).
inline CliqueDescriptor clique_through(const SpectralOperator& a, int minus, int plus, const Subspace& center) {
  const auto& sig = a.signature();
  const ClassSignature reduced = reduced_signature(sig, minus, plus, 1);
  std::vector<Subspace> spaces;
  for (int t = 0; t < reduced.k(); ++t) {
    const int p = *sig.index_of(reduced.eigenvalue(t));
    if (p == minus) {
      spaces.push_back(center);
    } else if (p == plus) {
      spaces.push_back(sum(a.eigenspace(plus), complement(center, a.eigenspace(minus))));
    } else {
      spaces.push_back(a.eigenspace(p));
    }
  }
  return star_clique(make_operator(reduced, std::move(spaces)), sig, minus, plus);
}

inline CliqueDescriptor random_clique_through(const SpectralOperator& a, int minus, int plus, Rng& rng) {
  const Subspace& x = a.eigenspace(minus);
  return clique_through(a, minus, plus, random_part(x, x.dim() - 1, rng));
}

inline void expect_valid_path(const OperatorPath& path, const SpectralOperator& a, const SpectralOperator& b) {
  ASSERT_EQ(path.vertices.size(), path.edge_types.size() + 1);
  EXPECT_TRUE(same_operator(path.vertices.front(), a));
  EXPECT_TRUE(same_operator(path.vertices.back(), b));
  for (std::size_t e = 0; e < path.length(); ++e) {
    const auto v = is_adjacent(path.vertices[e], path.vertices[e + 1]);
    ASSERT_TRUE(v.adjacent()) << "edge " << e;
    EXPECT_EQ(*v.type_pair, path.edge_types[e]) << "edge " << e;
  }
}

}  // namespace grassop::testing
