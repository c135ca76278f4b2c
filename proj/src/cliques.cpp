#include "grassop/cliques.hpp"

#include "grassop/errors.hpp"

namespace grassop {

namespace {

std::size_t at(int t) { return static_cast<std::size_t>(t); }

// Base of the (-minus,+plus)-clique with the given center inside `merged`;
// every other eigenspace is copied from `source` (a parent-class operator or
// reduced-class base, looked up by eigenvalue).
CliqueDescriptor build_clique(const ClassSignature& parent, int minus, int plus, const Subspace& center,
                              const Subspace& merged, const SpectralOperator& source) {
  const ClassSignature reduced = reduced_signature(parent, minus, plus, 1);
  std::vector<Subspace> spaces;
  for (int t = 0; t < reduced.k(); ++t) {
    const int p = *parent.index_of(reduced.eigenvalue(t));
    if (p == minus) {
      spaces.push_back(center);
    } else if (p == plus) {
      spaces.push_back(complement(center, merged));
    } else {
      spaces.push_back(eigenspace_for(source, parent, p));
    }
  }
  return {parent, minus, plus, make_operator(reduced, std::move(spaces))};
}

Subspace merged_of(const CliqueDescriptor& d) { return sum(d.center(), d.enlarged()); }

bool same_outside_pair(const CliqueDescriptor& d1, const CliqueDescriptor& d2) {
  for (int t = 0; t < d1.parent.k(); ++t) {
    if (!d1.pair().contains(t) &&
        !equal(eigenspace_for(d1.base, d1.parent, t), eigenspace_for(d2.base, d2.parent, t))) {
      return false;
    }
  }
  return true;
}

// The dim-dimensional subspace of u closest to `target`.
Subspace closest_part(const Subspace& u, const Subspace& target, Index dim) {
  if (dim == 0) {
    return Subspace(u.ambient_dim(), u.tol());
  }
  Eigen::JacobiSVD<Matrix> svd(gram(u.frame(), target.frame()), Eigen::ComputeFullU);
  return make_trusted(polish(u.frame() * svd.matrixU().leftCols(dim)), u.tol());
}

Subspace intersect_all(const std::vector<SpectralOperator>& ops, int t) {
  Subspace acc = ops.front().eigenspace(t);
  for (std::size_t s = 1; s < ops.size(); ++s) {
    acc = intersect(acc, ops[s].eigenspace(t));
  }
  return acc;
}

}  // namespace

bool same_clique(const CliqueDescriptor& d1, const CliqueDescriptor& d2) {
  return same_signature(d1.parent, d2.parent) && d1.minus == d2.minus && d1.plus == d2.plus &&
         same_operator(d1.base, d2.base);
}

CliqueDescriptor star_clique(const SpectralOperator& t, const ClassSignature& parent, int i, int j) {
  if (!same_signature(t.signature(), reduced_signature(parent, i, j, 1))) {
    fail(ErrorKind::SignatureMismatch, "base is not in the class " + parent.describe() + " with a_" +
                                           std::to_string(i) + " reduced by one");
  }
  return {parent, i, j, t};
}

SpectralOperator clique_member(const CliqueDescriptor& d, const Subspace& x) {
  if (x.dim() != 1) {
    fail(ErrorKind::DimensionMismatch, "clique members are indexed by lines");
  }
  const Subspace big = d.enlarged();
  if (!contains(big, x)) {
    fail(ErrorKind::NotContained, "line must lie in the enlarged eigenspace of the base");
  }
  std::vector<Subspace> spaces;
  for (int t = 0; t < d.parent.k(); ++t) {
    if (t == d.minus) {
      spaces.push_back(sum(d.center(), x));
    } else if (t == d.plus) {
      spaces.push_back(complement(x, big));
    } else {
      spaces.push_back(eigenspace_for(d.base, d.parent, t));
    }
  }
  return make_operator(d.parent, std::move(spaces));
}

bool clique_contains(const CliqueDescriptor& d, const SpectralOperator& a) {
  if (!same_signature(d.parent, a.signature())) {
    return false;
  }
  for (int t = 0; t < d.parent.k(); ++t) {
    if (!d.pair().contains(t) && !equal(eigenspace_for(a, d.parent, t), eigenspace_for(d.base, d.parent, t))) {
      return false;
    }
  }
  return contains(eigenspace_for(a, d.parent, d.minus), d.center()) &&
         contains(d.enlarged(), eigenspace_for(a, d.parent, d.plus));
}

IndexPair triangle_type(const SpectralOperator& a, const SpectralOperator& b, const SpectralOperator& c) {
  const auto ab = is_adjacent(a, b);
  const auto bc = is_adjacent(b, c);
  const auto ca = is_adjacent(c, a);
  if (!ab.adjacent() || !bc.adjacent() || !ca.adjacent()) {
    fail(ErrorKind::NotMutuallyAdjacent, "the three operators are not pairwise adjacent");
  }
  if (ab.type_pair != bc.type_pair || bc.type_pair != ca.type_pair) {
    fail(ErrorKind::InternalInconsistency, "mutually adjacent operators with different types");
  }
  return *ab.type_pair;
}

CliqueClassification classify_clique(const std::vector<SpectralOperator>& ops) {
  if (ops.size() < 2) {
    fail(ErrorKind::NotAClique, "need at least two operators");
  }
  std::optional<IndexPair> type;
  for (std::size_t s = 0; s < ops.size(); ++s) {
    for (std::size_t r = s + 1; r < ops.size(); ++r) {
      const auto v = is_adjacent(ops[s], ops[r]);
      if (!v.adjacent()) {
        fail(ErrorKind::NotAClique, "operators " + std::to_string(s) + " and " + std::to_string(r) +
                                        " are not adjacent");
      }
      if (type && *type != *v.type_pair) {
        fail(ErrorKind::InternalInconsistency, "pairwise adjacent operators with different types");
      }
      type = v.type_pair;
    }
  }
  if (ops.size() == 2) {
    fail(ErrorKind::AmbiguousOrientation, "a single edge lies on both a star and a top");
  }
  const auto& sig = ops.front().signature();
  const int i = type->first;
  const int j = type->second;
  const std::vector<SpectralOperator> aligned = [&] {
    std::vector<SpectralOperator> out;
    for (const auto& op : ops) {
      out.push_back(make_operator(sig, aligned_eigenspaces(ops.front(), op)));
    }
    return out;
  }();
  if (sig.multiplicity(i) == 1 || sig.multiplicity(j) == 1) {
    fail(ErrorKind::AmbiguousOrientation, "orientation is not determined when n_i or n_j is 1");
  }
  const Subspace merged = sum(aligned.front().eigenspace(i), aligned.front().eigenspace(j));
  const Subspace common_i = intersect_all(aligned, i);
  if (common_i.dim() == sig.multiplicity(i) - 1) {
    return {*type, CliqueOrientation::Star, build_clique(sig, i, j, common_i, merged, aligned.front())};
  }
  const Subspace common_j = intersect_all(aligned, j);
  if (common_j.dim() == sig.multiplicity(j) - 1) {
    return {*type, CliqueOrientation::Top, build_clique(sig, j, i, common_j, merged, aligned.front())};
  }
  fail(ErrorKind::InternalInconsistency, "pairwise adjacent eigenspaces form neither a star nor a top");
}

Subspace LineDescriptor::plane() const { return complement(star.center(), top.enlarged()); }

namespace {

LineDescriptor make_line(const CliqueDescriptor& star, const CliqueDescriptor& top) {
  if (star.minus < star.plus) {
    return {star.parent, star.pair(), star, top};
  }
  return {star.parent, star.pair(), top, star};
}

}  // namespace

LineDescriptor line_through(const SpectralOperator& a, const SpectralOperator& b) {
  const auto v = is_adjacent(a, b);
  if (!v.adjacent()) {
    fail(ErrorKind::NotAdjacent, "a line needs an adjacent pair");
  }
  const auto& sig = a.signature();
  const int i = v.type_pair->first;
  const int j = v.type_pair->second;
  if (sig.multiplicity(i) == 1 || sig.multiplicity(j) == 1) {
    fail(ErrorKind::MultiplicityTooSmall, "lines need n_i > 1 and n_j > 1");
  }
  const auto other = aligned_eigenspaces(a, b);
  const Subspace merged = sum(a.eigenspace(i), a.eigenspace(j));
  const CliqueDescriptor star =
      build_clique(sig, i, j, intersect(a.eigenspace(i), other[at(i)]), merged, a);
  const CliqueDescriptor top =
      build_clique(sig, j, i, intersect(a.eigenspace(j), other[at(j)]), merged, a);
  return {sig, IndexPair{i, j}, star, top};
}

bool line_contains(const LineDescriptor& l, const SpectralOperator& a) {
  return clique_contains(l.star, a) && clique_contains(l.top, a);
}

SpectralOperator line_member(const LineDescriptor& l, const Subspace& x) {
  const Subspace p = l.plane();
  if (x.dim() != 1) {
    fail(ErrorKind::DimensionMismatch, "line members are indexed by lines of the plane");
  }
  if (!contains(p, x)) {
    fail(ErrorKind::NotContained, "line must lie in the plane");
  }
  return clique_member(l.star, x);
}

bool same_line(const LineDescriptor& l1, const LineDescriptor& l2) {
  return l1.pair == l2.pair && same_clique(l1.star, l2.star) && same_clique(l1.top, l2.top);
}

CliqueIntersection clique_intersection(const CliqueDescriptor& d1, const CliqueDescriptor& d2) {
  if (!same_signature(d1.parent, d2.parent)) {
    fail(ErrorKind::ClassMismatch, "cliques come from different classes");
  }
  if (same_clique(d1, d2)) {
    return {IntersectionKind::Equal, std::nullopt, std::nullopt};
  }
  const auto& sig = d1.parent;
  if (d1.pair() == d2.pair()) {
    if (!same_outside_pair(d1, d2) || !equal(merged_of(d1), merged_of(d2))) {
      return {};
    }
    const Subspace merged = merged_of(d1);
    if (d1.minus == d2.minus) {
      // Two stars meet in at most the member whose a_minus-eigenspace is the
      // sum of the centers.
      const Subspace joint = sum(d1.center(), d2.center());
      if (joint.dim() != sig.multiplicity(d1.minus)) {
        return {};
      }
      auto member = clique_member(d1, complement(d1.center(), joint));
      return {IntersectionKind::Singleton, std::move(member), std::nullopt};
    }
    if (sig.multiplicity(d1.minus) == 1 || sig.multiplicity(d1.plus) == 1) {
      fail(ErrorKind::MultiplicityTooSmall, "opposite cliques with n_i = 1 or n_j = 1 are nested");
    }
    if (!contains(d2.enlarged(), d1.center())) {
      return {};
    }
    return {IntersectionKind::Line, std::nullopt, make_line(d1, d2)};
  }
  // Different pairs: a shared member is pinned down by the fixed eigenspaces.
  try {
    std::vector<std::optional<Subspace>> spaces(at(sig.k()));
    int open = -1;
    Subspace rest(sig.ambient_dim(), d1.base.eigenspace(0).tol());
    for (int t = 0; t < sig.k(); ++t) {
      if (!d1.pair().contains(t)) {
        spaces[at(t)] = eigenspace_for(d1.base, sig, t);
      } else if (!d2.pair().contains(t)) {
        spaces[at(t)] = eigenspace_for(d2.base, sig, t);
      } else {
        open = t;
        continue;
      }
      rest = sum(rest, *spaces[at(t)]);
    }
    if (open >= 0) {
      spaces[at(open)] = complement(rest);
    }
    std::vector<Subspace> frames;
    for (auto& s : spaces) {
      frames.push_back(*s);
    }
    auto candidate = make_operator(sig, std::move(frames));
    if (clique_contains(d1, candidate) && clique_contains(d2, candidate)) {
      return {IntersectionKind::Singleton, std::move(candidate), std::nullopt};
    }
  } catch (const Error&) {
  }
  return {};
}

std::vector<CliqueDescriptor> clique_chain(const CliqueDescriptor& d1, const CliqueDescriptor& d2,
                                           const ComponentDescriptor& component) {
  const auto& sig = component.parent;
  const IndexPair pair = component.merged;
  const Subspace merged = component.merged_space();
  for (const auto* d : {&d1, &d2}) {
    if (!same_signature(d->parent, sig) || d->pair() != pair || !equal(merged_of(*d), merged)) {
      fail(ErrorKind::DifferentComponents, "clique is not inside the component");
    }
    for (int t = 0; t < sig.k(); ++t) {
      if (!pair.contains(t) &&
          !equal(eigenspace_for(d->base, sig, t), eigenspace_for(component.base, sig, t))) {
        fail(ErrorKind::DifferentComponents, "clique is not inside the component");
      }
    }
  }
  const int i = pair.first;
  const int j = pair.second;
  const int n = sig.multiplicity(i);
  if (n == 1 || sig.multiplicity(j) == 1) {
    fail(ErrorKind::MultiplicityTooSmall, "clique chains need n_i > 1 and n_j > 1");
  }
  if (same_clique(d1, d2)) {
    return {d1};
  }
  // In the Grassmannian of a_i-eigenspaces a (-i,+j)-clique is the star of its
  // center and a (-j,+i)-clique is the top of its enlarged eigenspace.
  auto star = [&](const Subspace& c) { return build_clique(sig, i, j, c, merged, component.base); };
  auto top = [&](const Subspace& u) { return build_clique(sig, j, i, complement(u, merged), merged, component.base); };
  auto is_star = [&](const CliqueDescriptor& d) { return d.minus == i; };
  auto anchor = [&](const CliqueDescriptor& d) { return is_star(d) ? d.center() : d.enlarged(); };

  const Subspace start = is_star(d1) ? d1.center() : closest_part(d1.enlarged(), anchor(d2), n - 1);
  const Subspace finish = is_star(d2) ? d2.center() : closest_part(d2.enlarged(), start, n - 1);

  std::vector<CliqueDescriptor> chain{d1};
  auto push = [&](CliqueDescriptor d) {
    if (!same_clique(chain.back(), d)) {
      chain.push_back(std::move(d));
    }
  };
  push(star(start));
  const auto centers = grassmann_path(start, finish, merged);
  for (std::size_t t = 1; t < centers.size(); ++t) {
    const Subspace joint = sum(centers[t - 1], centers[t]);
    const Subspace spare = complement(joint, merged);
    const Subspace u = sum(joint, make_trusted(spare.frame().leftCols(1), spare.tol()));
    push(top(u));
    push(star(centers[t]));
  }
  push(d2);
  for (std::size_t t = 1; t < chain.size(); ++t) {
    if (clique_intersection(chain[t - 1], chain[t]).kind != IntersectionKind::Line) {
      fail(ErrorKind::InternalInconsistency, "consecutive cliques of the chain do not meet in a line");
    }
  }
  return chain;
}

}  // namespace grassop
