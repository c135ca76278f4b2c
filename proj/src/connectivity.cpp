#include "grassop/connectivity.hpp"

#include <algorithm>

#include "grassop/errors.hpp"

namespace grassop {

namespace {

void check_pair(int k, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= k || j >= k) {
    fail(ErrorKind::BadIndices, "need two distinct indices in [0, " + std::to_string(k) + ")");
  }
}

std::size_t at(int t) { return static_cast<std::size_t>(t); }

SpectralOperator replace(const SpectralOperator& op, std::initializer_list<std::pair<int, Subspace>> changes) {
  std::vector<Subspace> spaces = op.eigenspaces();
  for (const auto& [t, s] : changes) {
    spaces[at(t)] = s;
  }
  return make_operator(op.signature(), std::move(spaces));
}

void append_ij_segment(OperatorPath& path, const SpectralOperator& from, const std::vector<Subspace>& target, int i,
                       int j) {
  const int k = from.k();
  for (int p = 0; p < k; ++p) {
    if (p != i && p != j && !equal(from.eigenspace(p), target[at(p)])) {
      fail(ErrorKind::NotIJConnected, "eigenspace " + std::to_string(p) + " differs");
    }
  }
  const int small = from.signature().multiplicity(i) <= from.signature().multiplicity(j) ? i : j;
  const int large = small == i ? j : i;
  const Subspace merged = sum(from.eigenspace(i), from.eigenspace(j));
  const auto steps = grassmann_path(from.eigenspace(small), target[at(small)], merged);
  for (std::size_t t = 1; t < steps.size(); ++t) {
    path.vertices.push_back(
        replace(path.vertices.back(), {{small, steps[t]}, {large, complement(steps[t], merged)}}));
    path.edge_types.push_back(IndexPair::of(i, j));
  }
}

std::vector<int> differing(const SpectralOperator& cur, const std::vector<Subspace>& target) {
  std::vector<int> out;
  for (int t = 0; t < cur.k(); ++t) {
    if (!equal(cur.eigenspace(t), target[at(t)])) {
      out.push_back(t);
    }
  }
  return out;
}

// Moves eigenspace r from its current value to target[r] while keeping every
// eigenspace outside `moving` fixed.
void fix_eigenspace(OperatorPath& path, const std::vector<Subspace>& target, const std::vector<int>& moving, int r) {
  const Tolerance tol = target[at(r)].tol();
  Subspace span_all(path.vertices.back().ambient_dim(), tol);
  for (int t : moving) {
    span_all = sum(span_all, path.vertices.back().eigenspace(t));
  }
  const auto steps = grassmann_path(path.vertices.back().eigenspace(r), target[at(r)], span_all);
  for (std::size_t s = 1; s < steps.size(); ++s) {
    const Subspace& next = steps[s];
    const SpectralOperator start = path.vertices.back();
    const Subspace& current_r = start.eigenspace(r);
    const Subspace line = intersect(sum(next, current_r), complement(current_r, span_all));
    if (line.dim() != 1) {
      fail(ErrorKind::InternalInconsistency, "exchange line has dimension " + std::to_string(line.dim()));
    }
    const Vector z = line.frame().col(0);

    // Components of z in the other moving eigenspaces.
    std::vector<std::pair<int, Vector>> parts;
    for (int t : moving) {
      if (t != r) {
        const Matrix& f = start.eigenspace(t).frame();
        parts.emplace_back(t, f * (f.adjoint() * z));
      }
    }
    const auto dominant = std::max_element(parts.begin(), parts.end(), [](const auto& x, const auto& y) {
      return x.second.squaredNorm() < y.second.squaredNorm();
    });
    const int q = dominant->first;
    Vector gathered = dominant->second;

    for (const auto& [t, part] : parts) {
      if (t == q || part.norm() < 1e-10) {
        continue;
      }
      const SpectralOperator& cur = path.vertices.back();
      const Subspace& eq = cur.eigenspace(q);
      const Subspace old_dir = make_trusted(gathered / gathered.norm(), tol);
      gathered += part;
      Matrix frame(cur.ambient_dim(), eq.dim());
      frame << complement(old_dir, eq).frame(), gathered / gathered.norm();
      const Subspace new_q = make_trusted(polish(std::move(frame)), tol);
      const Subspace new_t = complement(new_q, sum(eq, cur.eigenspace(t)));
      path.vertices.push_back(replace(cur, {{q, new_q}, {t, new_t}}));
      path.edge_types.push_back(IndexPair::of(q, t));
    }

    const SpectralOperator& cur = path.vertices.back();
    const Subspace pool = sum(cur.eigenspace(q), cur.eigenspace(r));
    path.vertices.push_back(replace(cur, {{r, next}, {q, complement(next, pool)}}));
    path.edge_types.push_back(IndexPair::of(q, r));
  }
}

}  // namespace

bool ij_connected(const SpectralOperator& a, const SpectralOperator& b, int i, int j) {
  check_pair(a.k(), i, j);
  const auto other = aligned_eigenspaces(a, b);
  for (int p = 0; p < a.k(); ++p) {
    if (p != i && p != j && !equal(a.eigenspace(p), other[at(p)])) {
      return false;
    }
  }
  return true;
}

OperatorPath ij_path(const SpectralOperator& a, const SpectralOperator& b, int i, int j) {
  if (!ij_connected(a, b, i, j)) {
    fail(ErrorKind::NotIJConnected, "operators differ outside the requested pair");
  }
  OperatorPath path{{a}, {}};
  append_ij_segment(path, a, aligned_eigenspaces(a, b), i, j);
  path.vertices.back() = b;
  return path;
}

OperatorPath connect(const SpectralOperator& a, const SpectralOperator& b) {
  const auto target = aligned_eigenspaces(a, b);
  const auto& sig = a.signature();
  OperatorPath path{{a}, {}};
  for (;;) {
    const auto moving = differing(path.vertices.back(), target);
    if (moving.size() <= 2) {
      if (moving.empty()) {
        break;
      }
      int i = moving[0];
      int j = moving.size() == 2 ? moving[1] : (i == 0 ? 1 : 0);
      append_ij_segment(path, path.vertices.back(), target, i, j);
      break;
    }
    int r = moving.front();
    for (int t : moving) {
      if (sig.multiplicity(t) < sig.multiplicity(r) ||
          (sig.multiplicity(t) == sig.multiplicity(r) && t > r)) {
        r = t;
      }
    }
    fix_eigenspace(path, target, moving, r);
  }
  if (!same_operator(path.vertices.back(), b)) {
    fail(ErrorKind::InternalInconsistency, "path does not end at the requested operator");
  }
  if (path.length() == 0) {
    return path;
  }
  path.vertices.back() = b;
  return path;
}

ClassSignature reduced_signature(const ClassSignature& sig, int i, int j, int m) {
  check_pair(sig.k(), i, j);
  if (m < 1 || m > sig.multiplicity(i)) {
    fail(ErrorKind::PreconditionViolated, "m must lie in [1, n_i]");
  }
  std::vector<double> ev = sig.eigenvalues();
  std::vector<int> mult = sig.multiplicities();
  mult[at(j)] += m;
  mult[at(i)] -= m;
  if (mult[at(i)] == 0) {
    ev.erase(ev.begin() + i);
    mult.erase(mult.begin() + i);
  }
  return ClassSignature::make(std::move(ev), std::move(mult));
}

Subspace eigenspace_for(const SpectralOperator& op, const ClassSignature& parent, int t) {
  const auto idx = op.signature().index_of(parent.eigenvalue(t));
  if (!idx) {
    return Subspace(op.ambient_dim(), op.eigenspace(0).tol());
  }
  return op.eigenspace(*idx);
}

bool same_component(const ComponentDescriptor& d1, const ComponentDescriptor& d2) {
  return same_signature(d1.parent, d2.parent) && d1.merged == d2.merged && same_operator(d1.base, d2.base);
}

ComponentDescriptor component_of(const SpectralOperator& a, int i, int j) {
  check_pair(a.k(), i, j);
  const IndexPair pair = IndexPair::of(i, j);
  const ClassSignature& parent = a.signature();
  const ClassSignature reduced = reduced_signature(parent, pair.first, pair.second, parent.multiplicity(pair.first));
  std::vector<Subspace> spaces;
  for (int t = 0; t < reduced.k(); ++t) {
    const int p = *parent.index_of(reduced.eigenvalue(t));
    spaces.push_back(p == pair.second ? sum(a.eigenspace(pair.first), a.eigenspace(pair.second)) : a.eigenspace(p));
  }
  return {parent, pair, make_operator(reduced, std::move(spaces))};
}

SpectralOperator component_member(const ComponentDescriptor& d, const Subspace& x) {
  const Subspace m = d.merged_space();
  if (x.dim() != d.parent.multiplicity(d.merged.first)) {
    fail(ErrorKind::DimensionMismatch, "X must have dimension n_i");
  }
  if (!contains(m, x)) {
    fail(ErrorKind::NotContained, "X must lie in the merged eigenspace");
  }
  std::vector<Subspace> spaces;
  for (int t = 0; t < d.parent.k(); ++t) {
    if (t == d.merged.first) {
      spaces.push_back(x);
    } else if (t == d.merged.second) {
      spaces.push_back(complement(x, m));
    } else {
      spaces.push_back(eigenspace_for(d.base, d.parent, t));
    }
  }
  return make_operator(d.parent, std::move(spaces));
}

bool component_contains(const ComponentDescriptor& d, const SpectralOperator& a) {
  if (!same_signature(d.parent, a.signature())) {
    return false;
  }
  for (int t = 0; t < d.parent.k(); ++t) {
    if (!d.merged.contains(t) &&
        !equal(eigenspace_for(a, d.parent, t), eigenspace_for(d.base, d.parent, t))) {
      return false;
    }
  }
  const Subspace pair_sum =
      sum(eigenspace_for(a, d.parent, d.merged.first), eigenspace_for(a, d.parent, d.merged.second));
  return equal(pair_sum, d.merged_space());
}

namespace {

using Slot = std::optional<Subspace>;

// Eigenspaces of a hypothetical pair A in G(T), B in G(Q) that differ only at
// the indices in `free_pair` (all indices linked when it is empty).
class PairSolver {
 public:
  PairSolver(const ComponentDescriptor& d1, const ComponentDescriptor& d2, std::optional<IndexPair> free_pair)
      : d1_(d1), d2_(d2), free_(free_pair), k_(d1.parent.k()), x_(at(k_)), y_(at(k_)) {
    for (int t = 0; t < k_; ++t) {
      if (!d1.merged.contains(t)) {
        x_[at(t)] = eigenspace_for(d1.base, d1.parent, t);
      }
      if (!d2.merged.contains(t)) {
        y_[at(t)] = eigenspace_for(d2.base, d2.parent, t);
      }
    }
  }

  std::optional<std::pair<SpectralOperator, SpectralOperator>> solve() {
    try {
      while (step()) {
      }
      std::vector<Subspace> xs;
      std::vector<Subspace> ys;
      for (int t = 0; t < k_; ++t) {
        if (!x_[at(t)] || !y_[at(t)]) {
          return std::nullopt;
        }
        xs.push_back(*x_[at(t)]);
        ys.push_back(*y_[at(t)]);
      }
      auto a = make_operator(d1_.parent, std::move(xs));
      auto b = make_operator(d1_.parent, std::move(ys));
      if (!component_contains(d1_, a) || !component_contains(d2_, b)) {
        return std::nullopt;
      }
      if (free_) {
        const auto verdict = is_adjacent(a, b);
        if (!verdict.adjacent() || verdict.type_pair != free_) {
          return std::nullopt;
        }
      } else if (!same_operator(a, b)) {
        return std::nullopt;
      }
      return std::pair{std::move(a), std::move(b)};
    } catch (const Error&) {
      return std::nullopt;
    }
  }

 private:
  bool linked(int t) const { return !free_ || !free_->contains(t); }

  bool fill(Slot& slot, const Subspace& value) {
    if (slot) {
      return false;
    }
    slot = value;
    return true;
  }

  // One round of propagation; true if anything new was determined.
  bool step() {
    bool changed = false;
    for (int t = 0; t < k_; ++t) {
      if (linked(t)) {
        if (x_[at(t)]) {
          changed |= fill(y_[at(t)], *x_[at(t)]);
        }
        if (y_[at(t)]) {
          changed |= fill(x_[at(t)], *y_[at(t)]);
        }
      }
    }
    changed |= pair_rule(x_, d1_);
    changed |= pair_rule(y_, d2_);
    changed |= completion(x_);
    changed |= completion(y_);
    if (!changed) {
      changed |= shared_rule();
    }
    return changed;
  }

  bool pair_rule(std::vector<Slot>& s, const ComponentDescriptor& d) {
    const int i = d.merged.first;
    const int j = d.merged.second;
    const Subspace m = d.merged_space();
    if (s[at(i)] && !s[at(j)]) {
      s[at(j)] = complement(*s[at(i)], m);
      return true;
    }
    if (s[at(j)] && !s[at(i)]) {
      s[at(i)] = complement(*s[at(j)], m);
      return true;
    }
    return false;
  }

  bool completion(std::vector<Slot>& s) {
    int missing = -1;
    Subspace rest(d1_.parent.ambient_dim(), d1_.base.eigenspace(0).tol());
    for (int t = 0; t < k_; ++t) {
      if (!s[at(t)]) {
        if (missing >= 0) {
          return false;
        }
        missing = t;
      } else {
        rest = sum(rest, *s[at(t)]);
      }
    }
    if (missing < 0) {
      return false;
    }
    s[at(missing)] = complement(rest);
    return true;
  }

  // A linked index merged in both descriptors lies in M_T cap M_Q.
  bool shared_rule() {
    for (int t = 0; t < k_; ++t) {
      if (linked(t) && !x_[at(t)] && d1_.merged.contains(t) && d2_.merged.contains(t)) {
        const Subspace common = intersect(d1_.merged_space(), d2_.merged_space());
        if (common.dim() == d1_.parent.multiplicity(t)) {
          x_[at(t)] = common;
          return true;
        }
      }
    }
    return false;
  }

  const ComponentDescriptor& d1_;
  const ComponentDescriptor& d2_;
  std::optional<IndexPair> free_;
  int k_;
  std::vector<Slot> x_;
  std::vector<Slot> y_;
};

ComponentAdjacency same_family(const ComponentDescriptor& d1, const ComponentDescriptor& d2) {
  if (!is_adjacent(d1.base, d2.base).adjacent()) {
    return {};
  }
  const Subspace mt = d1.merged_space();
  const Subspace mq = d2.merged_space();
  const Subspace shared = equal(mt, mq) ? mt : intersect(mt, mq);
  const auto n_i = d1.parent.multiplicity(d1.merged.first);
  const Subspace x = make_trusted(shared.frame().leftCols(n_i), shared.tol());
  auto a = component_member(d1, x);
  auto b = component_member(d2, x);
  if (!is_adjacent(a, b).adjacent()) {
    fail(ErrorKind::InternalInconsistency, "witness for adjacent components is not an adjacent pair");
  }
  return {ComponentLink::Adjacent, std::move(a), std::move(b)};
}

}  // namespace

ComponentAdjacency components_adjacent(const ComponentDescriptor& d1, const ComponentDescriptor& d2) {
  if (!same_signature(d1.parent, d2.parent)) {
    fail(ErrorKind::ClassMismatch, "descriptors come from different classes");
  }
  if (same_component(d1, d2)) {
    fail(ErrorKind::PreconditionViolated, "descriptors are equal");
  }
  if (d1.merged == d2.merged) {
    return same_family(d1, d2);
  }
  if (auto shared = PairSolver(d1, d2, std::nullopt).solve()) {
    return {ComponentLink::Intersecting, std::move(shared->first), std::nullopt};
  }
  std::optional<std::pair<SpectralOperator, SpectralOperator>> bridge;
  const int k = d1.parent.k();
  for (int u = 0; u < k; ++u) {
    for (int w = u + 1; w < k; ++w) {
      auto found = PairSolver(d1, d2, IndexPair{u, w}).solve();
      if (!found) {
        continue;
      }
      if (bridge && !(same_operator(bridge->first, found->first) && same_operator(bridge->second, found->second))) {
        fail(ErrorKind::InternalInconsistency, "more than one adjacent pair between disjoint components");
      }
      bridge = std::move(found);
    }
  }
  if (!bridge) {
    return {};
  }
  return {ComponentLink::UniqueBridge, std::move(bridge->first), std::move(bridge->second)};
}

}  // namespace grassop
