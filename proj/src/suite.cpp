#include "grassop/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>

#include "grassop/cliques.hpp"
#include "grassop/errors.hpp"
#include "grassop/symmetry.hpp"

namespace grassop {

namespace {

constexpr std::size_t kKeptFailures = 3;

struct TrialFailed {
  std::string message;
};

void expect(bool condition, const std::string& message) {
  if (!condition) {
    throw TrialFailed{message};
  }
}

struct Trial {
  Rng& rng;
  const SuiteConfig& cfg;
  Json payload = Json::object();

  void keep(const std::string& key, const SpectralOperator& op) { payload[key] = operator_to_json(op); }

  // A configured signature meeting the constraints, else a sampled one.
  ClassSignature signature(int k_lo, int k_hi, int n_min, int n_max) {
    std::vector<const ClassSignature*> fits;
    for (const auto& s : cfg.signatures) {
      const auto& d = s.multiplicities();
      if (s.k() >= k_lo && s.k() <= k_hi && *std::min_element(d.begin(), d.end()) >= n_min &&
          s.ambient_dim() <= cfg.max_ambient) {
        fits.push_back(&s);
      }
    }
    if (!fits.empty()) {
      return *fits[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(fits.size()) - 1))];
    }
    return random_signature(rng, rng.uniform_int(k_lo, k_hi), n_min, n_max, cfg.max_ambient);
  }

  IndexPair pair(int k) {
    const int i = rng.uniform_int(0, k - 1);
    int j = rng.uniform_int(0, k - 2);
    if (j >= i) {
      ++j;
    }
    return IndexPair::of(i, j);
  }
};

struct TestDef {
  const char* name;
  const char* property;
  bool fixed;  // deterministic check, run once
  std::function<void(Trial&)> body;
};

std::size_t at(int t) { return static_cast<std::size_t>(t); }

Subspace random_part(const Subspace& s, Index dim, Rng& rng) {
  if (dim == 0) {
    return Subspace(s.ambient_dim(), s.tol());
  }
  return orthonormalize(s.frame() * rng.gaussian(s.dim(), dim), s.tol());
}

void check_path(const OperatorPath& path, const SpectralOperator& a, const SpectralOperator& b) {
  expect(same_operator(path.vertices.front(), a), "path does not start at A");
  expect(same_operator(path.vertices.back(), b), "path does not end at B");
  for (std::size_t e = 0; e < path.length(); ++e) {
    const auto v = is_adjacent(path.vertices[e], path.vertices[e + 1]);
    expect(v.adjacent(), "edge " + std::to_string(e) + " is not adjacent");
    expect(*v.type_pair == path.edge_types[e], "edge " + std::to_string(e) + " has the wrong type");
  }
}

// The (-minus,+plus)-clique whose star center inside X_minus is `center`.
CliqueDescriptor clique_through(const SpectralOperator& a, int minus, int plus, const Subspace& center) {
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

CliqueDescriptor random_clique_through(const SpectralOperator& a, int minus, int plus, Rng& rng) {
  const Subspace& x = a.eigenspace(minus);
  return clique_through(a, minus, plus, random_part(x, x.dim() - 1, rng));
}

Matrix random_hermitian(Index n, Index rank, Rng& rng, double lo, double hi) {
  const Matrix f = rng.unitary(n).leftCols(rank);
  Eigen::VectorXd values(rank);
  for (Index t = 0; t < rank; ++t) {
    values(t) = lo + (hi - lo) * (static_cast<double>(t) + rng.uniform(0.2, 0.8)) / static_cast<double>(rank);
  }
  return f * values.cast<std::complex<double>>().asDiagonal() * f.adjoint();
}

// ---- tests ----

void pseudo_adjacent_c3_test(Trial& t) {
  const auto [a, b] = pseudo_adjacent_c3();
  t.keep("A", a);
  t.keep("B", b);
  expect(same_class(a, b), "A and B are not in one class");
  const auto v = is_adjacent(a, b);
  expect(v.a1 && v.diff_rank == 2, "rank(B - A) is not 2");
  expect(!v.a2, "image of B - A is invariant");
  expect(!v.adjacent(), "pair reported adjacent");
  Vector u(3);
  u << -1.0, 1.0, 1.0;
  const Matrix d = to_matrix(b) - to_matrix(a);
  expect((d * u).norm() < 1e-12, "kernel vector is not annihilated by B - A");
  const Vector au = to_matrix(a) * u;
  const Vector bu = to_matrix(b) * u;
  expect((au + Vector::Unit(3, 0)).norm() < 1e-12 && (bu + Vector::Unit(3, 0)).norm() < 1e-12,
         "A u and B u differ from -e1");
}

void pseudo_adjacent_general_test(Trial& t) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Index n = t.rng.uniform_int(4, t.cfg.max_ambient);
    const Index rank = t.rng.uniform_int(1, static_cast<int>(n) - 2);
    const Matrix c = random_hermitian(n, rank, t.rng, -3.0, 3.0);
    const Subspace x = orthonormalize(t.rng.gaussian(n, 1));
    const double a = t.rng.uniform(0.5, 2.0) * (t.rng.uniform() < 0.5 ? -1.0 : 1.0);
    try {
      const auto inst = pseudo_adjacent_general(c, x, a, t.rng, t.cfg.tol);
      t.keep("A", inst.a);
      t.keep("B", inst.b);
      expect(inst.a1, "rank(B - A) is not 2");
      expect(equal(intersect(inst.m_space, inst.n_space), inst.common), "M cap N differs from Im(C)");
      if (!inst.x_orthogonal_to_common) {
        expect(!inst.adjacent, "pair with X not orthogonal to Im(C) reported adjacent");
      }
      expect(adjacency_oracle_agrees(inst.a, inst.b, t.cfg.tol), "predicate and classification disagree");
      return;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateInput) {
        throw;
      }
    }
  }
  throw TrialFailed{"no non-degenerate instance in 8 attempts"};
}

void adjacency_characterization_test(Trial& t) {
  const auto sig = t.signature(2, 4, 1, 4);
  const auto a = random_operator(sig, t.rng, t.cfg.tol);
  t.keep("A", a);
  switch (t.rng.uniform_int(0, 2)) {
    case 0: {
      const auto p = t.pair(sig.k());
      const auto b = make_ij_adjacent(a, p.first, p.second, t.rng);
      t.keep("B", b);
      const auto v = is_adjacent(a, b, t.cfg.tol);
      expect(v.adjacent() && v.type_pair == p, "constructed pair is not adjacent with its type");
      expect(adjacency_oracle_agrees(a, b, t.cfg.tol), "predicate and classification disagree");
      break;
    }
    case 1: {
      const double eps = std::pow(10.0, t.rng.uniform(-6.0, -1.0));
      const Matrix h = random_hermitian(sig.ambient_dim(), sig.ambient_dim(), t.rng, -1.0, 1.0);
      const Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
      const Matrix u = eig.eigenvectors() *
                       (eig.eigenvalues() * std::complex<double>(0.0, eps)).array().exp().matrix().asDiagonal() *
                       eig.eigenvectors().adjoint();
      const auto b = from_matrix(u * to_matrix(a) * u.adjoint(), sig, t.cfg.tol);
      t.keep("B", b);
      expect(adjacency_oracle_agrees(a, b, t.cfg.tol), "predicate and classification disagree");
      break;
    }
    default: {
      const Index n = std::max<Index>(4, sig.ambient_dim());
      const Matrix c = random_hermitian(n, t.rng.uniform_int(1, static_cast<int>(n) - 2), t.rng, -3.0, 3.0);
      try {
        const auto inst = pseudo_adjacent_general(c, orthonormalize(t.rng.gaussian(n, 1)), 1.5, t.rng, t.cfg.tol);
        t.keep("A", inst.a);
        t.keep("B", inst.b);
        expect(adjacency_oracle_agrees(inst.a, inst.b, t.cfg.tol), "predicate and classification disagree");
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateInput) {
          throw;
        }
      }
    }
  }
}

void image_direct_sum_test(Trial& t) {
  const Index n = t.rng.uniform_int(3, t.cfg.max_ambient);
  const Index r1 = t.rng.uniform_int(1, static_cast<int>(n) - 1);
  const Index r2 = t.rng.uniform_int(1, static_cast<int>(n - r1));
  const Matrix frame = t.rng.gaussian(n, r1 + r2);
  const Matrix f1 = orthonormalize(frame.leftCols(r1)).frame();
  const Matrix f2 = orthonormalize(frame.rightCols(r2)).frame();
  auto spread = [&](Index r) -> Eigen::VectorXcd {
    Eigen::VectorXd v(r);
    for (Index s = 0; s < r; ++s) {
      v(s) = t.rng.uniform(0.5, 2.0) * (t.rng.uniform() < 0.5 ? -1.0 : 1.0);
    }
    return v.cast<std::complex<double>>();
  };
  const Matrix tm = f1 * spread(r1).asDiagonal() * f1.adjoint();
  const Matrix qm = f2 * spread(r2).asDiagonal() * f2.adjoint();
  t.payload["T"] = Json{{"rows", n}, {"rank", r1}};
  t.payload["Q"] = Json{{"rows", n}, {"rank", r2}};
  expect(image_direct_sum_check(tm, qm, t.cfg.tol), "rank(T + Q) differs from rank T + rank Q");
}

// B differs from A only inside X_i + X_j.
SpectralOperator ij_partner(const SpectralOperator& a, IndexPair p, Rng& rng) {
  const Subspace merged = sum(a.eigenspace(p.first), a.eigenspace(p.second));
  const Subspace xi = random_part(merged, a.eigenspace(p.first).dim(), rng);
  std::vector<Subspace> spaces = a.eigenspaces();
  spaces[at(p.first)] = xi;
  spaces[at(p.second)] = complement(xi, merged);
  return make_operator(a.signature(), std::move(spaces));
}

void ij_path_test(Trial& t) {
  const auto sig = t.signature(2, 4, 1, 4);
  const auto p = t.pair(sig.k());
  const auto a = random_operator(sig, t.rng, t.cfg.tol);
  const auto b = ij_partner(a, p, t.rng);
  t.keep("A", a);
  t.keep("B", b);
  expect(ij_connected(a, b, p.first, p.second), "partner is not (i,j)-connected");
  const auto path = ij_path(a, b, p.first, p.second);
  check_path(path, a, b);
  for (const auto& e : path.edge_types) {
    expect(e == p, "edge type outside {i, j}");
  }
  const int small = std::min(sig.multiplicity(p.first), sig.multiplicity(p.second));
  const int side = sig.multiplicity(p.first) <= sig.multiplicity(p.second) ? p.first : p.second;
  const auto common = intersect(a.eigenspace(side), b.eigenspace(side)).dim();
  expect(static_cast<Index>(path.length()) == small - common, "path length differs from n - dim(X cap Y)");
}

void connectivity_test(Trial& t) {
  const auto sig = t.signature(3, 4, 2, 3);
  const auto a = random_operator(sig, t.rng, t.cfg.tol);
  const auto b = random_operator(sig, t.rng, t.cfg.tol);
  t.keep("A", a);
  t.keep("B", b);
  const auto path = connect(a, b);
  check_path(path, a, b);
  const auto& d = sig.multiplicities();
  const auto bound = static_cast<std::size_t>(std::accumulate(d.begin(), d.end(), 0) + 3 * sig.k());
  expect(path.length() <= bound, "path longer than sum n_i + 3k");
  expect(path.length() > 0, "distinct operators joined by an empty path");
}

void component_disjointness_test(Trial& t) {
  const auto sig = t.signature(3, 4, 1, 3);
  const auto p = t.pair(sig.k());
  const auto a = random_operator(sig, t.rng, t.cfg.tol);
  const auto b = random_operator(sig, t.rng, t.cfg.tol);
  t.keep("A", a);
  t.keep("B", b);
  const auto d1 = component_of(a, p.first, p.second);
  const auto d2 = component_of(b, p.first, p.second);
  expect(!same_component(d1, d2), "independent operators share a component");
  const Subspace m = d1.merged_space();
  const auto member = component_member(d1, random_part(m, sig.multiplicity(p.first), t.rng));
  expect(component_contains(d1, member), "sampled member is outside its component");
  expect(!component_contains(d2, member), "member of one component lies in another of the same family");
  expect(same_component(component_of(member, p.first, p.second), d1), "member has a different descriptor");

  IndexPair q = t.pair(sig.k());
  while (q == p) {
    q = t.pair(sig.k());
  }
  const auto d3 = component_of(a, q.first, q.second);
  const auto link = components_adjacent(d1, d3);
  expect(link.link == ComponentLink::Intersecting, "components through A do not intersect");
  expect(same_operator(*link.witness_a, a), "intersection is not {A}");
}

void component_adjacency_test(Trial& t) {
  const auto sig = t.signature(3, 4, 1, 3);
  const auto a = random_operator(sig, t.rng, t.cfg.tol);
  t.keep("A", a);
  const int k = sig.k();
  if (t.rng.uniform() < 0.5) {
    // Same family: adjacent bases.
    const auto p = t.pair(k);
    const auto d1 = component_of(a, p.first, p.second);
    const int rk = d1.base.k();
    const auto rp = t.pair(rk);
    const auto moved = make_ij_adjacent(d1.base, rp.first, rp.second, t.rng);
    const ComponentDescriptor d2{sig, p, moved};
    const auto link = components_adjacent(d1, d2);
    expect(link.link == ComponentLink::Adjacent, "adjacent bases give non-adjacent components");
    t.keep("witness_a", *link.witness_a);
    t.keep("witness_b", *link.witness_b);
    expect(component_contains(d1, *link.witness_a) && component_contains(d2, *link.witness_b),
           "witness outside the components");
    expect(is_adjacent(*link.witness_a, *link.witness_b).adjacent(), "witness pair is not adjacent");
    // Reduced classes such as d = {1, n} make every pair of bases adjacent.
    const auto other = random_operator(d1.base.signature(), t.rng, t.cfg.tol);
    const ComponentDescriptor d3{sig, p, other};
    const bool bases_adjacent = is_adjacent(d1.base, other).adjacent();
    const auto link3 = components_adjacent(d1, d3).link;
    expect(bases_adjacent ? link3 == ComponentLink::Adjacent : link3 == ComponentLink::NotAdjacent,
           "component adjacency differs from base adjacency");
    return;
  }
  // Different families joined by a (u,w)-edge: {i,j} = {u,x}, {p,q} = {x',w}.
  std::vector<int> idx(at(k));
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), std::mt19937_64(t.rng.next_u64()));
  const int u = idx[0];
  const int w = idx[1];
  const int x = idx[2];
  const int y = k >= 4 && t.rng.uniform() < 0.5 ? idx[3] : x;
  const auto b = make_ij_adjacent(a, u, w, t.rng);
  t.keep("B", b);
  const auto d1 = component_of(a, u, x);
  const auto d2 = component_of(b, y, w);
  const auto link = components_adjacent(d1, d2);
  expect(link.link == ComponentLink::UniqueBridge, "disjoint adjacent components without a unique bridge");
  expect(same_operator(*link.witness_a, a) && same_operator(*link.witness_b, b), "bridge differs from (A, B)");
}

void triangle_test(Trial& t) {
  const auto sig = t.signature(2, 4, 1, 4);
  const auto p = t.pair(sig.k());
  const auto a = random_operator(sig, t.rng, t.cfg.tol);
  const auto b = make_ij_adjacent(a, p.first, p.second, t.rng);
  const Subspace xi = a.eigenspace(p.first);
  const Subspace yi = aligned_eigenspaces(a, b)[at(p.first)];
  const Subspace merged = sum(a.eigenspace(p.first), a.eigenspace(p.second));
  const Subspace meet = intersect(xi, yi);
  const Subspace join = sum(xi, yi);
  Subspace zi = t.rng.uniform() < 0.5 ? sum(meet, random_part(complement(meet, join), 1, t.rng))
                                      : random_part(join, xi.dim(), t.rng);
  if (zi.dim() != xi.dim()) {
    zi = sum(meet, random_part(complement(meet, join), 1, t.rng));
  }
  std::vector<Subspace> spaces = a.eigenspaces();
  spaces[at(p.first)] = zi;
  spaces[at(p.second)] = complement(zi, merged);
  const auto c = make_operator(sig, std::move(spaces));
  t.keep("A", a);
  t.keep("B", b);
  t.keep("C", c);
  expect(triangle_type(a, b, c) == p, "triangle type differs from the construction");
}

void clique_classification_test(Trial& t) {
  const auto sig = t.signature(2, 3, 2, 4);
  const auto p = t.pair(sig.k());
  const bool star = t.rng.uniform() < 0.5;
  const int minus = star ? p.first : p.second;
  const int plus = star ? p.second : p.first;
  const auto a = random_operator(sig, t.rng, t.cfg.tol);
  const auto d = random_clique_through(a, minus, plus, t.rng);
  std::vector<SpectralOperator> members;
  for (int s = 0; s < 4; ++s) {
    members.push_back(clique_member(d, random_part(d.enlarged(), 1, t.rng)));
    t.keep("member" + std::to_string(s), members.back());
  }
  for (std::size_t r = 0; r < members.size(); ++r) {
    expect(clique_contains(d, members[r]), "sampled member outside its clique");
    for (std::size_t s = r + 1; s < members.size(); ++s) {
      expect(is_adjacent(members[r], members[s]).type_pair == p, "members are not (i,j)-adjacent");
    }
  }
  const auto cls = classify_clique(members);
  expect(cls.pair == p, "classified type differs");
  expect(cls.orientation == (star ? CliqueOrientation::Star : CliqueOrientation::Top), "wrong orientation");
  expect(same_clique(cls.descriptor, d), "classification does not recover the clique");
}

void clique_intersection_test(Trial& t) {
  const auto sig = t.signature(3, 3, 2, 3);
  const auto p = t.pair(sig.k());
  const auto a = random_operator(sig, t.rng, t.cfg.tol);
  t.keep("A", a);
  auto both_ways = [](const CliqueDescriptor& d1, const CliqueDescriptor& d2) {
    const auto r1 = clique_intersection(d1, d2);
    const auto r2 = clique_intersection(d2, d1);
    expect(r1.kind == r2.kind, "intersection is not symmetric");
    if (r1.member) {
      expect(same_operator(*r1.member, *r2.member), "intersection member is not symmetric");
    }
    if (r1.line) {
      expect(same_line(*r1.line, *r2.line), "intersection line is not symmetric");
    }
    return r1;
  };
  switch (t.rng.uniform_int(0, 3)) {
    case 0: {
      const auto b = make_ij_adjacent(a, p.first, p.second, t.rng);
      t.keep("B", b);
      const auto line = line_through(a, b);
      const auto r = both_ways(line.star, line.top);
      expect(r.kind == IntersectionKind::Line && same_line(*r.line, line), "star and top do not meet in the line");
      const auto c = line_member(line, random_part(line.plane(), 1, t.rng));
      expect(line_contains(*r.line, a) && line_contains(*r.line, b) && line_contains(*r.line, c),
             "line misses an expected member");
      expect(is_adjacent(a, c).type_pair == p && is_adjacent(b, c).type_pair == p, "line members not adjacent");
      break;
    }
    case 1: {
      const auto d1 = random_clique_through(a, p.first, p.second, t.rng);
      const auto d2 = random_clique_through(a, p.first, p.second, t.rng);
      const auto r = both_ways(d1, d2);
      expect(r.kind == IntersectionKind::Singleton && same_operator(*r.member, a), "two stars through A miss A");
      break;
    }
    case 2: {
      IndexPair q = t.pair(sig.k());
      while (q == p) {
        q = t.pair(sig.k());
      }
      const auto d1 = random_clique_through(a, p.first, p.second, t.rng);
      const auto d2 = random_clique_through(a, q.second, q.first, t.rng);
      const auto r = both_ways(d1, d2);
      expect(r.kind == IntersectionKind::Singleton && same_operator(*r.member, a),
             "cliques of different types through A do not meet in A");
      break;
    }
    default: {
      const auto b = random_operator(sig, t.rng, t.cfg.tol);
      t.keep("B", b);
      const auto r = both_ways(random_clique_through(a, p.first, p.second, t.rng),
                               random_clique_through(b, p.second, p.first, t.rng));
      expect(r.kind == IntersectionKind::Empty, "cliques with different fixed eigenspaces intersect");
    }
  }
}

void clique_chain_test(Trial& t) {
  const auto sig = t.signature(3, 3, 2, 3);
  const auto p = t.pair(sig.k());
  const auto a = random_operator(sig, t.rng, t.cfg.tol);
  const auto b = ij_partner(a, p, t.rng);
  t.keep("A", a);
  t.keep("B", b);
  auto oriented = [&](const SpectralOperator& op) {
    return t.rng.uniform() < 0.5 ? random_clique_through(op, p.first, p.second, t.rng)
                                 : random_clique_through(op, p.second, p.first, t.rng);
  };
  const auto d1 = oriented(a);
  const auto d2 = oriented(b);
  std::vector<Subspace> base_spaces;
  const ClassSignature reduced = reduced_signature(sig, p.first, p.second, sig.multiplicity(p.first));
  for (int s = 0; s < reduced.k(); ++s) {
    const int q = *sig.index_of(reduced.eigenvalue(s));
    base_spaces.push_back(q == p.second ? sum(a.eigenspace(p.first), a.eigenspace(p.second)) : a.eigenspace(q));
  }
  const ComponentDescriptor comp{sig, p, make_operator(reduced, std::move(base_spaces))};
  const auto chain = clique_chain(d1, d2, comp);
  expect(same_clique(chain.front(), d1) && same_clique(chain.back(), d2), "chain has the wrong endpoints");
  for (std::size_t s = 1; s < chain.size(); ++s) {
    expect(clique_intersection(chain[s - 1], chain[s]).kind == IntersectionKind::Line,
           "consecutive cliques do not meet in a line");
  }
}

Symmetry random_symmetry(const ClassSignature& sig, Rng& rng, bool identity_permutation) {
  Permutation delta = Permutation::identity(sig.k());
  if (!identity_permutation) {
    const auto group = sd_group(sig);
    delta = group[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(group.size()) - 1))];
  }
  return Symmetry::make(sig, rng.unitary(sig.ambient_dim()), rng.uniform() < 0.5, delta);
}

void unitary_symmetry_test(Trial& t) {
  const auto sig = t.signature(3, 4, 1, 3);
  const auto s = random_symmetry(sig, t.rng, true);
  const auto report = verify_automorphism(s, 2, t.rng);
  expect(report.ok(), "conjugation changed adjacency or its type");
  for (const auto& [from, to] : report.transport) {
    expect(from == to, "conjugation changed an adjacency type");
  }
  const auto a = random_operator(sig, t.rng, t.cfg.tol);
  t.keep("A", a);
  const Matrix direct = s.matrix * (s.antiunitary ? Matrix(to_matrix(a).conjugate()) : to_matrix(a)) *
                        s.matrix.adjoint();
  expect((to_matrix(apply_symmetry(s, a)) - direct).cwiseAbs().maxCoeff() < 1e-9,
         "frame action differs from matrix conjugation");
}

void permutation_symmetry_test(Trial& t) {
  // Two equal multiplicities so S(d) is non-trivial.
  auto sig = t.signature(3, 4, 1, 3);
  auto d = sig.multiplicities();
  d[1] = d[0];
  sig = ClassSignature::make(sig.eigenvalues(), d);
  if (sig.ambient_dim() > t.cfg.max_ambient) {
    sig = ClassSignature::make(sig.eigenvalues(), std::vector<int>(d.size(), 2));
  }
  const auto s = random_symmetry(sig, t.rng, false);
  const auto report = verify_automorphism(s, 2, t.rng);
  expect(report.ok(), "symmetry changed adjacency or mis-transported a type");
  std::vector<SpectralOperator> samples;
  for (int r = 0; r < 2; ++r) {
    samples.push_back(random_operator(sig, t.rng, t.cfg.tol));
  }
  t.keep("A", samples.front());
  expect(commutation_check(s.matrix, s.antiunitary, s.permutation, samples), "U delta(A) U* != delta(U A U*)");
  const auto s2 = random_symmetry(sig, t.rng, false);
  const auto lhs = apply_symmetry(compose(s, s2), samples.front());
  const auto rhs = apply_symmetry(s, apply_symmetry(s2, samples.front()));
  expect(same_operator(lhs, rhs), "composition does not act as the composite");
  expect(same_operator(apply_symmetry(compose(s, inverse(s)), samples.front()), samples.front()),
         "s o s^-1 is not the identity");
  for (int i = 0; i < sig.k(); ++i) {
    for (int j = i + 1; j < sig.k(); ++j) {
      const auto image = adjacency_type_transport(s, IndexPair{i, j});
      const auto& m = sig.multiplicities();
      const bool same = (m[at(image.first)] == m[at(i)] && m[at(image.second)] == m[at(j)]) ||
                        (m[at(image.first)] == m[at(j)] && m[at(image.second)] == m[at(i)]);
      expect(same, "transported type changes multiplicities");
    }
  }
}

void semilinear_k2_test(Trial& t) {
  const auto sig = t.signature(2, 2, 1, 5);
  const Index n = sig.ambient_dim();
  const auto v = SemilinearMap::make(t.rng.gaussian(n, n), t.rng.uniform() < 0.5);
  const auto w = SemilinearMap::make(t.rng.gaussian(n, n), t.rng.uniform() < 0.5);
  const auto fv = semilinear_k2_automorphism(v, sig);
  const auto fw = semilinear_k2_automorphism(w, sig);
  const auto fvw = semilinear_k2_automorphism(compose(v, w), sig);
  const auto a = random_operator(sig, t.rng, t.cfg.tol);
  const auto b = make_ij_adjacent(a, 0, 1, t.rng);
  t.keep("A", a);
  t.keep("B", b);
  expect(is_adjacent(fv(a), fv(b)).adjacent(), "f_V broke an adjacency");
  expect(same_operator(fv(fw(a)), fvw(a)), "f_V o f_W differs from f_VW");
  const auto c = random_operator(sig, t.rng, t.cfg.tol);
  if (!is_adjacent(a, c).adjacent()) {
    expect(!is_adjacent(fv(a), fv(c)).adjacent(), "f_V created an adjacency");
  }
  if (n >= 2) {
    expect(!orthogonality_defect(v, 8, t.rng).preserves, "generic V preserves orthogonality");
  }
}

const std::vector<TestDef>& registry() {
  static const std::vector<TestDef> tests{
      {"pseudo_adjacent_c3", "fixed 3x3 pair: rank-2 difference whose image is not invariant, so not adjacent",
       true, pseudo_adjacent_c3_test},
      {"pseudo_adjacent_general", "C + aP_X versus its conjugate: rank-2 difference without adjacency", false,
       pseudo_adjacent_general_test},
      {"adjacency_characterization",
       "rank-2 invariant difference iff exactly two eigenspaces move to adjacent ones", false,
       adjacency_characterization_test},
      {"image_direct_sum", "Hermitian T, Q with trivially intersecting images: rank(T+Q) = rank T + rank Q", false,
       image_direct_sum_test},
      {"ij_path", "(i,j)-connected operators are joined by (i,j)-edges", false, ij_path_test},
      {"connectivity", "every class graph is connected; paths validate edge by edge", false, connectivity_test},
      {"component_disjointness",
       "components of one family are disjoint; components of two families share at most one operator", false,
       component_disjointness_test},
      {"component_adjacency",
       "components with adjacent bases are adjacent; distinct families meet or are joined by a unique pair", false,
       component_adjacency_test},
      {"triangle_type", "three mutually adjacent operators share one adjacency type", false, triangle_test},
      {"clique_classification", "pairwise adjacent members recover their star or top clique", false,
       clique_classification_test},
      {"clique_intersection", "two maximal cliques meet in nothing, one operator or a line", false,
       clique_intersection_test},
      {"clique_chain", "cliques of one component are joined by cliques meeting in lines", false, clique_chain_test},
      {"unitary_symmetry", "unitary and antiunitary conjugation preserve adjacency and each type", false,
       unitary_symmetry_test},
      {"permutation_symmetry", "U delta(.) U* is an automorphism that relabels types by delta", false,
       permutation_symmetry_test},
      {"semilinear_k2", "for two eigenvalues every invertible semilinear map induces an automorphism", false,
       semilinear_k2_test},
  };
  return tests;
}

TestResult run_test(const TestDef& def, const SuiteConfig& cfg) {
  TestResult result;
  result.name = def.name;
  result.property = def.property;
  const auto start = std::chrono::steady_clock::now();
  const int trials = def.fixed ? 1 : cfg.trials;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::derive(cfg.seed, def.name, static_cast<std::uint64_t>(trial));
    Trial ctx{rng, cfg};
    std::optional<std::string> message;
    try {
      def.body(ctx);
    } catch (const TrialFailed& f) {
      message = f.message;
    } catch (const Error& e) {
      message = e.what();
    }
    ++result.trials;
    if (message) {
      ++result.failures;
      if (result.examples.size() < kKeptFailures) {
        result.examples.push_back({trial, *message, std::move(ctx.payload)});
      }
    }
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace

void SuiteConfig::validate() const {
  if (trials < 1) {
    fail(ErrorKind::InvalidInput, "trials must be at least 1");
  }
  if (max_ambient < 4 || max_ambient > 64) {
    fail(ErrorKind::InvalidInput, "max_ambient must lie in [4, 64]");
  }
  tol.validate();
}

bool SuiteReport::passed() const {
  return std::all_of(tests.begin(), tests.end(), [](const TestResult& r) { return r.failures == 0; });
}

Json SuiteReport::to_json(bool with_timing) const {
  Json list = Json::array();
  int failures = 0;
  for (const auto& r : tests) {
    Json examples = Json::array();
    for (const auto& f : r.examples) {
      examples.push_back({{"trial", f.trial}, {"message", f.message}, {"operators", f.payload}});
    }
    Json entry{{"name", r.name},
               {"property", r.property},
               {"trials", r.trials},
               {"failures", r.failures},
               {"counterexamples", std::move(examples)}};
    if (with_timing) {
      entry["seconds"] = r.seconds;
    }
    failures += r.failures;
    list.push_back(std::move(entry));
  }
  return Json{{"seed", seed}, {"passed", passed()}, {"failures", failures}, {"tests", std::move(list)}};
}

std::vector<std::string> suite_test_names() {
  std::vector<std::string> out;
  for (const auto& t : registry()) {
    out.emplace_back(t.name);
  }
  return out;
}

ClassSignature random_signature(Rng& rng, int k, int n_min, int n_max, int max_ambient) {
  if (k < 2 || n_min < 1 || n_max < n_min || k * n_min > max_ambient) {
    fail(ErrorKind::InvalidInput, "no signature fits the requested bounds");
  }
  std::vector<int> d(at(k));
  for (auto& n : d) {
    n = rng.uniform_int(n_min, n_max);
  }
  while (std::accumulate(d.begin(), d.end(), 0) > max_ambient) {
    auto largest = std::max_element(d.begin(), d.end());
    --*largest;
  }
  std::vector<int> slots(11);
  std::iota(slots.begin(), slots.end(), -5);
  std::shuffle(slots.begin(), slots.end(), std::mt19937_64(rng.next_u64()));
  std::vector<double> sigma;
  for (int t = 0; t < k; ++t) {
    sigma.push_back(0.5 * slots[at(t)]);
  }
  return ClassSignature::make(std::move(sigma), std::move(d));
}

SuiteReport run_suite(const SuiteConfig& config) {
  config.validate();
  const auto names = suite_test_names();
  for (const auto& wanted : config.only) {
    if (std::find(names.begin(), names.end(), wanted) == names.end()) {
      fail(ErrorKind::InvalidInput, "unknown test '" + wanted + "'");
    }
  }
  SuiteReport report;
  report.seed = config.seed;
  for (const auto& def : registry()) {
    if (!config.only.empty() && std::find(config.only.begin(), config.only.end(), def.name) == config.only.end()) {
      continue;
    }
    report.tests.push_back(run_test(def, config));
  }
  return report;
}

}  // namespace grassop
