// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "grassop/cliques.hpp"
#include "grassop/errors.hpp"
#include "grassop/suite.hpp"
#include "grassop/symmetry.hpp"

using namespace grassop;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

bool report(int id, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  const bool pass = out.ok && (limit_seconds <= 0.0 || seconds < limit_seconds);
  std::printf("criterion %d: %s  %s  (%.3f s", id, pass ? "PASS" : "FAIL", out.detail.c_str(), seconds);
  if (limit_seconds > 0.0) {
    std::printf(", limit %.1f s", limit_seconds);
  }
  std::printf(")\n");
  std::fflush(stdout);
  return pass;
}

Subspace random_part(const Subspace& s, Index dim, Rng& rng) {
  return orthonormalize(s.frame() * rng.gaussian(s.dim(), dim), s.tol());
}

IndexPair random_pair(int k, Rng& rng) {
  const int i = rng.uniform_int(0, k - 1);
  int j = rng.uniform_int(0, k - 2);
  if (j >= i) {
    ++j;
  }
  return IndexPair::of(i, j);
}

Matrix random_hermitian(Index n, Index rank, Rng& rng) {
  const Matrix f = rng.unitary(n).leftCols(rank);
  Eigen::VectorXd values(rank);
  for (Index t = 0; t < rank; ++t) {
    values(t) = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.5, 3.0);
  }
  return f * values.cast<std::complex<double>>().asDiagonal() * f.adjoint();
}

// B with the same eigenvalues and eigenspaces W X_t for a unitary W close to I.
SpectralOperator perturbed(const SpectralOperator& a, double eps, Rng& rng) {
  const Index n = a.ambient_dim();
  const Matrix g = rng.gaussian(n, n);
  const Matrix h = (g + g.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const Eigen::VectorXcd phases =
      (std::complex<double>(0.0, eps) * eig.eigenvalues().cast<std::complex<double>>()).array().exp();
  const Matrix w = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
  std::vector<Subspace> spaces;
  for (const auto& x : a.eigenspaces()) {
    spaces.push_back(orthonormalize(w * x.frame()));
  }
  return make_operator(a.signature(), std::move(spaces));
}

// Same eigenspaces outside {i, j}; a fresh split of X_i + X_j.
SpectralOperator ij_partner(const SpectralOperator& a, IndexPair p, Rng& rng) {
  const Subspace merged = sum(a.eigenspace(p.first), a.eigenspace(p.second));
  const Subspace xi = random_part(merged, a.eigenspace(p.first).dim(), rng);
  std::vector<Subspace> spaces = a.eigenspaces();
  spaces[static_cast<std::size_t>(p.first)] = xi;
  spaces[static_cast<std::size_t>(p.second)] = complement(xi, merged);
  return make_operator(a.signature(), std::move(spaces));
}

Outcome worked_example() {
  const auto [a, b] = pseudo_adjacent_c3();
  // Independent oracle: eigenvalues of the real symmetric difference.
  Eigen::Matrix3d d;
  d << 0, -1, 1, -1, -1, 0, 1, 0, 1;
  d /= 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(d);
  Eigen::Vector3d sv = eig.eigenvalues().cwiseAbs();
  std::sort(sv.data(), sv.data() + 3, std::greater<>());
  const double half_root3 = std::sqrt(3.0) / 2.0;
  bool ok = std::abs(sv(0) - half_root3) < 1e-8 && std::abs(sv(1) - half_root3) < 1e-8 && sv(2) < 1e-8;
  ok = ok && (to_matrix(b) - to_matrix(a) - d.cast<std::complex<double>>()).cwiseAbs().maxCoeff() < 1e-8;

  const auto v = is_adjacent(a, b);
  ok = ok && same_class(a, b) && v.a1 && v.diff_rank == 2 && !v.a2 && !v.adjacent();
  Vector u(3);
  u << -1, 1, 1;
  const Vector au = to_matrix(a) * u;
  const Vector bu = to_matrix(b) * u;
  ok = ok && (au + Vector::Unit(3, 0)).norm() < 1e-8 && (bu + Vector::Unit(3, 0)).norm() < 1e-8;
  return {ok, "rank(B - A) = " + std::to_string(v.diff_rank) + ", (A2) " + (v.a2 ? "holds" : "fails") +
                  ", adjacent = " + (v.adjacent() ? "true" : "false")};
}

Outcome characterization() {
  Rng rng(1001);
  int trials = 0;
  int disagreements = 0;
  int adjacent = 0;
  int kinds[4] = {0, 0, 0, 0};
  while (trials < 1200) {
    const int kind = trials % 4;
    bool agree = true;
    if (kind == 3) {
      const Index n = rng.uniform_int(4, 12);
      const Matrix c = random_hermitian(n, rng.uniform_int(1, static_cast<int>(n) - 2), rng);
      Subspace x = orthonormalize(rng.gaussian(n, 1));
      if (rng.uniform() < 0.3) {
        x = random_part(complement(orthonormalize(c)), 1, rng);
      }
      try {
        const auto inst = pseudo_adjacent_general(c, x, rng.uniform(0.5, 2.0), rng);
        agree = adjacency_oracle_agrees(inst.a, inst.b);
        adjacent += inst.adjacent ? 1 : 0;
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::DegenerateInput) {
          continue;
        }
        throw;
      }
    } else {
      const int k = rng.uniform_int(2, 4);
      const auto sig = random_signature(rng, k, 1, 4, 12);
      const auto a = random_operator(sig, rng);
      const auto p = random_pair(k, rng);
      SpectralOperator b = a;
      if (kind == 0) {
        b = make_ij_adjacent(a, p.first, p.second, rng);
      } else if (kind == 1) {
        b = perturbed(a, rng.uniform() < 0.5 ? 1e-3 : 0.5, rng);
      } else {
        b = ij_partner(a, p, rng);
      }
      agree = adjacency_oracle_agrees(a, b);
      adjacent += is_adjacent(a, b).adjacent() ? 1 : 0;
    }
    ++kinds[kind];
    ++trials;
    disagreements += agree ? 0 : 1;
  }
  return {disagreements == 0, std::to_string(trials) + " pairs (" + std::to_string(kinds[0]) + " constructed, " +
                                  std::to_string(kinds[1]) + " perturbed, " + std::to_string(kinds[2]) +
                                  " same-component, " + std::to_string(kinds[3]) + " C + aP_X), " +
                                  std::to_string(adjacent) + " adjacent, " + std::to_string(disagreements) +
                                  " disagreements"};
}

Outcome connectedness() {
  Rng rng(1002);
  int failures = 0;
  std::size_t longest = 0;
  for (int t = 0; t < 200; ++t) {
    const auto sig = random_signature(rng, rng.uniform_int(3, 4), 2, 3, 12);
    const auto a = random_operator(sig, rng);
    const auto b = random_operator(sig, rng);
    const auto path = connect(a, b);
    bool ok = same_operator(path.vertices.front(), a) && same_operator(path.vertices.back(), b);
    for (std::size_t e = 0; ok && e < path.length(); ++e) {
      const auto v = is_adjacent(path.vertices[e], path.vertices[e + 1]);
      ok = v.adjacent() && *v.type_pair == path.edge_types[e];
    }
    failures += ok ? 0 : 1;
    longest = std::max(longest, path.length());
  }
  return {failures == 0, "200 pairs, longest path " + std::to_string(longest) + ", " + std::to_string(failures) +
                             " failures"};
}

Outcome triangles() {
  Rng rng(1003);
  int failures = 0;
  for (int t = 0; t < 300; ++t) {
    const auto sig = random_signature(rng, rng.uniform_int(2, 4), 2, 4, 12);
    const auto a = random_operator(sig, rng);
    const auto p = random_pair(sig.k(), rng);
    const auto b = make_ij_adjacent(a, p.first, p.second, rng);
    SpectralOperator c = a;
    if (t % 2 == 0) {
      // third vertex on the line through A and B
      const auto line = line_through(a, b);
      c = line_member(line, random_part(line.plane(), 1, rng));
    } else {
      // third vertex in the star clique through A and B
      const Subspace meet = intersect(a.eigenspace(p.first), b.eigenspace(p.first));
      const Subspace merged = sum(a.eigenspace(p.first), a.eigenspace(p.second));
      const Subspace zi = sum(meet, random_part(complement(meet, merged), 1, rng));
      std::vector<Subspace> spaces = a.eigenspaces();
      spaces[static_cast<std::size_t>(p.first)] = zi;
      spaces[static_cast<std::size_t>(p.second)] = complement(zi, merged);
      c = make_operator(sig, std::move(spaces));
    }
    try {
      failures += triangle_type(a, b, c) == p ? 0 : 1;
    } catch (const Error&) {
      ++failures;
    }
  }
  return {failures == 0, "300 triangles, " + std::to_string(failures) + " failures"};
}

Outcome direct_sums() {
  Rng rng(1004);
  int failures = 0;
  for (int t = 0; t < 200; ++t) {
    const Index n = rng.uniform_int(2, 12);
    const Index r1 = rng.uniform_int(1, static_cast<int>(n) - 1);
    const Index r2 = rng.uniform_int(1, static_cast<int>(n - r1));
    // Independent columns: Im(T) and Im(Q) meet only in 0 but are not orthogonal.
    const Matrix g = rng.gaussian(n, r1 + r2);
    const Subspace s1 = orthonormalize(g.leftCols(r1));
    const Subspace s2 = orthonormalize(g.rightCols(r2));
    Eigen::VectorXd v1(r1);
    Eigen::VectorXd v2(r2);
    for (Index s = 0; s < r1; ++s) {
      v1(s) = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.5, 2.0);
    }
    for (Index s = 0; s < r2; ++s) {
      v2(s) = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.5, 2.0);
    }
    const Matrix tm = s1.frame() * v1.cast<std::complex<double>>().asDiagonal() * s1.frame().adjoint();
    const Matrix qm = s2.frame() * v2.cast<std::complex<double>>().asDiagonal() * s2.frame().adjoint();
    // Oracle: rank of T + Q from its Hermitian eigenvalues.
    Eigen::SelfAdjointEigenSolver<Matrix> eig(tm + qm, Eigen::EigenvaluesOnly);
    const double top = eig.eigenvalues().cwiseAbs().maxCoeff();
    const auto oracle_rank = (eig.eigenvalues().array().abs() > 1e-9 * top).count();
    const bool ok = image_direct_sum_check(tm, qm) && oracle_rank == r1 + r2;
    failures += ok ? 0 : 1;
  }
  return {failures == 0, "200 pairs, " + std::to_string(failures) + " failures"};
}

Outcome symmetries() {
  Rng rng(1005);
  const auto sig = ClassSignature::make({-1.0, 0.5, 2.0}, {2, 2, 2});
  const auto group = sd_group(sig);
  int failures = 0;
  int commutation_failures = 0;
  int identity_type_failures = 0;
  for (int t = 0; t < 100; ++t) {
    const bool anti = rng.uniform() < 0.5;
    const auto& delta = t % 4 == 0 ? group.front() : group[static_cast<std::size_t>(rng.uniform_int(0, 5))];
    const auto s = Symmetry::make(sig, rng.unitary(6), anti, delta);
    const auto rep = verify_automorphism(s, 50, rng);
    failures += rep.ok() && rep.adjacent_pairs == 50 && rep.non_adjacent_pairs == 50 ? 0 : 1;
    if (delta == Permutation::identity(3)) {
      for (const auto& [type, image] : rep.transport) {
        identity_type_failures += type == image ? 0 : 1;
      }
    }
    std::vector<SpectralOperator> samples;
    for (int r = 0; r < 5; ++r) {
      samples.push_back(random_operator(sig, rng));
    }
    commutation_failures += commutation_check(s.matrix, s.antiunitary, delta, samples) ? 0 : 1;
  }
  return {failures == 0 && commutation_failures == 0 && identity_type_failures == 0,
          "100 symmetries x 50 + 50 pairs, " + std::to_string(failures) + " adjacency failures, " +
              std::to_string(identity_type_failures) + " type changes under delta = id, " +
              std::to_string(commutation_failures) + " commutation failures"};
}

Outcome two_eigenvalue_counterpoint() {
  Rng rng(1006);
  const auto sig = ClassSignature::make({0.0, 1.0}, {2, 2});
  Matrix m = Matrix::Identity(4, 4);
  m(1, 1) = 2.0;
  const auto v = SemilinearMap::make(m, false);
  const auto fv = semilinear_k2_automorphism(v, sig);
  int failures = 0;
  for (int t = 0; t < 200; ++t) {
    const auto a = random_operator(sig, rng);
    const auto b = make_ij_adjacent(a, 0, 1, rng);
    failures += is_adjacent(fv(a), fv(b)).adjacent() ? 0 : 1;
  }
  const auto verdict = orthogonality_defect(v, 50, rng);
  const bool ok = failures == 0 && !verdict.preserves && !verdict.scale.has_value();
  return {ok, "200 adjacent pairs, " + std::to_string(failures) + " broken; orthogonality preserved = " +
                  (verdict.preserves ? "true" : "false") + ", scale = " + (verdict.scale ? "some" : "none")};
}

Outcome structure() {
  SuiteConfig cfg;
  cfg.seed = 1008;
  cfg.trials = 100;
  cfg.only = {"component_disjointness", "component_adjacency", "clique_intersection", "clique_chain"};
  const auto focused = run_suite(cfg);
  std::string detail;
  bool ok = focused.passed();
  for (const auto& r : focused.tests) {
    detail += r.name + " " + std::to_string(r.trials - r.failures) + "/" + std::to_string(r.trials) + ", ";
    ok = ok && r.trials >= 100;
  }
  SuiteConfig full;
  full.seed = 1009;
  const auto start = Clock::now();
  const auto all = run_suite(full);
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  ok = ok && all.passed() && seconds < 120.0;
  char buf[96];
  std::snprintf(buf, sizeof buf, "full suite %s in %.2f s", all.passed() ? "passed" : "failed", seconds);
  return {ok, detail + buf};
}

}  // namespace

int main() {
  bool all = true;
  all &= report(1, 0.1, worked_example);
  all &= report(2, 30.0, characterization);
  all &= report(3, 30.0, connectedness);
  all &= report(4, 10.0, triangles);
  all &= report(5, 0.0, direct_sums);
  all &= report(6, 0.0, symmetries);
  all &= report(7, 0.0, two_eigenvalue_counterpoint);
  all &= report(8, 0.0, structure);
  return all ? 0 : 1;
}
