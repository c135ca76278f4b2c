#include <gtest/gtest.h>
#include <functional>
#include <limits>

#include <cmath>
#include <numbers>

#include "grassop/errors.hpp"
#include "grassop/random.hpp"
#include "grassop/subspace.hpp"

using namespace grassop;

namespace {

Subspace span(std::initializer_list<Vector> vs) {
  Matrix m(static_cast<Index>(vs.begin()->size()), static_cast<Index>(vs.size()));
  Index c = 0;
  for (const auto& v : vs) {
    m.col(c++) = v;
  }
  return orthonormalize(m);
}

Vector e(Index n, Index i) { return Vector::Unit(n, i); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& err) {
    return err.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST(Subspace, FromFrameValidates) {
  Matrix bad(3, 2);
  bad << 1, 1, 0, 0, 0, 0;
  EXPECT_EQ(kind_of([&] { Subspace::from_frame(bad); }), ErrorKind::InvalidInput);
  Matrix wide = Matrix::Identity(2, 3);
  EXPECT_EQ(kind_of([&] { Subspace::from_frame(wide); }), ErrorKind::InvalidInput);
  Matrix nan = Matrix::Identity(3, 1);
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(kind_of([&] { Subspace::from_frame(nan); }), ErrorKind::InvalidInput);
  EXPECT_EQ(Subspace::from_frame(Matrix::Identity(4, 2)).dim(), 2);
}

TEST(Subspace, ToleranceBounds) {
  EXPECT_EQ(kind_of([] { Tolerance{0.0, 1e-8}.validate(); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { Tolerance{1e-9, 0.5}.validate(); }), ErrorKind::InvalidInput);
}

TEST(Subspace, OrthonormalizeDropsDependentColumns) {
  Matrix m(3, 3);
  m << 1, 2, 0, 0, 0, 1, 0, 0, 0;
  EXPECT_EQ(orthonormalize(m).dim(), 2);
  EXPECT_EQ(numerical_rank(m), 2);
  EXPECT_EQ(numerical_rank(Matrix::Zero(3, 3)), 0);
}

TEST(Subspace, NumericalRankReferenceScale) {
  // Round-off sized difference: relative to itself it looks full rank,
  // relative to the scale of the operators it is zero.
  Matrix tiny = Matrix::Identity(3, 3) * 1e-15;
  EXPECT_EQ(numerical_rank(tiny), 3);
  EXPECT_EQ(numerical_rank(tiny, {}, 1.0), 0);
}

TEST(Subspace, IntersectSumComplementOnCoordinatePlanes) {
  const Index n = 4;
  const auto a = span({e(n, 0), e(n, 1)});
  const auto b = span({e(n, 1), e(n, 2)});
  const auto i = intersect(a, b);
  EXPECT_EQ(i.dim(), 1);
  EXPECT_TRUE(equal(i, span({e(n, 1)})));
  EXPECT_EQ(sum(a, b).dim(), 3);
  EXPECT_TRUE(equal(complement(sum(a, b)), span({e(n, 3)})));
  EXPECT_TRUE(equal(complement(span({e(n, 0)}), a), span({e(n, 1)})));
  EXPECT_EQ(kind_of([&] { complement(b, a); }), ErrorKind::NotContained);
  EXPECT_TRUE(intersect(span({e(n, 0)}), span({e(n, 3)})).is_zero());
}

TEST(Subspace, PrincipalAnglesMatchClosedForm) {
  const Index n = 4;
  for (double theta : {1e-9, 1e-6, 0.3, 1.0, std::numbers::pi / 2 - 1e-7}) {
    const Vector v = std::cos(theta) * e(n, 0) + std::sin(theta) * e(n, 2);
    const Vector w = std::cos(2 * theta / 3) * e(n, 1) + std::sin(2 * theta / 3) * e(n, 3);
    const auto angles = principal_angles(span({e(n, 0), e(n, 1)}), span({v, w}));
    ASSERT_EQ(angles.size(), 2u);
    EXPECT_NEAR(angles[0], 2 * theta / 3, 1e-12 + 1e-10 * theta);
    EXPECT_NEAR(angles[1], theta, 1e-12 + 1e-10 * theta);
  }
}

TEST(Subspace, TinyAngleIsNotEquality) {
  const Index n = 3;
  const Vector v = std::cos(1e-6) * e(n, 0) + std::sin(1e-6) * e(n, 1);
  EXPECT_FALSE(equal(span({e(n, 0)}), span({v})));
  const Vector u = std::cos(1e-10) * e(n, 0) + std::sin(1e-10) * e(n, 1);
  EXPECT_TRUE(equal(span({e(n, 0)}), span({u})));
}

TEST(Subspace, AdjacencyOfSubspaces) {
  const Index n = 4;
  EXPECT_TRUE(subspaces_adjacent(span({e(n, 0), e(n, 1)}), span({e(n, 0), e(n, 2)})));
  EXPECT_FALSE(subspaces_adjacent(span({e(n, 0), e(n, 1)}), span({e(n, 2), e(n, 3)})));
  EXPECT_FALSE(subspaces_adjacent(span({e(n, 0)}), span({e(n, 0)})));
  EXPECT_EQ(kind_of([&] { subspaces_adjacent(span({e(n, 0)}), span({e(n, 0), e(n, 1)})); }),
            ErrorKind::DimensionMismatch);
}

TEST(Subspace, GrassmannPathSteps) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = rng.uniform_int(3, 10);
    const Index m = rng.uniform_int(1, static_cast<int>(n) - 1);
    const Index shared = rng.uniform_int(0, static_cast<int>(m) - 1);
    const Matrix u = rng.unitary(n);
    const Subspace x = make_trusted(u.leftCols(m), {});
    Matrix yf(n, m);
    yf << u.leftCols(shared), rng.gaussian(n, m - shared);
    const Subspace y = orthonormalize(yf);
    if (y.dim() != m) {
      continue;
    }
    const auto path = grassmann_path(x, y, Subspace::full(n));
    const auto common = intersect(x, y).dim();
    ASSERT_EQ(static_cast<Index>(path.size()), m - common + 1);
    EXPECT_TRUE(equal(path.front(), x));
    EXPECT_TRUE(equal(path.back(), y));
    for (std::size_t s = 1; s < path.size(); ++s) {
      EXPECT_TRUE(subspaces_adjacent(path[s - 1], path[s])) << trial << " step " << s;
      EXPECT_LT(orthonormality_defect(path[s].frame()), 1e-12);
    }
  }
}

TEST(Subspace, GrassmannPathStaysInAmbient) {
  const Index n = 5;
  const auto ambient = span({e(n, 0), e(n, 1), e(n, 2)});
  const auto path = grassmann_path(span({e(n, 0)}), span({e(n, 2)}), ambient);
  ASSERT_EQ(path.size(), 2u);
  EXPECT_EQ(kind_of([&] { grassmann_path(span({e(n, 0)}), span({e(n, 4)}), ambient); }), ErrorKind::NotContained);
}

TEST(Subspace, ContainsAndOrthogonal) {
  const Index n = 3;
  EXPECT_TRUE(contains(span({e(n, 0), e(n, 1)}), span({e(n, 0) + e(n, 1)})));
  EXPECT_FALSE(contains(span({e(n, 0)}), span({e(n, 0), e(n, 1)})));
  EXPECT_TRUE(orthogonal(span({e(n, 0)}), span({e(n, 1), e(n, 2)})));
  EXPECT_TRUE(contains(span({e(n, 0)}), Subspace(n)));
}

TEST(Subspace, KernelHelpersMatchEigen) {
  Rng rng(5);
  const Matrix f = rng.gaussian(9, 3);
  const Matrix g = rng.gaussian(9, 4);
  EXPECT_LT((gram(f, g) - f.adjoint() * g).norm(), 1e-12);
  const Subspace s = orthonormalize(f);
  EXPECT_LT((project_out(s, g) - (g - s.projector() * g)).norm(), 1e-12);
  EXPECT_LT(orthonormality_defect(polish(rng.gaussian(9, 5))), 1e-14);
}

TEST(Subspace, AmbientMismatch) {
  EXPECT_EQ(kind_of([] { intersect(Subspace::full(3), Subspace::full(4)); }), ErrorKind::DimensionMismatch);
}
