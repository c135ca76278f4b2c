#include <gtest/gtest.h>
#include <functional>
#include <numeric>

#include "grassop/errors.hpp"
#include "grassop/spectral.hpp"

using namespace grassop;

namespace {

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

TEST(Signature, Validation) {
  EXPECT_EQ(kind_of([] { ClassSignature::make({1.0}, {3}); }), ErrorKind::InvalidSignature);
  EXPECT_EQ(kind_of([] { ClassSignature::make({1.0, 1.0}, {1, 1}); }), ErrorKind::InvalidSignature);
  EXPECT_EQ(kind_of([] { ClassSignature::make({1.0, 2.0}, {1, 0}); }), ErrorKind::InvalidSignature);
  EXPECT_EQ(kind_of([] { ClassSignature::make({1.0, 2.0}, {1}); }), ErrorKind::InvalidSignature);
  const auto s = ClassSignature::make({0.0, 2.0, -1.0}, {1, 2, 3});
  EXPECT_EQ(s.ambient_dim(), 6);
  EXPECT_DOUBLE_EQ(s.min_gap(), 1.0);
  EXPECT_DOUBLE_EQ(s.scale(), 2.0);
  EXPECT_EQ(s.index_of(2.0), 1);
  EXPECT_FALSE(s.index_of(5.0).has_value());
}

TEST(Signature, SetEqualityIgnoresOrder) {
  const auto a = ClassSignature::make({1.0, 2.0}, {1, 3});
  const auto b = ClassSignature::make({2.0, 1.0}, {3, 1});
  const auto c = ClassSignature::make({2.0, 1.0}, {1, 3});
  EXPECT_TRUE(same_signature(a, b));
  EXPECT_FALSE(same_signature(a, c));
  EXPECT_FALSE(identical_signature(a, b));
  EXPECT_TRUE(identical_signature(a.canonical(), b.canonical()));
}

TEST(Spectral, MatrixRoundTrip) {
  Rng rng(1);
  const auto sig = ClassSignature::make({-1.0, 0.0, 2.5}, {2, 1, 3});
  const auto a = random_operator(sig, rng);
  const Matrix m = to_matrix(a);
  EXPECT_LT((m - m.adjoint()).norm(), 1e-12);
  const auto back = from_matrix(m, sig);
  EXPECT_TRUE(same_operator(a, back));
  EXPECT_TRUE(identical_signature(infer_signature(m), ClassSignature::make({-1.0, 0.0, 2.5}, {2, 1, 3})));
}

TEST(Spectral, FromMatrixRejects) {
  const auto sig = ClassSignature::make({0.0, 1.0}, {1, 1});
  Matrix nh(2, 2);
  nh << 0, 1, 0, 0;
  EXPECT_EQ(kind_of([&] { from_matrix(nh, sig); }), ErrorKind::NotHermitian);
  Matrix wrong(2, 2);
  wrong << 0, 0, 0, 3;
  EXPECT_EQ(kind_of([&] { from_matrix(wrong, sig); }), ErrorKind::SpectrumMismatch);
  EXPECT_EQ(kind_of([&] { from_matrix(Matrix::Identity(3, 3), sig); }), ErrorKind::DimensionMismatch);
}

TEST(Spectral, MakeOperatorRejectsOverlap) {
  const auto sig = ClassSignature::make({0.0, 1.0}, {1, 1});
  Matrix f(2, 1);
  f << 1, 0;
  Matrix g(2, 1);
  g << std::sqrt(0.5), std::sqrt(0.5);
  EXPECT_EQ(kind_of([&] { make_operator(sig, {Subspace::from_frame(f), Subspace::from_frame(g)}); }),
            ErrorKind::NonOrthogonalEigenspaces);
  EXPECT_EQ(kind_of([&] { make_operator(sig, {Subspace::from_frame(f)}); }), ErrorKind::DimensionMismatch);
}

TEST(Spectral, SdGroupSize) {
  const auto sig = ClassSignature::make({1, 2, 3, 4}, {2, 2, 1, 2});
  const auto group = sd_group(sig);
  EXPECT_EQ(group.size(), 6u);  // 3! on the three equal multiplicities
  for (const auto& p : group) {
    EXPECT_TRUE(p.in_sd(sig));
  }
  EXPECT_FALSE(Permutation::swap(4, 0, 2).in_sd(sig));
  EXPECT_EQ(kind_of([] {
              std::vector<double> s(9);
              std::iota(s.begin(), s.end(), 0.0);
              sd_group(ClassSignature::make(s, std::vector<int>(9, 1)));
            }),
            ErrorKind::TooManyEigenvalues);
}

TEST(Spectral, ApplyPermutationSwapsEigenspaces) {
  Rng rng(2);
  const auto sig = ClassSignature::make({0.0, 1.0, 2.0}, {2, 2, 1});
  const auto a = random_operator(sig, rng);
  const auto b = apply_permutation(Permutation::swap(3, 0, 1), a);
  EXPECT_TRUE(equal(b.eigenspace(0), a.eigenspace(1)));
  EXPECT_TRUE(equal(b.eigenspace(1), a.eigenspace(0)));
  EXPECT_EQ(kind_of([&] { apply_permutation(Permutation::swap(3, 0, 2), a); }), ErrorKind::NotInSd);
  const auto p = Permutation{{1, 2, 0}};
  EXPECT_EQ(compose(p, p.inverse()), Permutation::identity(3));
}

TEST(Spectral, AlignedEigenspacesFollowEigenvalues) {
  Rng rng(4);
  const auto s1 = ClassSignature::make({1.0, 2.0}, {1, 2});
  const auto s2 = ClassSignature::make({2.0, 1.0}, {2, 1});
  const auto a = random_operator(s1, rng);
  const auto b = make_operator(s2, {a.eigenspace(1), a.eigenspace(0)});
  EXPECT_TRUE(same_operator(a, b));
  EXPECT_LT((to_matrix(a) - to_matrix(b)).norm(), 1e-12);
  const auto c = random_operator(ClassSignature::make({1.0, 3.0}, {1, 2}), rng);
  EXPECT_EQ(kind_of([&] { aligned_eigenspaces(a, c); }), ErrorKind::ClassMismatch);
}

TEST(Spectral, ImageSkipsZeroEigenvalue) {
  Rng rng(6);
  const auto sig = ClassSignature::make({0.0, 1.0, -2.0}, {3, 1, 2});
  const auto a = random_operator(sig, rng);
  EXPECT_EQ(image_of(a).dim(), 3);
}

TEST(Random, DeriveIsDeterministicAndSeparated) {
  auto r1 = Rng::derive(7, "x", 3);
  auto r2 = Rng::derive(7, "x", 3);
  auto r3 = Rng::derive(7, "x", 4);
  auto r4 = Rng::derive(7, "y", 3);
  const auto v1 = r1.next_u64();
  EXPECT_EQ(v1, r2.next_u64());
  EXPECT_NE(v1, r3.next_u64());
  EXPECT_NE(v1, r4.next_u64());
}

TEST(Random, UnitaryIsUnitary) {
  Rng rng(8);
  const Matrix u = rng.unitary(7);
  EXPECT_LT((u.adjoint() * u - Matrix::Identity(7, 7)).norm(), 1e-12);
}
