#include <gtest/gtest.h>

#include "grassop/cliques.hpp"
#include "helpers.hpp"

using namespace grassop;
using grassop::testing::clique_through;
using grassop::testing::ij_partner;
using grassop::testing::kind_of;
using grassop::testing::random_clique_through;
using grassop::testing::random_part;

namespace {

ClassSignature sig3() { return ClassSignature::make({-1.0, 0.5, 2.0}, {2, 3, 2}); }

std::vector<SpectralOperator> members_of(const CliqueDescriptor& d, int count, Rng& rng) {
  std::vector<SpectralOperator> out;
  for (int s = 0; s < count; ++s) {
    out.push_back(clique_member(d, random_part(d.enlarged(), 1, rng)));
  }
  return out;
}

}  // namespace

TEST(Clique, MembersArePairwiseAdjacent) {
  Rng rng(41);
  const auto a = random_operator(sig3(), rng);
  const auto d = random_clique_through(a, 0, 1, rng);
  EXPECT_EQ(d.center().dim(), 1);
  EXPECT_EQ(d.enlarged().dim(), 4);
  EXPECT_TRUE(clique_contains(d, a));
  const auto ms = members_of(d, 5, rng);
  for (std::size_t r = 0; r < ms.size(); ++r) {
    EXPECT_TRUE(clique_contains(d, ms[r]));
    EXPECT_TRUE(contains(ms[r].eigenspace(0), d.center()));
    for (std::size_t s = r + 1; s < ms.size(); ++s) {
      EXPECT_EQ(is_adjacent(ms[r], ms[s]).type_pair, IndexPair::of(0, 1));
    }
  }
  EXPECT_FALSE(clique_contains(d, random_operator(sig3(), rng)));
}

TEST(Clique, ConstructionErrors) {
  Rng rng(42);
  const auto a = random_operator(sig3(), rng);
  EXPECT_EQ(kind_of([&] { star_clique(a, sig3(), 0, 1); }), ErrorKind::SignatureMismatch);
  const auto d = random_clique_through(a, 0, 1, rng);
  EXPECT_EQ(kind_of([&] { clique_member(d, random_part(d.enlarged(), 2, rng)); }), ErrorKind::DimensionMismatch);
  EXPECT_EQ(kind_of([&] { clique_member(d, d.center()); }), ErrorKind::NotContained);
}

TEST(Triangle, CommonType) {
  Rng rng(43);
  const auto a = random_operator(sig3(), rng);
  const auto d = random_clique_through(a, 2, 1, rng);
  const auto ms = members_of(d, 3, rng);
  EXPECT_EQ(triangle_type(ms[0], ms[1], ms[2]), IndexPair::of(1, 2));
  const auto b = make_ij_adjacent(a, 0, 1, rng);
  EXPECT_EQ(kind_of([&] { triangle_type(a, b, random_operator(sig3(), rng)); }), ErrorKind::NotMutuallyAdjacent);
}

TEST(ClassifyClique, StarAndTop) {
  Rng rng(44);
  const auto a = random_operator(sig3(), rng);
  const auto star = random_clique_through(a, 0, 2, rng);
  const auto cs = classify_clique(members_of(star, 3, rng));
  EXPECT_EQ(cs.pair, IndexPair::of(0, 2));
  EXPECT_EQ(cs.orientation, CliqueOrientation::Star);
  EXPECT_TRUE(same_clique(cs.descriptor, star));

  const auto top = random_clique_through(a, 2, 0, rng);
  const auto ct = classify_clique(members_of(top, 4, rng));
  EXPECT_EQ(ct.pair, IndexPair::of(0, 2));
  EXPECT_EQ(ct.orientation, CliqueOrientation::Top);
  EXPECT_TRUE(same_clique(ct.descriptor, top));
  EXPECT_FALSE(same_clique(ct.descriptor, star));
}

TEST(ClassifyClique, Rejections) {
  Rng rng(45);
  const auto a = random_operator(sig3(), rng);
  const auto d = random_clique_through(a, 0, 1, rng);
  const auto ms = members_of(d, 3, rng);
  EXPECT_EQ(kind_of([&] { classify_clique({ms[0]}); }), ErrorKind::NotAClique);
  EXPECT_EQ(kind_of([&] { classify_clique({ms[0], ms[1]}); }), ErrorKind::AmbiguousOrientation);
  EXPECT_EQ(kind_of([&] { classify_clique({ms[0], ms[1], random_operator(sig3(), rng)}); }),
            ErrorKind::NotAClique);
  const auto thin = ClassSignature::make({0.0, 1.0, 2.0}, {1, 3, 2});
  const auto b = random_operator(thin, rng);
  const auto dt = random_clique_through(b, 1, 0, rng);
  EXPECT_EQ(kind_of([&] { classify_clique(members_of(dt, 3, rng)); }), ErrorKind::AmbiguousOrientation);
}

TEST(Line, ThroughAdjacentPair) {
  Rng rng(46);
  const auto a = random_operator(sig3(), rng);
  const auto b = make_ij_adjacent(a, 0, 2, rng);
  const auto line = line_through(a, b);
  EXPECT_EQ(line.pair, IndexPair::of(0, 2));
  EXPECT_EQ(line.plane().dim(), 2);
  EXPECT_TRUE(line_contains(line, a));
  EXPECT_TRUE(line_contains(line, b));
  EXPECT_TRUE(clique_contains(line.star, a) && clique_contains(line.top, a));
  const auto c = line_member(line, random_part(line.plane(), 1, rng));
  EXPECT_TRUE(line_contains(line, c));
  EXPECT_EQ(is_adjacent(a, c).type_pair, IndexPair::of(0, 2));
  EXPECT_TRUE(same_line(line_through(b, c), line));
  EXPECT_FALSE(line_contains(line, make_ij_adjacent(a, 0, 2, rng)));

  EXPECT_EQ(kind_of([&] { line_through(a, random_operator(sig3(), rng)); }), ErrorKind::NotAdjacent);
  const auto thin = random_operator(ClassSignature::make({0.0, 1.0, 2.0}, {1, 3, 2}), rng);
  EXPECT_EQ(kind_of([&] { line_through(thin, make_ij_adjacent(thin, 0, 1, rng)); }),
            ErrorKind::MultiplicityTooSmall);
}

TEST(CliqueIntersection, AllKinds) {
  Rng rng(47);
  const auto a = random_operator(sig3(), rng);
  const auto d1 = random_clique_through(a, 0, 1, rng);
  const auto d2 = random_clique_through(a, 0, 1, rng);

  EXPECT_EQ(clique_intersection(d1, d1).kind, IntersectionKind::Equal);

  const auto single = clique_intersection(d1, d2);
  ASSERT_EQ(single.kind, IntersectionKind::Singleton);
  EXPECT_TRUE(same_operator(*single.member, a));

  const auto across = clique_intersection(d1, random_clique_through(a, 2, 1, rng));
  ASSERT_EQ(across.kind, IntersectionKind::Singleton);
  EXPECT_TRUE(same_operator(*across.member, a));

  const auto b = make_ij_adjacent(a, 0, 1, rng);
  const auto line = line_through(a, b);
  const auto meet = clique_intersection(line.top, line.star);
  ASSERT_EQ(meet.kind, IntersectionKind::Line);
  EXPECT_TRUE(same_line(*meet.line, line));

  const auto far = random_operator(sig3(), rng);
  EXPECT_EQ(clique_intersection(d1, random_clique_through(far, 1, 0, rng)).kind, IntersectionKind::Empty);
  EXPECT_EQ(clique_intersection(d1, random_clique_through(far, 0, 1, rng)).kind, IntersectionKind::Empty);

  const auto other = random_operator(ClassSignature::make({-1.0, 0.5, 2.0}, {3, 2, 2}), rng);
  EXPECT_EQ(kind_of([&] { clique_intersection(d1, random_clique_through(other, 0, 1, rng)); }),
            ErrorKind::ClassMismatch);
}

TEST(CliqueChain, ConnectsCliquesInOneComponent) {
  Rng rng(48);
  const auto sig = ClassSignature::make({-1.0, 0.5, 2.0}, {3, 2, 2});
  for (int t = 0; t < 6; ++t) {
    const auto a = random_operator(sig, rng);
    const auto b = ij_partner(a, 0, 1, rng);
    const auto d1 = t % 2 ? random_clique_through(a, 0, 1, rng) : random_clique_through(a, 1, 0, rng);
    const auto d2 = t % 3 ? random_clique_through(b, 1, 0, rng) : random_clique_through(b, 0, 1, rng);
    const auto comp = component_of(a, 0, 1);
    const auto chain = clique_chain(d1, d2, comp);
    ASSERT_FALSE(chain.empty());
    EXPECT_TRUE(same_clique(chain.front(), d1));
    EXPECT_TRUE(same_clique(chain.back(), d2));
    for (std::size_t s = 1; s < chain.size(); ++s) {
      EXPECT_EQ(clique_intersection(chain[s - 1], chain[s]).kind, IntersectionKind::Line) << s;
    }
  }
  const auto a = random_operator(sig, rng);
  const auto far = random_operator(sig, rng);
  EXPECT_EQ(kind_of([&] {
              clique_chain(random_clique_through(a, 0, 1, rng), random_clique_through(far, 0, 1, rng),
                           component_of(a, 0, 1));
            }),
            ErrorKind::DifferentComponents);
}

TEST(CliqueThrough, CenterFixesTheClique) {
  Rng rng(49);
  const auto a = random_operator(sig3(), rng);
  const Subspace center = random_part(a.eigenspace(1), 2, rng);
  EXPECT_TRUE(same_clique(clique_through(a, 1, 2, center), clique_through(a, 1, 2, center)));
  EXPECT_FALSE(same_clique(clique_through(a, 1, 2, center), random_clique_through(a, 1, 2, rng)));
}
