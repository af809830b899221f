#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "toric/cones_fans.hpp"
#include "toric/polytopes.hpp"

using namespace toric;
using namespace support;

TEST(Cone, RejectsBadGenerators) {
  EXPECT_THROW(Cone(2, {nv({2, 0})}), ValidationError);
  EXPECT_THROW(Cone(2, {nv({0, 0})}), ValidationError);
  EXPECT_THROW(Cone(2, {nv({1, 0}), nv({-1, 0})}), ValidationError);
  EXPECT_THROW(Cone(2, {nv({1, 0}), nv({1, 1}), nv({0, 1})}), ValidationError);  // (1,1) not extreme
  EXPECT_NO_THROW(Cone(3, {nv({1, 0, 1}), nv({0, 1, 1}), nv({-1, 0, 1}), nv({0, -1, 1})}));
}

TEST(Cone, FacesOfSimplicialCone) {
  Cone c(3, {nv({1, 0, 0}), nv({0, 1, 0}), nv({0, 0, 1})});
  auto fs = faces(c);
  EXPECT_EQ(fs.size(), 8u);
  std::size_t by_dim[4] = {0, 0, 0, 0};
  for (const auto& f : fs) ++by_dim[f.dim()];
  EXPECT_EQ(by_dim[0], 1u);
  EXPECT_EQ(by_dim[1], 3u);
  EXPECT_EQ(by_dim[2], 3u);
  EXPECT_EQ(by_dim[3], 1u);
}

TEST(Cone, Containment) {
  Cone c(2, {nv({1, 0}), nv({1, 2})});
  EXPECT_TRUE(c.contains(nv({1, 1})));
  EXPECT_TRUE(c.contains(nv({3, 0})));
  EXPECT_FALSE(c.contains(nv({0, 1})));
  Cone square(3, {nv({1, 0, 1}), nv({0, 1, 1}), nv({-1, 0, 1}), nv({0, -1, 1})});
  EXPECT_TRUE(square.contains(nv({0, 0, 1})));
  EXPECT_FALSE(square.contains(nv({2, 0, 1})));
}

TEST(Fan, ProjectivePlaneIsSmoothComplete) {
  Fan f = p2();
  EXPECT_TRUE(is_smooth(f));
  EXPECT_TRUE(is_complete(f));
  EXPECT_EQ(f.cone_count(), 7u);
}

TEST(Fan, HalfPlaneIsNotComplete) {
  Fan f(2, {nv({1, 0}), nv({0, 1}), nv({-1, 0})}, {{0, 1}, {1, 2}});
  EXPECT_TRUE(is_smooth(f));
  EXPECT_FALSE(is_complete(f));
}

TEST(Fan, ValidationErrorsCarryKindAndIndex) {
  auto kind_of = [](auto&& make) {
    try {
      make();
    } catch (const FanError& e) {
      return std::make_pair(e.kind(), e.index());
    }
    return std::make_pair(FanErrorKind::DimensionMismatch, std::size_t(999));
  };
  auto dup = kind_of([] { Fan(2, {nv({1, 0}), nv({0, 1}), nv({1, 0})}, {{0, 1}}); });
  EXPECT_EQ(dup.first, FanErrorKind::DuplicateRay);
  EXPECT_EQ(dup.second, 2u);
  auto np = kind_of([] { Fan(2, {nv({1, 0}), nv({0, 2})}, {{0, 1}}); });
  EXPECT_EQ(np.first, FanErrorKind::NonPrimitiveRay);
  EXPECT_EQ(np.second, 1u);
  auto bad = kind_of([] { Fan(2, {nv({1, 0}), nv({0, 1})}, {{0, 5}}); });
  EXPECT_EQ(bad.first, FanErrorKind::BadRayIndex);
  // Two cones overlapping in their interiors.
  auto overlap = kind_of([] { Fan(2, {nv({1, 0}), nv({0, 1}), nv({1, 1})}, {{0, 1}, {0, 2}}); });
  EXPECT_EQ(overlap.first, FanErrorKind::BadIntersection);
}

TEST(Fan, WeightedProjectivePlaneIsNotSmooth) {
  Fan f(2, {nv({1, 0}), nv({0, 1}), nv({-1, -2})}, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_TRUE(is_complete(f));
  EXPECT_FALSE(is_smooth(f));
  Fan r = regularize(f);
  EXPECT_TRUE(is_smooth(r));
  EXPECT_TRUE(is_complete(r));
  // Resolving the A1 singularity of P(1,1,2) adds one ray, (0,-1).
  EXPECT_EQ(r.rays().size(), 4u);
  EXPECT_TRUE(r.ray_index(nv({0, -1})).has_value());
}

TEST(StellarSubdivide, SplitsTheContainingCones) {
  Fan f = p2();
  Fan g = stellar_subdivide(f, nv({1, 1}));
  EXPECT_EQ(g.rays().size(), 4u);
  EXPECT_EQ(g.maximal_cones().size(), 4u);
  EXPECT_TRUE(is_smooth(g));
  EXPECT_TRUE(is_complete(g));
  // Subdividing at a point on a ray changes nothing.
  EXPECT_TRUE(stellar_subdivide(f, nv({0, 1})) == f);
  // A ray through a 2-dimensional face splits both cones sharing it.
  Fan c3 = p3();
  Fan h = stellar_subdivide(c3, nv({1, 1, 0}));
  EXPECT_EQ(h.maximal_cones().size(), 6u);
  EXPECT_TRUE(is_complete(h));
  EXPECT_THROW(stellar_subdivide(f, nv({2, 2})), ValidationError);
  Fan half(2, {nv({1, 0}), nv({0, 1})}, {{0, 1}});
  EXPECT_THROW(stellar_subdivide(half, nv({-1, -1})), ValidationError);
}

TEST(Regularize, ProducesSmoothRefinementWithSameSupport) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> dist(-4, 4);
  int done = 0;
  while (done < 25) {
    std::size_t d = 2 + done % 2;
    LatticePolytope k = random_polytope(rng, d, 0, 3, 7);
    if (!k.is_full_dimensional()) continue;
    ++done;
    Fan f = *normal_fan(k).fan;
    Fan r = regularize(f);
    ASSERT_TRUE(is_smooth(r));
    ASSERT_TRUE(is_complete(r));
    // Old rays survive, and each new maximal cone sits inside an old one.
    for (const auto& u : f.rays()) EXPECT_TRUE(r.ray_index(u).has_value());
    for (const auto& c : r.maximal_cones()) {
      LatticeVector centre(d);
      for (auto i : c) centre += r.rays()[i];
      EXPECT_FALSE(f.locate(centre).empty());
    }
    // Same support: random vectors are located in both.
    for (int t = 0; t < 10; ++t) {
      std::vector<Int> v;
      for (std::size_t i = 0; i < d; ++i) v.emplace_back(dist(rng));
      LatticeVector x(v);
      EXPECT_EQ(f.in_support(x), r.in_support(x));
    }
  }
}

TEST(PullingTriangulation, SquareConeSplitsInTwo) {
  std::vector<LatticeVector> rays{nv({1, 0, 1}), nv({0, 1, 1}), nv({-1, 0, 1}), nv({0, -1, 1})};
  auto simplices = pulling_triangulation(rays, {0, 1, 2, 3}, 3);
  EXPECT_EQ(simplices.size(), 2u);
  for (const auto& s : simplices) EXPECT_EQ(s.size(), 3u);
}
