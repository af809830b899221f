#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "toric/intersection.hpp"

using namespace toric;
using namespace support;

namespace {

std::vector<TDivisor> random_divisors(std::mt19937_64& rng, const std::shared_ptr<const Fan>& f, std::size_t n) {
  std::uniform_int_distribution<long> dist(-3, 3);
  std::vector<TDivisor> out;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Int> a;
    for (std::size_t i = 0; i < f->rays().size(); ++i) a.emplace_back(dist(rng));
    out.emplace_back(f, a);
  }
  return out;
}

std::vector<std::vector<Int>> coefficients(const std::vector<TDivisor>& ds) {
  std::vector<std::vector<Int>> out;
  for (const auto& d : ds) out.push_back(d.coefficients());
  return out;
}

}  // namespace

TEST(Degree, ProjectivePlane) {
  auto f = share(p2());
  TDivisor h = TDivisor::elementary(f, 0);
  EXPECT_EQ(degree({h, h}), 1);
  EXPECT_EQ(degree({TDivisor(f, ints({0, 0, 2})), TDivisor(f, ints({3, 0, 0}))}), 6);
}

TEST(Degree, ProductOfLines) {
  auto f = share(p1xp1());
  TDivisor a = TDivisor::elementary(f, 0), b = TDivisor::elementary(f, 1);
  EXPECT_EQ(degree({a, b}), 1);
  EXPECT_EQ(degree({a, a}), 0);
  EXPECT_EQ(degree({a + b, a + b}), 2);
}

TEST(Degree, HirzebruchSelfIntersections) {
  for (long a = 0; a <= 3; ++a) {
    auto f = share(hirzebruch(a));
    // Rays e1, e2, -e1+a e2, -e2: D_1^2 = -a and D_3^2 = a.
    EXPECT_EQ(degree({TDivisor::elementary(f, 1), TDivisor::elementary(f, 1)}), -a);
    EXPECT_EQ(degree({TDivisor::elementary(f, 3), TDivisor::elementary(f, 3)}), a);
    EXPECT_EQ(degree({TDivisor::elementary(f, 0), TDivisor::elementary(f, 1)}), 1);
  }
}

TEST(Degree, AgreesWithRingComputation) {
  std::mt19937_64 rng(51);
  std::vector<std::shared_ptr<const Fan>> fans{share(p2()), share(p1xp1()), share(hirzebruch(2)), share(p3()),
                                               share(p1_cubed())};
  for (int t = 0; t < 6; ++t) {
    LatticePolytope k = random_polytope(rng, 3, 0, 2, 6);
    if (k.is_full_dimensional()) fans.push_back(share(regularize(*normal_fan(k).fan)));
  }
  for (const auto& f : fans)
    for (int t = 0; t < 8; ++t) {
      auto ds = random_divisors(rng, f, f->dim());
      EXPECT_EQ(degree(ds), oracle::ring_degree(*f, coefficients(ds)));
    }
}

TEST(Degree, PrincipalDivisorGivesZero) {
  auto f = share(hirzebruch(1));
  TDivisor p = TDivisor::principal(f, mv({2, -1}));
  EXPECT_EQ(degree({p, TDivisor::elementary(f, 2)}), 0);
}

TEST(IntersectDivisor, OutputIsBalancedAndChoiceFree) {
  std::mt19937_64 rng(52);
  auto f = share(regularize(*normal_fan(poly({{0, 0, 0}, {2, 0, 0}, {0, 1, 0}, {1, 1, 2}, {0, 0, 1}})).fan));
  auto ds = random_divisors(rng, f, 3);
  MinkowskiWeight w = fundamental_weight(f);
  EXPECT_TRUE(check_balanced(w));
  for (const auto& d : ds) {
    MinkowskiWeight next = intersect_divisor(w, d);
    EXPECT_TRUE(check_balanced(next));
    for (int t = 0; t < 10; ++t) {
      IntersectChoices ch;
      ch.rng = &rng;
      EXPECT_TRUE(intersect_divisor(w, d, ch) == next);
    }
    w = next;
  }
}

TEST(IntersectDivisor, RejectsUnbalancedInput) {
  auto f = share(p2());
  MinkowskiWeight w(f, 1);
  w.set({0}, 1);
  EXPECT_FALSE(check_balanced(w));
  EXPECT_THROW(intersect_divisor(w, TDivisor::elementary(f, 0)), ValidationError);
}

TEST(MixedVolume, SegmentsAndSimplices) {
  EXPECT_EQ(mixed_volume({poly({{0, 0}, {1, 0}}), poly({{0, 0}, {0, 1}})}), Rat(1, 2));
  LatticePolytope tri = poly({{0, 0}, {1, 0}, {0, 1}});
  EXPECT_EQ(mixed_volume({tri, tri}), Rat(1, 2));
  LatticePolytope cube = poly({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
  EXPECT_EQ(mixed_volume({cube, cube, cube}), Rat(1));
}

TEST(MixedVolume, AgreesWithPlanarFormula) {
  std::mt19937_64 rng(53);
  int done = 0;
  while (done < 40) {
    LatticePolytope a = random_polytope(rng, 2, 0, 3), b = random_polytope(rng, 2, 0, 3);
    if (!minkowski_sum(a, b).is_full_dimensional()) continue;
    ++done;
    std::vector<oracle::P2> pa, pb;
    for (const auto& v : a.vertices()) pa.push_back({static_cast<long>(v[0]), static_cast<long>(v[1])});
    for (const auto& v : b.vertices()) pb.push_back({static_cast<long>(v[0]), static_cast<long>(v[1])});
    EXPECT_EQ(mixed_volume({a, b}), oracle::mixed_area(pa, pb));
  }
}

TEST(MixedVolume, DiagonalIsVolume) {
  std::mt19937_64 rng(54);
  int done = 0;
  while (done < 10) {
    LatticePolytope k = random_polytope(rng, 3, 0, 2, 6);
    if (!k.is_full_dimensional()) continue;
    ++done;
    EXPECT_EQ(mixed_volume({k, k, k}), volume(k));
  }
}

TEST(Vanishing, OppositeRaysOnProductOfLines) {
  auto f = share(p1xp1());
  MinkowskiWeight w = intersect_divisor(intersect_divisor(fundamental_weight(f), TDivisor::elementary(f, 0)),
                                        TDivisor::elementary(f, 2));
  EXPECT_TRUE(w.is_zero());
  EXPECT_TRUE(nonface_product_vanishes(f, {0, 2}));
  EXPECT_FALSE(nonface_product_vanishes(f, {0, 1}));
}

TEST(Vanishing, AllSubsetsOfThreeFoldProduct) {
  auto f = share(p1_cubed());
  std::size_t nonfaces = 0;
  const std::size_t r = f->rays().size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << r); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < r; ++i)
      if (mask >> i & 1) s.push_back(i);
    if (s.size() > 3) continue;
    bool vanishes = nonface_product_vanishes(f, s);
    EXPECT_EQ(vanishes, !f->contains_cone(s));
    nonfaces += vanishes;
  }
  EXPECT_GT(nonfaces, 0u);
}

TEST(Jd, ProjectivePlanePresentation) {
  JdPresentation p = jd_presentation(p2());
  EXPECT_EQ(p.variables, 3u);
  ASSERT_EQ(p.nonfaces.size(), 1u);
  EXPECT_EQ(p.nonfaces[0], (RayIndices{0, 1, 2}));
  ASSERT_EQ(p.linear_forms.size(), 2u);
  EXPECT_EQ(p.linear_forms[0], ints({1, 0, -1}));
  EXPECT_EQ(p.linear_forms[1], ints({0, 1, -1}));
  EXPECT_NE(p.to_string().find("t0*t1*t2"), std::string::npos);
}

TEST(Jd, ProductOfLinesPresentation) {
  JdPresentation p = jd_presentation(p1xp1());
  EXPECT_EQ(p.nonfaces, (std::vector<RayIndices>{{0, 2}, {1, 3}}));
}
