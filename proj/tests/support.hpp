#ifndef TORIC_TESTS_SUPPORT_HPP
#define TORIC_TESTS_SUPPORT_HPP

#include <initializer_list>
#include <memory>
#include <random>
#include <utility>
#include <vector>

#include "toric/cones_fans.hpp"
#include "toric/polytopes.hpp"
#include "toric/tdivisor.hpp"

namespace support {

using namespace toric;

inline LatticeVector nv(std::initializer_list<long> xs) {
  std::vector<Int> v;
  for (long x : xs) v.emplace_back(x);
  return LatticeVector(std::move(v));
}

inline DualVector mv(std::initializer_list<long> xs) {
  std::vector<Int> v;
  for (long x : xs) v.emplace_back(x);
  return DualVector(std::move(v));
}

inline DualVector mv(const std::vector<long>& xs) {
  return DualVector(std::vector<Int>(xs.begin(), xs.end()));
}

inline LatticePolytope poly(std::initializer_list<std::initializer_list<long>> pts) {
  std::vector<DualVector> v;
  for (auto p : pts) v.push_back(mv(p));
  return LatticePolytope(std::move(v));
}

inline std::shared_ptr<const Fan> share(Fan f) { return std::make_shared<const Fan>(std::move(f)); }

// Rays e1, e2, -e1-e2.
inline Fan p2() { return Fan(2, {nv({1, 0}), nv({0, 1}), nv({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}}); }

// Rays e1, e2, -e1, -e2.
inline Fan p1xp1() {
  return Fan(2, {nv({1, 0}), nv({0, 1}), nv({-1, 0}), nv({0, -1})}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

inline Fan p3() {
  std::vector<LatticeVector> r{nv({1, 0, 0}), nv({0, 1, 0}), nv({0, 0, 1}), nv({-1, -1, -1})};
  return Fan(3, r, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

inline Fan p1_cubed() {
  std::vector<LatticeVector> r{nv({1, 0, 0}), nv({-1, 0, 0}), nv({0, 1, 0}),
                               nv({0, -1, 0}), nv({0, 0, 1}), nv({0, 0, -1})};
  std::vector<RayIndices> cones;
  for (std::size_t a : {0, 1})
    for (std::size_t b : {2, 3})
      for (std::size_t c : {4, 5}) cones.push_back({a, b, c});
  return Fan(3, r, cones);
}

// Hirzebruch surface: rays e1, e2, -e1 + a e2, -e2.
inline Fan hirzebruch(long a) {
  return Fan(2, {nv({1, 0}), nv({0, 1}), nv({-1, a}), nv({0, -1})}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

// Convex hull of 2..max_points random points in [lo, hi]^d.
inline LatticePolytope random_polytope(std::mt19937_64& rng, std::size_t d, long lo, long hi,
                                       std::size_t max_points = 6) {
  std::uniform_int_distribution<long> coord(lo, hi);
  std::uniform_int_distribution<std::size_t> count(1, max_points);
  std::vector<DualVector> pts;
  std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<long> p;
    for (std::size_t k = 0; k < d; ++k) p.push_back(coord(rng));
    pts.push_back(mv(p));
  }
  return LatticePolytope(std::move(pts));
}

// Polynomial from (exponent, integer coefficient) pairs.
inline LaurentPolynomial lp(std::initializer_list<std::pair<std::initializer_list<long>, long>> terms) {
  std::size_t d = terms.begin()->first.size();
  LaurentPolynomial p(d);
  for (const auto& [m, c] : terms) p.add_term(mv(m), Rat(c));
  return p;
}

inline std::vector<Int> ints(std::initializer_list<long> xs) { return std::vector<Int>(xs.begin(), xs.end()); }

}  // namespace support

#endif  // TORIC_TESTS_SUPPORT_HPP
