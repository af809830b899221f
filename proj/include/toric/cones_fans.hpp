#ifndef TORIC_CONES_FANS_HPP
#define TORIC_CONES_FANS_HPP

// Strict rational polyhedral cones and simplicial fans in N_R.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "toric/double_description.hpp"
#include "toric/lattice.hpp"

namespace toric {

using RayIndices = std::vector<std::size_t>;  // sorted ray-table indices

struct ConeDescription {
  std::vector<dd::IntVec> inequalities;  // a . x >= 0
  std::vector<dd::IntVec> equations;     // a . x == 0
};

// Inequality description of cone(gens) via the polar cone.
inline ConeDescription describe_cone(const std::vector<LatticeVector>& gens, std::size_t d) {
  std::vector<dd::IntVec> polar_constraints;
  for (const auto& g : gens) polar_constraints.push_back(g.coords());
  dd::Generators polar = dd::extreme_rays(polar_constraints, d);
  return {std::move(polar.rays), std::move(polar.lineality)};
}

// Is cone(gens) free of lines?
inline bool is_strict(const std::vector<LatticeVector>& gens, std::size_t d) {
  if (gens.empty()) return true;
  ConeDescription cd = describe_cone(gens, d);
  std::vector<dd::IntVec> all = cd.inequalities;
  all.insert(all.end(), cd.equations.begin(), cd.equations.end());
  if (all.empty()) return false;
  IntMatrix m(all.size(), d);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = all[i][j];
  return rank(m) == d;
}

// Facets of cone(gens), each as the subset of generator positions lying on it.
inline std::vector<std::vector<std::size_t>> cone_facets(const std::vector<LatticeVector>& gens,
                                                         std::size_t d) {
  ConeDescription cd = describe_cone(gens, d);
  std::vector<std::vector<std::size_t>> facets;
  for (const auto& y : cd.inequalities) {
    std::vector<std::size_t> on;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (dd::dot(y, gens[i].coords()) == 0) on.push_back(i);
    facets.push_back(std::move(on));
  }
  return facets;
}

class Cone {
 public:
  explicit Cone(std::size_t ambient_dim) : d_(ambient_dim) {}

  Cone(std::size_t ambient_dim, std::vector<LatticeVector> rays)
      : d_(ambient_dim), rays_(std::move(rays)) {
    for (const auto& r : rays_) {
      if (r.dim() != d_) throw ValidationError("cone: ray dimension mismatch");
      if (r.is_zero()) throw ValidationError("cone: zero ray");
      if (!is_primitive(r)) throw ValidationError("cone: ray is not primitive");
    }
    std::sort(rays_.begin(), rays_.end());
    if (std::adjacent_find(rays_.begin(), rays_.end()) != rays_.end())
      throw ValidationError("cone: duplicate ray");
    dim_ = rank(rays_);
    if (dim_ == rays_.size()) return;
    if (!is_strict(rays_, d_)) throw ValidationError("cone: not strict (contains a line)");
    // Every generator must be extreme: it is one iff it is the only generator
    // on the ray it spans, i.e. some facet-defining set isolates it.
    ConeDescription cd = describe_cone(rays_, d_);
    for (const auto& r : rays_) {
      std::vector<LatticeVector> tight;
      for (const auto& y : cd.inequalities)
        if (dd::dot(y, r.coords()) == 0) tight.push_back(LatticeVector(y));
      for (const auto& e : cd.equations) tight.push_back(LatticeVector(e));
      if (rank(tight) + 1 != d_) throw ValidationError("cone: generator is not extreme");
    }
  }

  std::size_t ambient_dim() const { return d_; }
  std::size_t dim() const { return dim_; }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  bool is_simplicial() const { return dim_ == rays_.size(); }

  // Nonnegative coordinates of v in the ray basis, when v lies in a
  // simplicial cone.
  std::optional<std::vector<Rat>> coordinates(const LatticeVector& v) const {
    if (!is_simplicial()) throw ValidationError("cone coordinates: non-simplicial cone");
    if (rays_.empty()) {
      if (v.is_zero()) return std::vector<Rat>{};
      return std::nullopt;
    }
    auto c = solve_in_span(rays_, v);
    if (!c) return std::nullopt;
    for (const auto& x : *c)
      if (x < 0) return std::nullopt;
    return c;
  }

  bool contains(const LatticeVector& v) const {
    if (is_simplicial()) return coordinates(v).has_value();
    ConeDescription cd = describe_cone(rays_, d_);
    for (const auto& y : cd.inequalities)
      if (dd::dot(y, v.coords()) < 0) return false;
    for (const auto& e : cd.equations)
      if (dd::dot(e, v.coords()) != 0) return false;
    return true;
  }

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.d_ == b.d_ && a.rays_ == b.rays_;
  }

 private:
  std::size_t d_ = 0;
  std::size_t dim_ = 0;
  std::vector<LatticeVector> rays_;
};

inline std::vector<Cone> faces(const Cone& c) {
  if (!c.is_simplicial()) throw ValidationError("faces: non-simplicial cone");
  const std::size_t k = c.dim();
  std::vector<Cone> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<LatticeVector> sub;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t{1} << i)) sub.push_back(c.rays()[i]);
    out.emplace_back(c.ambient_dim(), std::move(sub));
  }
  return out;
}

// Pulling triangulation of cone(rays[idx]) without new rays. Pulls the
// smallest index first, so triangulations of shared faces agree.
inline std::vector<RayIndices> pulling_triangulation(const std::vector<LatticeVector>& rays,
                                                     RayIndices idx, std::size_t d) {
  std::sort(idx.begin(), idx.end());
  std::vector<LatticeVector> gens;
  for (auto i : idx) gens.push_back(rays[i]);
  if (rank(gens) == gens.size()) return {idx};
  const std::size_t apex = idx.front();
  std::vector<RayIndices> out;
  for (const auto& facet : cone_facets(gens, d)) {
    RayIndices f;
    for (auto pos : facet) f.push_back(idx[pos]);
    if (std::find(f.begin(), f.end(), apex) != f.end()) continue;
    for (auto& simplex : pulling_triangulation(rays, f, d)) {
      simplex.push_back(apex);
      std::sort(simplex.begin(), simplex.end());
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

enum class FanErrorKind {
  DimensionMismatch,
  ZeroRay,
  NonPrimitiveRay,
  DuplicateRay,
  BadRayIndex,
  RepeatedRayInCone,
  NonStrictCone,
  NonSimplicialCone,
  BadIntersection,
};

class FanError : public ValidationError {
 public:
  FanError(FanErrorKind kind, std::size_t index, const std::string& what)
      : ValidationError(what), kind_(kind), index_(index) {}
  FanErrorKind kind() const { return kind_; }
  // Offending ray or cone position in the input.
  std::size_t index() const { return index_; }

 private:
  FanErrorKind kind_;
  std::size_t index_;
};

// A finite simplicial fan: a ray table plus cones given as ray-index sets,
// closed under faces.
class Fan {
 public:
  Fan() = default;

  // Validates everything, including that maximal cones meet in common faces.
  Fan(std::size_t d, std::vector<LatticeVector> rays, std::vector<RayIndices> cones)
      : Fan(d, std::move(rays), std::move(cones), true) {}

  // For fans produced by constructions that guarantee the fan axioms.
  static Fan trusted(std::size_t d, std::vector<LatticeVector> rays,
                     std::vector<RayIndices> cones) {
    return Fan(d, std::move(rays), std::move(cones), false);
  }

  std::size_t dim() const { return d_; }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const std::vector<RayIndices>& maximal_cones() const { return max_cones_; }

  // Cones of dimension k (k rays).
  const std::set<RayIndices>& cones(std::size_t k) const { return by_dim_.at(k); }
  bool contains_cone(const RayIndices& c) const {
    return c.size() < by_dim_.size() && by_dim_[c.size()].count(c) > 0;
  }
  std::size_t cone_count() const {
    std::size_t n = 0;
    for (const auto& s : by_dim_) n += s.size();
    return n;
  }

  Cone cone(const RayIndices& c) const {
    std::vector<LatticeVector> r;
    for (auto i : c) r.push_back(rays_.at(i));
    return Cone(d_, std::move(r));
  }

  // Positions (in maximal_cones()) of maximal cones having c as a face.
  std::vector<std::size_t> maximal_cones_containing(const RayIndices& c) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < max_cones_.size(); ++i)
      if (std::includes(max_cones_[i].begin(), max_cones_[i].end(), c.begin(), c.end()))
        out.push_back(i);
    return out;
  }

  // Coordinates of v in the rays of maximal cone i, if v lies in that cone.
  std::optional<std::vector<Rat>> coordinates_in(std::size_t i, const LatticeVector& v) const {
    const RayIndices& c = max_cones_.at(i);
    if (v.dim() != d_) throw ValidationError("fan: dimension mismatch");
    std::vector<Rat> lambda;
    if (inverses_[i]) {
      const RatMatrix& inv = *inverses_[i];
      lambda.assign(d_, Rat(0));
      for (std::size_t k = 0; k < d_; ++k)
        for (std::size_t j = 0; j < d_; ++j) lambda[j] += Rat(v[k]) * inv(k, j);
    } else {
      std::vector<LatticeVector> gens;
      for (auto r : c) gens.push_back(rays_[r]);
      if (gens.empty()) {
        if (!v.is_zero()) return std::nullopt;
        return lambda;
      }
      auto sol = solve_in_span(gens, v);
      if (!sol) return std::nullopt;
      lambda = std::move(*sol);
    }
    for (const auto& x : lambda)
      if (x < 0) return std::nullopt;
    return lambda;
  }

  // Maximal cones containing v.
  std::vector<std::size_t> locate(const LatticeVector& v) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < max_cones_.size(); ++i)
      if (coordinates_in(i, v)) out.push_back(i);
    return out;
  }

  bool in_support(const LatticeVector& v) const {
    for (std::size_t i = 0; i < max_cones_.size(); ++i)
      if (coordinates_in(i, v)) return true;
    return false;
  }

  std::optional<std::size_t> ray_index(const LatticeVector& v) const {
    auto it = std::find(rays_.begin(), rays_.end(), v);
    if (it == rays_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - rays_.begin());
  }

  bool is_smooth() const { return smooth_; }

  // Same rays and cones, independent of ray-table order.
  bool equivalent(const Fan& o) const {
    return d_ == o.d_ && geometric_cones() == o.geometric_cones();
  }

  friend bool operator==(const Fan& a, const Fan& b) {
    return a.d_ == b.d_ && a.rays_ == b.rays_ && a.max_cones_ == b.max_cones_;
  }

 private:
  Fan(std::size_t d, std::vector<LatticeVector> rays, std::vector<RayIndices> cones,
      bool validate)
      : d_(d), rays_(std::move(rays)) {
    check_rays();
    for (std::size_t ci = 0; ci < cones.size(); ++ci) {
      auto& c = cones[ci];
      std::sort(c.begin(), c.end());
      for (auto i : c)
        if (i >= rays_.size())
          throw FanError(FanErrorKind::BadRayIndex, ci,
                         "cone " + std::to_string(ci) + ": ray index out of range");
      if (std::adjacent_find(c.begin(), c.end()) != c.end())
        throw FanError(FanErrorKind::RepeatedRayInCone, ci,
                       "cone " + std::to_string(ci) + ": repeated ray index");
    }
    // Rays not mentioned by any cone are 1-cones of their own.
    std::vector<bool> used(rays_.size(), false);
    for (const auto& c : cones)
      for (auto i : c) used[i] = true;
    for (std::size_t i = 0; i < rays_.size(); ++i)
      if (!used[i]) cones.push_back({i});

    std::set<RayIndices> all(cones.begin(), cones.end());
    for (const auto& c : all) {
      bool maximal = true;
      for (const auto& o : all)
        if (o.size() > c.size() && std::includes(o.begin(), o.end(), c.begin(), c.end())) {
          maximal = false;
          break;
        }
      if (maximal) max_cones_.push_back(c);
    }
    if (max_cones_.empty()) max_cones_.push_back({});

    inverses_.resize(max_cones_.size());
    for (std::size_t mi = 0; mi < max_cones_.size(); ++mi) {
      const RayIndices& c = max_cones_[mi];
      std::vector<LatticeVector> gens;
      for (auto i : c) gens.push_back(rays_[i]);
      if (rank(gens) != gens.size()) {
        std::size_t pos = static_cast<std::size_t>(
            std::find(cones.begin(), cones.end(), c) - cones.begin());
        if (!is_strict(gens, d_))
          throw FanError(FanErrorKind::NonStrictCone, pos,
                         "cone " + std::to_string(pos) + ": not strict");
        throw FanError(FanErrorKind::NonSimplicialCone, pos,
                       "cone " + std::to_string(pos) + ": not simplicial");
      }
      if (gens.size() == d_ && d_ > 0) inverses_[mi] = inverse(IntMatrix::from_rows(gens, d_));
    }

    if (validate) check_intersections(cones);

    by_dim_.assign(d_ + 1, {});
    for (const auto& c : max_cones_) {
      const std::size_t k = c.size();
      for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        RayIndices sub;
        for (std::size_t i = 0; i < k; ++i)
          if (mask & (std::size_t{1} << i)) sub.push_back(c[i]);
        by_dim_[sub.size()].insert(std::move(sub));
      }
    }

    smooth_ = true;
    for (const auto& c : max_cones_) {
      if (c.empty()) continue;
      std::vector<LatticeVector> gens;
      for (auto i : c) gens.push_back(rays_[i]);
      if (lattice_index(IntMatrix::from_rows(gens, d_)) != 1) {
        smooth_ = false;
        break;
      }
    }
  }

  void check_rays() const {
    for (std::size_t i = 0; i < rays_.size(); ++i) {
      const auto& r = rays_[i];
      const std::string where = "ray " + std::to_string(i);
      if (r.dim() != d_)
        throw FanError(FanErrorKind::DimensionMismatch, i, where + ": dimension mismatch");
      if (r.is_zero()) throw FanError(FanErrorKind::ZeroRay, i, where + ": zero vector");
      if (!is_primitive(r))
        throw FanError(FanErrorKind::NonPrimitiveRay, i, where + ": not primitive");
      for (std::size_t j = 0; j < i; ++j)
        if (rays_[j] == r)
          throw FanError(FanErrorKind::DuplicateRay, i,
                         where + ": duplicates ray " + std::to_string(j));
    }
  }

  // cone(A) ∩ cone(B) must be the cone over the shared rays.
  void check_intersections(const std::vector<RayIndices>& input) const {
    std::vector<ConeDescription> desc;
    for (const auto& c : max_cones_) {
      std::vector<LatticeVector> gens;
      for (auto i : c) gens.push_back(rays_[i]);
      desc.push_back(describe_cone(gens, d_));
    }
    for (std::size_t a = 0; a < max_cones_.size(); ++a) {
      for (std::size_t b = a + 1; b < max_cones_.size(); ++b) {
        std::vector<dd::IntVec> cons;
        for (const auto* cd : {&desc[a], &desc[b]}) {
          cons.insert(cons.end(), cd->inequalities.begin(), cd->inequalities.end());
          for (const auto& e : cd->equations) {
            cons.push_back(e);
            dd::IntVec neg = e;
            for (auto& x : neg) x = -x;
            cons.push_back(std::move(neg));
          }
        }
        dd::Generators g = dd::extreme_rays(cons, d_);
        RayIndices shared;
        std::set_intersection(max_cones_[a].begin(), max_cones_[a].end(),
                              max_cones_[b].begin(), max_cones_[b].end(),
                              std::back_inserter(shared));
        std::set<LatticeVector> expect, got;
        for (auto i : shared) expect.insert(rays_[i]);
        for (auto& r : g.rays) got.insert(LatticeVector(r));
        if (!g.lineality.empty() || expect != got) {
          std::size_t pos = static_cast<std::size_t>(
              std::find(input.begin(), input.end(), max_cones_[b]) - input.begin());
          throw FanError(FanErrorKind::BadIntersection, pos,
                         "cones " + describe(max_cones_[a]) + " and " +
                             describe(max_cones_[b]) + " do not meet in a common face");
        }
      }
    }
  }

  static std::string describe(const RayIndices& c) {
    std::string s = "[";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + "]";
  }

  std::set<std::set<LatticeVector>> geometric_cones() const {
    std::set<std::set<LatticeVector>> out;
    for (const auto& c : max_cones_) {
      std::set<LatticeVector> s;
      for (auto i : c) s.insert(rays_[i]);
      out.insert(std::move(s));
    }
    return out;
  }

  std::size_t d_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<RayIndices> max_cones_;
  std::vector<std::optional<RatMatrix>> inverses_;
  std::vector<std::set<RayIndices>> by_dim_;
  bool smooth_ = true;
};

inline bool is_smooth(const Fan& f) { return f.is_smooth(); }

// Ridge-manifold criterion. Requires every maximal cone to be full-dimensional.
inline bool is_complete(const Fan& f) {
  const std::size_t d = f.dim();
  for (const auto& c : f.maximal_cones())
    if (c.size() != d)
      throw ValidationError("is_complete: fan has a maximal cone of dimension < d");
  if (d == 0) return true;
  const auto& tops = f.maximal_cones();
  std::map<RayIndices, std::vector<std::size_t>> ridges;
  for (std::size_t i = 0; i < tops.size(); ++i)
    for (std::size_t drop = 0; drop < d; ++drop) {
      RayIndices r = tops[i];
      r.erase(r.begin() + static_cast<std::ptrdiff_t>(drop));
      ridges[r].push_back(i);
    }
  std::vector<std::size_t> parent(tops.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [ridge, owners] : ridges) {
    if (owners.size() != 2) return false;
    parent[find(owners[0])] = find(owners[1]);
  }
  for (std::size_t i = 1; i < tops.size(); ++i)
    if (find(i) != find(0)) return false;
  return true;
}

inline Fan stellar_subdivide(const Fan& f, const LatticeVector& v) {
  if (v.dim() != f.dim()) throw ValidationError("stellar_subdivide: dimension mismatch");
  if (v.is_zero()) throw ValidationError("stellar_subdivide: zero vector");
  if (!is_primitive(v)) throw ValidationError("stellar_subdivide: vector is not primitive");
  if (f.ray_index(v)) return f;
  std::vector<std::size_t> hits = f.locate(v);
  if (hits.empty()) throw ValidationError("stellar_subdivide: vector outside the support");

  std::vector<LatticeVector> rays = f.rays();
  const std::size_t fresh = rays.size();
  rays.push_back(v);
  std::vector<RayIndices> cones;
  std::size_t next_hit = 0;
  for (std::size_t i = 0; i < f.maximal_cones().size(); ++i) {
    const RayIndices& c = f.maximal_cones()[i];
    if (next_hit < hits.size() && hits[next_hit] == i) {
      ++next_hit;
      std::vector<Rat> lambda = *f.coordinates_in(i, v);
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (lambda[k] == 0) continue;
        RayIndices nc = c;
        nc[k] = fresh;
        std::sort(nc.begin(), nc.end());
        cones.push_back(std::move(nc));
      }
    } else {
      cones.push_back(c);
    }
  }
  return Fan::trusted(f.dim(), std::move(rays), std::move(cones));
}

// Adjugate-style inverse: rows R of a full-dimensional simplicial cone give
// det(R) and A = det(R) * R^{-1}, so the ray coordinates of p are p A / det.
struct ConeInverse {
  IntMatrix scaled;
  Int det;

  explicit ConeInverse(const std::vector<LatticeVector>& rays) {
    const std::size_t d = rays.size();
    IntMatrix r = IntMatrix::from_rows(rays, d);
    det = toric::det(r);
    RatMatrix inv = inverse(r);
    scaled = IntMatrix(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) scaled(i, j) = to_int(inv(i, j) * Rat(det));
  }

  // Numerators of the ray coordinates of p, sign-normalized to a positive
  // denominator |det|.
  std::vector<Int> numerators(const std::vector<Int>& p) const {
    const std::size_t d = p.size();
    std::vector<Int> out(d, Int(0));
    for (std::size_t k = 0; k < d; ++k) {
      if (p[k] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) out[j] += p[k] * scaled(k, j);
    }
    if (det < 0)
      for (auto& x : out) x = -x;
    return out;
  }
};

// Minimal nonzero lattice point of the half-open parallelepiped of a
// full-dimensional simplicial cone: smallest barycentric sum, ties broken by
// the lexicographically smallest point. Returns nullopt for smooth cones.
inline std::optional<LatticeVector> parallelepiped_minimum(
    const std::vector<LatticeVector>& rays, const ConeInverse& ci) {
  const std::size_t d = rays.size();
  const Int mult = abs(ci.det);
  if (mult == 1) return std::nullopt;
  HermiteResult hr = hermite_normal_form(IntMatrix::from_rows(rays, d));
  std::vector<Int> box(d);
  for (std::size_t i = 0; i < d; ++i) box[i] = hr.H(i, i);

  std::optional<LatticeVector> best;
  Int best_sum;
  std::vector<Int> x(d, Int(0));
  while (true) {
    std::size_t k = 0;
    while (k < d) {
      if (++x[k] < box[k]) break;
      x[k] = 0;
      ++k;
    }
    if (k == d) break;
    std::vector<Int> num = ci.numerators(x);
    Int sum = 0;
    std::vector<Int> scaled_point(d, Int(0));
    for (std::size_t j = 0; j < d; ++j) {
      Int frac = num[j] % mult;
      if (frac < 0) frac += mult;
      sum += frac;
      if (frac == 0) continue;
      for (std::size_t i = 0; i < d; ++i) scaled_point[i] += frac * rays[j][i];
    }
    if (sum == 0) continue;
    if (best && sum > best_sum) continue;
    for (auto& c : scaled_point) c /= mult;
    LatticeVector cand(std::move(scaled_point));
    if (!best || sum < best_sum || cand < *best) {
      best = std::move(cand);
      best_sum = sum;
    }
  }
  return primitive(*best);
}

inline std::optional<LatticeVector> parallelepiped_minimum(
    const std::vector<LatticeVector>& rays) {
  return parallelepiped_minimum(rays, ConeInverse(rays));
}

// Repeated stellar subdivision until every maximal cone is unimodular. The
// first non-unimodular maximal cone in lexicographic order is refined at its
// parallelepiped minimum each round.
inline Fan regularize(const Fan& f) {
  if (f.is_smooth()) return f;
  const std::size_t d = f.dim();
  std::vector<LatticeVector> rays = f.rays();
  std::map<RayIndices, ConeInverse> cones;
  auto gens_of = [&](const RayIndices& c) {
    std::vector<LatticeVector> g;
    for (auto i : c) g.push_back(rays[i]);
    return g;
  };
  for (const auto& c : f.maximal_cones()) {
    if (c.size() != d) throw ValidationError("regularize: lower-dimensional maximal cone");
    cones.emplace(c, ConeInverse(gens_of(c)));
  }

  while (true) {
    auto bad = std::find_if(cones.begin(), cones.end(),
                            [](const auto& kv) { return abs(kv.second.det) != 1; });
    if (bad == cones.end()) break;
    LatticeVector p = *parallelepiped_minimum(gens_of(bad->first), bad->second);
    const std::size_t fresh = rays.size();
    rays.push_back(p);

    std::vector<std::pair<RayIndices, std::vector<Int>>> hit;
    for (const auto& [c, ci] : cones) {
      std::vector<Int> num = ci.numerators(p.coords());
      if (std::all_of(num.begin(), num.end(), [](const Int& x) { return x >= 0; }))
        hit.emplace_back(c, std::move(num));
    }
    for (auto& [c, num] : hit) {
      cones.erase(c);
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (num[k] == 0) continue;
        RayIndices nc = c;
        nc[k] = fresh;
        std::sort(nc.begin(), nc.end());
        cones.emplace(nc, ConeInverse(gens_of(nc)));
      }
    }
  }
  std::vector<RayIndices> out;
  for (const auto& kv : cones) out.push_back(kv.first);
  return Fan::trusted(d, std::move(rays), std::move(out));
}

}  // namespace toric

#endif  // TORIC_CONES_FANS_HPP
