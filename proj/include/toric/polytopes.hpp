#ifndef TORIC_POLYTOPES_HPP
#define TORIC_POLYTOPES_HPP

// Lattice polytopes in M_R, their normal fans, and Laurent polynomials.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "toric/cones_fans.hpp"
#include "toric/double_description.hpp"
#include "toric/lattice.hpp"
#include "toric/tdivisor.hpp"

namespace toric {

// Affine lattice chart origin + Z-span(basis) of the saturated lattice
// M ∩ aff(K).
struct LatticeFrame {
  DualVector origin;
  std::vector<DualVector> basis;

  std::size_t rank() const { return basis.size(); }

  DualVector to_ambient(const std::vector<Int>& c) const {
    DualVector v = origin;
    for (std::size_t i = 0; i < basis.size(); ++i) v += c[i] * basis[i];
    return v;
  }

  // Coordinates of a lattice point of the affine hull, if it lies there.
  std::optional<std::vector<Int>> to_reduced(const DualVector& v) const {
    DualVector diff = v - origin;
    if (basis.empty()) {
      if (!diff.is_zero()) return std::nullopt;
      return std::vector<Int>{};
    }
    auto c = solve_in_span(basis, diff);
    if (!c) return std::nullopt;
    std::vector<Int> out;
    for (const auto& x : *c) {
      if (!is_integer(x)) return std::nullopt;
      out.push_back(boost::multiprecision::numerator(x));
    }
    return out;
  }
};

// Facet inequality <v, normal> >= rhs.
struct Facet {
  LatticeVector normal;
  Int rhs;
};

class LatticePolytope {
 public:
  LatticePolytope() = default;

  // Convex hull of the given points; duplicates and non-extreme points are
  // dropped.
  explicit LatticePolytope(std::vector<DualVector> points) {
    if (points.empty()) throw ValidationError("polytope: no points");
    d_ = points.front().dim();
    for (const auto& p : points)
      if (p.dim() != d_) throw ValidationError("polytope: dimension mismatch");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    std::vector<DualVector> diffs;
    for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
    k_ = rank(diffs);
    if (k_ == d_) {
      frame_.origin = DualVector(d_);
      for (std::size_t i = 0; i < d_; ++i) {
        DualVector e(d_);
        e[i] = 1;
        frame_.basis.push_back(std::move(e));
      }
    } else {
      frame_.origin = points[0];
      if (k_ > 0)
        for (auto& b : saturation_basis(IntMatrix::from_rows(diffs, d_)))
          frame_.basis.emplace_back(std::move(b));
    }

    std::vector<std::vector<Int>> reduced;
    for (const auto& p : points) {
      auto c = frame_.to_reduced(p);
      if (!c) throw Error("polytope: point outside its own affine hull");
      reduced.push_back(std::move(*c));
    }

    if (k_ == 0) {
      vertices_ = points;
      reduced_vertices_ = reduced;
      incidence_.assign(1, {});
      return;
    }

    std::vector<dd::IntVec> cons;
    for (const auto& c : reduced) {
      dd::IntVec row{Int(1)};
      row.insert(row.end(), c.begin(), c.end());
      cons.push_back(std::move(row));
    }
    dd::Generators g = dd::extreme_rays(cons, k_ + 1);
    if (!g.lineality.empty()) throw Error("polytope: hull computation found a lineality space");
    for (const auto& y : g.rays) {
      std::vector<Int> u(y.begin() + 1, y.end());
      facets_.push_back({LatticeVector(std::move(u)), -y[0]});
    }
    std::sort(facets_.begin(), facets_.end(), [](const Facet& a, const Facet& b) {
      return a.normal < b.normal || (a.normal == b.normal && a.rhs < b.rhs);
    });

    for (std::size_t i = 0; i < points.size(); ++i) {
      std::vector<std::size_t> tight;
      std::vector<LatticeVector> normals;
      for (std::size_t f = 0; f < facets_.size(); ++f) {
        Int val = dot_reduced(facets_[f].normal, reduced[i]);
        if (val < facets_[f].rhs) throw Error("polytope: hull does not contain an input point");
        if (val == facets_[f].rhs) {
          tight.push_back(f);
          normals.push_back(facets_[f].normal);
        }
      }
      if (rank(normals) == k_) {
        vertices_.push_back(points[i]);
        reduced_vertices_.push_back(reduced[i]);
        incidence_.push_back(std::move(tight));
      }
    }
  }

  std::size_t dim() const { return d_; }
  std::size_t affine_dim() const { return k_; }
  bool is_full_dimensional() const { return k_ == d_; }
  const std::vector<DualVector>& vertices() const { return vertices_; }
  const LatticeFrame& frame() const { return frame_; }

  // Facets in frame coordinates (ambient coordinates when full-dimensional).
  const std::vector<Facet>& reduced_facets() const { return facets_; }
  const std::vector<std::vector<Int>>& reduced_vertices() const { return reduced_vertices_; }
  // Facets incident to vertex i.
  const std::vector<std::size_t>& vertex_facets(std::size_t i) const { return incidence_[i]; }

  const std::vector<Facet>& facets() const {
    if (!is_full_dimensional()) throw ValidationError("facets: polytope is not full-dimensional");
    return facets_;
  }

  // The polytope as a full-dimensional one in the coordinates of its frame.
  LatticePolytope reduced() const {
    std::vector<DualVector> pts;
    for (const auto& c : reduced_vertices_) pts.emplace_back(c);
    return LatticePolytope(std::move(pts));
  }

  bool contains(const DualVector& v) const {
    if (v.dim() != d_) throw ValidationError("polytope: dimension mismatch");
    auto c = frame_.to_reduced(v);
    if (!c) return false;
    for (const auto& f : facets_)
      if (dot_reduced(f.normal, *c) < f.rhs) return false;
    return true;
  }

  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
    return a.d_ == b.d_ && a.vertices_ == b.vertices_;
  }

 private:
  static Int dot_reduced(const LatticeVector& u, const std::vector<Int>& c) {
    Int s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) s += u[i] * c[i];
    return s;
  }

  std::size_t d_ = 0;
  std::size_t k_ = 0;
  LatticeFrame frame_;
  std::vector<DualVector> vertices_;
  std::vector<std::vector<Int>> reduced_vertices_;
  std::vector<Facet> facets_;
  std::vector<std::vector<std::size_t>> incidence_;
};

// min over K of <v, u>.
inline Int support_function(const LatticePolytope& k, const LatticeVector& u) {
  std::optional<Int> best;
  for (const auto& v : k.vertices()) {
    Int p = pairing(v, u);
    if (!best || p < *best) best = std::move(p);
  }
  return *best;
}

inline LatticePolytope minkowski_sum(const LatticePolytope& a, const LatticePolytope& b) {
  if (a.dim() != b.dim()) throw ValidationError("minkowski_sum: dimension mismatch");
  std::vector<DualVector> pts;
  for (const auto& x : a.vertices())
    for (const auto& y : b.vertices()) pts.push_back(x + y);
  return LatticePolytope(std::move(pts));
}

inline LatticePolytope minkowski_sum(const std::vector<LatticePolytope>& ks) {
  if (ks.empty()) throw ValidationError("minkowski_sum: no polytopes");
  LatticePolytope s = ks.front();
  for (std::size_t i = 1; i < ks.size(); ++i) s = minkowski_sum(s, ks[i]);
  return s;
}

inline LatticePolytope dilate(const LatticePolytope& k, const Int& factor) {
  if (factor < 0) throw ValidationError("dilate: negative factor");
  std::vector<DualVector> pts;
  for (const auto& v : k.vertices()) pts.push_back(factor * v);
  return LatticePolytope(std::move(pts));
}

inline LatticePolytope negate(const LatticePolytope& k) {
  std::vector<DualVector> pts;
  for (const auto& v : k.vertices()) pts.push_back(-v);
  return LatticePolytope(std::move(pts));
}

struct NormalFan {
  std::shared_ptr<const Fan> fan;
  TDivisor divisor;  // a_i = -psi_K(u_i), so K_E = K
};

// Rays are the primitive inner facet normals (sorted); the maximal cone of a
// vertex S is spanned by the facets through S, pulled into simplices when S
// is not simple.
inline NormalFan normal_fan(const LatticePolytope& k) {
  if (!k.is_full_dimensional())
    throw ValidationError("normal_fan: polytope is not full-dimensional");
  const auto& facets = k.facets();
  std::vector<std::size_t> order(facets.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return facets[a].normal < facets[b].normal; });
  std::vector<std::size_t> ray_of(facets.size());
  std::vector<LatticeVector> rays;
  std::vector<Int> coeff;
  for (std::size_t r = 0; r < order.size(); ++r) {
    ray_of[order[r]] = r;
    rays.push_back(facets[order[r]].normal);
    coeff.push_back(-facets[order[r]].rhs);
  }
  std::vector<RayIndices> cones;
  for (std::size_t v = 0; v < k.vertices().size(); ++v) {
    RayIndices c;
    for (auto f : k.vertex_facets(v)) c.push_back(ray_of[f]);
    std::sort(c.begin(), c.end());
    if (c.size() == k.dim()) {
      cones.push_back(std::move(c));
    } else {
      for (auto& s : pulling_triangulation(rays, c, k.dim())) cones.push_back(std::move(s));
    }
  }
  auto fan = std::make_shared<const Fan>(Fan::trusted(k.dim(), std::move(rays), std::move(cones)));
  return {fan, TDivisor(fan, std::move(coeff))};
}

// K ∩ M in lexicographic order.
inline std::vector<DualVector> lattice_points(const LatticePolytope& k) {
  const std::size_t r = k.affine_dim();
  const auto& rv = k.reduced_vertices();
  std::vector<Int> lo(rv.front()), hi(rv.front());
  for (const auto& v : rv)
    for (std::size_t i = 0; i < r; ++i) {
      if (v[i] < lo[i]) lo[i] = v[i];
      if (v[i] > hi[i]) hi[i] = v[i];
    }
  std::vector<DualVector> out;
  std::vector<Int> x = lo;
  while (true) {
    bool inside = true;
    for (const auto& f : k.reduced_facets()) {
      Int s = 0;
      for (std::size_t i = 0; i < r; ++i) s += f.normal[i] * x[i];
      if (s < f.rhs) {
        inside = false;
        break;
      }
    }
    if (inside) out.push_back(k.frame().to_ambient(x));
    std::size_t i = 0;
    while (i < r) {
      if (++x[i] <= hi[i]) break;
      x[i] = lo[i];
      ++i;
    }
    if (i == r) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct AbsoluteSimplicity {
  bool simple = false;
  // Per vertex (aligned with vertices()): primitive edge directions l_i(S),
  // in ambient coordinates. Filled only when simple.
  std::vector<std::vector<DualVector>> edges;
  // Same directions in frame coordinates.
  std::vector<std::vector<std::vector<Int>>> reduced_edges;
};

// Every vertex meets exactly dim edges whose primitive directions form a basis
// of the lattice. Evaluated in the polytope's own frame, so lower-dimensional
// polytopes are judged inside M ∩ aff(K).
inline AbsoluteSimplicity is_absolutely_simple(const LatticePolytope& k) {
  AbsoluteSimplicity out;
  const std::size_t r = k.affine_dim();
  const auto& rv = k.reduced_vertices();
  const auto& facets = k.reduced_facets();
  for (std::size_t s = 0; s < rv.size(); ++s) {
    std::vector<std::vector<Int>> dirs;
    for (std::size_t t = 0; t < rv.size(); ++t) {
      if (t == s) continue;
      std::vector<std::size_t> common;
      std::set_intersection(k.vertex_facets(s).begin(), k.vertex_facets(s).end(),
                            k.vertex_facets(t).begin(), k.vertex_facets(t).end(),
                            std::back_inserter(common));
      std::vector<LatticeVector> normals;
      for (auto f : common) normals.push_back(facets[f].normal);
      if (rank(normals) + 1 != r) continue;
      std::vector<Int> e(r);
      for (std::size_t i = 0; i < r; ++i) e[i] = rv[t][i] - rv[s][i];
      Int g = content(e);
      for (auto& x : e) x /= g;
      dirs.push_back(std::move(e));
    }
    if (dirs.size() != r) return {false, {}, {}};
    IntMatrix m(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) m(i, j) = dirs[i][j];
    if (abs(det(m)) != 1) return {false, {}, {}};
    std::vector<DualVector> amb;
    for (const auto& e : dirs) {
      DualVector v(k.dim());
      for (std::size_t i = 0; i < r; ++i) v += e[i] * k.frame().basis[i];
      amb.push_back(std::move(v));
    }
    out.edges.push_back(std::move(amb));
    out.reduced_edges.push_back(std::move(dirs));
  }
  out.simple = true;
  return out;
}

// N(K) = max over ordered vertex pairs S != S' of the l(S)-coordinate sum of
// S' - S. A single point has norm 0.
inline Int polytope_norm(const LatticePolytope& k) {
  AbsoluteSimplicity as = is_absolutely_simple(k);
  if (!as.simple) throw ValidationError("polytope_norm: polytope is not absolutely simple");
  const std::size_t r = k.affine_dim();
  const auto& rv = k.reduced_vertices();
  Int best = 0;
  for (std::size_t s = 0; s < rv.size(); ++s) {
    IntMatrix basis(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) basis(i, j) = as.reduced_edges[s][i][j];
    for (std::size_t t = 0; t < rv.size(); ++t) {
      if (t == s) continue;
      std::vector<Int> diff(r);
      for (std::size_t i = 0; i < r; ++i) diff[i] = rv[t][i] - rv[s][i];
      auto c = solve_in_row_span(basis, diff);
      if (!c) throw Error("polytope_norm: edge basis does not span");
      Int sum = 0;
      for (const auto& x : *c) {
        if (!is_integer(x) || x < 0)
          throw Error("polytope_norm: non-integral or negative edge expansion");
        sum += boost::multiprecision::numerator(x);
      }
      if (sum > best) best = sum;
    }
  }
  return best;
}

// Simplices (as vertex lists) of a pulling triangulation of K, each of
// dimension affine_dim(K).
inline std::vector<std::vector<DualVector>> triangulate(const LatticePolytope& k) {
  if (k.affine_dim() == 0) return {{k.vertices().front()}};
  const auto& verts = k.vertices();
  const DualVector& apex = verts.front();
  const auto& apex_facets = k.vertex_facets(0);
  std::vector<std::vector<DualVector>> out;
  for (std::size_t f = 0; f < k.reduced_facets().size(); ++f) {
    if (std::binary_search(apex_facets.begin(), apex_facets.end(), f)) continue;
    std::vector<DualVector> on;
    for (std::size_t v = 0; v < verts.size(); ++v) {
      const auto& vf = k.vertex_facets(v);
      if (std::binary_search(vf.begin(), vf.end(), f)) on.push_back(verts[v]);
    }
    for (auto& s : triangulate(LatticePolytope(std::move(on)))) {
      s.insert(s.begin(), apex);
      out.push_back(std::move(s));
    }
  }
  return out;
}

inline Int factorial(std::size_t n) {
  Int f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

// Euclidean volume; zero unless full-dimensional.
inline Rat volume(const LatticePolytope& k) {
  if (!k.is_full_dimensional()) return 0;
  const std::size_t d = k.dim();
  if (d == 0) return 1;
  Int total = 0;
  for (const auto& s : triangulate(k)) {
    IntMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = s[i + 1][j] - s[0][j];
    total += abs(det(m));
  }
  return Rat(total, factorial(d));
}

// Mixed volume by inclusion-exclusion over Minkowski sums of subsets,
// normalized so that V(K, ..., K) = vol(K).
inline Rat mixed_volume_oracle(const std::vector<LatticePolytope>& ks) {
  if (ks.empty()) throw ValidationError("mixed_volume_oracle: no polytopes");
  const std::size_t d = ks.front().dim();
  if (ks.size() != d) throw ValidationError("mixed_volume_oracle: need exactly d polytopes");
  for (const auto& k : ks)
    if (k.dim() != d) throw ValidationError("mixed_volume_oracle: dimension mismatch");
  Rat total = 0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << d); ++mask) {
    std::vector<LatticePolytope> part;
    for (std::size_t i = 0; i < d; ++i)
      if (mask & (std::size_t{1} << i)) part.push_back(ks[i]);
    Rat v = volume(minkowski_sum(part));
    if ((d - part.size()) % 2 == 0) total += v;
    else total -= v;
  }
  return total / Rat(factorial(d));
}

// Finite sum of rational multiples of characters χ^m.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  explicit LaurentPolynomial(std::size_t d) : d_(d) {}
  LaurentPolynomial(std::size_t d, std::vector<std::pair<DualVector, Rat>> terms) : d_(d) {
    for (auto& [m, c] : terms) add_term(m, c);
  }

  static LaurentPolynomial monomial(const DualVector& m, const Rat& c = 1) {
    LaurentPolynomial p(m.dim());
    p.add_term(m, c);
    return p;
  }

  std::size_t dim() const { return d_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<DualVector, Rat>& terms() const { return terms_; }

  void add_term(const DualVector& m, const Rat& c) {
    if (m.dim() != d_) throw ValidationError("laurent polynomial: exponent dimension mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::vector<DualVector> support() const {
    std::vector<DualVector> s;
    for (const auto& t : terms_) s.push_back(t.first);
    return s;
  }

  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.d_ != b.d_) throw ValidationError("laurent product: dimension mismatch");
    LaurentPolynomial p(a.d_);
    for (const auto& [m1, c1] : a.terms_)
      for (const auto& [m2, c2] : b.terms_) p.add_term(m1 + m2, c1 * c2);
    return p;
  }

  friend LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.d_ != b.d_) throw ValidationError("laurent sum: dimension mismatch");
    LaurentPolynomial p = a;
    for (const auto& [m, c] : b.terms_) p.add_term(m, c);
    return p;
  }

  std::complex<double> evaluate(const std::vector<std::complex<double>>& x) const {
    if (x.size() != d_) throw ValidationError("laurent evaluate: dimension mismatch");
    std::complex<double> s = 0;
    for (const auto& [m, c] : terms_) {
      std::complex<double> t = static_cast<double>(c);
      for (std::size_t i = 0; i < d_; ++i) t *= std::pow(x[i], static_cast<int>(m[i]));
      s += t;
    }
    return s;
  }

  Rat evaluate(const std::vector<Rat>& x) const {
    if (x.size() != d_) throw ValidationError("laurent evaluate: dimension mismatch");
    Rat s = 0;
    for (const auto& [m, c] : terms_) {
      Rat t = c;
      for (std::size_t i = 0; i < d_; ++i) {
        if (x[i] == 0 && m[i] < 0) throw ValidationError("laurent evaluate: pole at zero");
        long e = static_cast<long>(m[i]);
        Rat base = e < 0 ? Rat(1) / x[i] : x[i];
        for (long j = 0; j < (e < 0 ? -e : e); ++j) t *= base;
      }
      s += t;
    }
    return s;
  }

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.d_ == b.d_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t d_ = 0;
  std::map<DualVector, Rat> terms_;
};

inline LatticePolytope newton_polytope(const LaurentPolynomial& p) {
  if (p.is_zero()) throw ValidationError("newton_polytope: zero polynomial");
  return LatticePolytope(p.support());
}

}  // namespace toric

#endif  // TORIC_POLYTOPES_HPP
