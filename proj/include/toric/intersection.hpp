#ifndef TORIC_INTERSECTION_HPP
#define TORIC_INTERSECTION_HPP

// Products of first Chern classes of invariant divisors, computed as integer
// Minkowski weights on the cones of a smooth complete fan.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "toric/cones_fans.hpp"
#include "toric/divisors.hpp"
#include "toric/polytopes.hpp"
#include "toric/tdivisor.hpp"

namespace toric {

// Integer weight on every cone of dimension d - codim.
class MinkowskiWeight {
 public:
  MinkowskiWeight(std::shared_ptr<const Fan> fan, std::size_t codim)
      : fan_(std::move(fan)), codim_(codim) {
    if (codim_ > fan_->dim()) throw ValidationError("weight: codimension exceeds dimension");
    for (const auto& c : fan_->cones(fan_->dim() - codim_)) values_[c] = 0;
  }

  const Fan& fan() const { return *fan_; }
  const std::shared_ptr<const Fan>& fan_ptr() const { return fan_; }
  std::size_t codim() const { return codim_; }
  std::size_t cone_dim() const { return fan_->dim() - codim_; }
  const std::map<RayIndices, Int>& values() const { return values_; }

  const Int& at(const RayIndices& c) const { return values_.at(c); }
  void set(const RayIndices& c, Int v) {
    auto it = values_.find(c);
    if (it == values_.end()) throw ValidationError("weight: not a cone of the right dimension");
    it->second = std::move(v);
  }

  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](const auto& kv) { return kv.second == 0; });
  }

  friend bool operator==(const MinkowskiWeight& a, const MinkowskiWeight& b) {
    return a.codim_ == b.codim_ && a.values_ == b.values_;
  }

 private:
  std::shared_ptr<const Fan> fan_;
  std::size_t codim_;
  std::map<RayIndices, Int> values_;
};

inline MinkowskiWeight fundamental_weight(std::shared_ptr<const Fan> fan) {
  require_smooth_full(*fan, "fundamental_weight");
  MinkowskiWeight w(fan, 0);
  for (const auto& c : fan->maximal_cones()) w.set(c, 1);
  return w;
}

// Rays r with sigma ∪ {r} a cone of the fan.
inline std::vector<std::size_t> cofacet_rays(const Fan& f, const RayIndices& sigma) {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < f.rays().size(); ++r) {
    if (std::binary_search(sigma.begin(), sigma.end(), r)) continue;
    RayIndices tau = sigma;
    tau.insert(std::upper_bound(tau.begin(), tau.end(), r), r);
    if (f.contains_cone(tau)) out.push_back(r);
  }
  return out;
}

inline RayIndices with_ray(RayIndices sigma, std::size_t r) {
  sigma.insert(std::upper_bound(sigma.begin(), sigma.end(), r), r);
  return sigma;
}

// Sum over τ > σ of w(τ) v_{τ/σ} lies in the lattice spanned by σ, for every
// σ one dimension below the weight's support.
inline bool check_balanced(const MinkowskiWeight& w) {
  const Fan& f = w.fan();
  if (w.cone_dim() == 0) return true;
  const std::size_t n = f.dim();
  for (const auto& sigma : f.cones(w.cone_dim() - 1)) {
    LatticeVector total(n);
    for (auto r : cofacet_rays(f, sigma)) total += w.at(with_ray(sigma, r)) * f.rays()[r];
    std::vector<LatticeVector> gens;
    for (auto i : sigma) gens.push_back(f.rays()[i]);
    if (!in_sublattice(total, gens)) return false;
  }
  return true;
}

// Lift and reference-cone choices for intersect_divisor. Without a generator
// the lift of τ/σ is the extra ray of τ and m_σ comes from the first maximal
// cone containing σ; with one, both are randomized.
struct IntersectChoices {
  std::mt19937_64* rng = nullptr;
  int lift_range = 5;
};

// w(σ) = Σ_{τ>σ} c(τ) <m_σ - m_{D,τ}, v_{τ/σ}>, with m_{D,τ} taken from any
// maximal cone containing τ.
inline MinkowskiWeight intersect_divisor(const MinkowskiWeight& c, const TDivisor& d,
                                         const CartierData& cd,
                                         IntersectChoices choices = {}) {
  const Fan& f = c.fan();
  if (d.fan_ptr() != c.fan_ptr() && !(d.fan() == f)) throw ValidationError("intersect_divisor: divisor lives on another fan");
  if (c.codim() >= f.dim()) throw ValidationError("intersect_divisor: weight is already of codimension d");
  if (!check_balanced(c)) throw ValidationError("intersect_divisor: input weight is not balanced");
  auto pick_max = [&](const RayIndices& cone) -> const DualVector& {
    auto owners = f.maximal_cones_containing(cone);
    std::size_t k = 0;
    if (choices.rng) k = std::uniform_int_distribution<std::size_t>(0, owners.size() - 1)(*choices.rng);
    return cd.m[owners[k]];
  };

  MinkowskiWeight out(c.fan_ptr(), c.codim() + 1);
  for (const auto& sigma : f.cones(out.cone_dim())) {
    const DualVector& m_sigma = pick_max(sigma);
    Int total = 0;
    for (auto r : cofacet_rays(f, sigma)) {
      RayIndices tau = with_ray(sigma, r);
      const Int& weight = c.at(tau);
      if (weight == 0) continue;
      LatticeVector lift = f.rays()[r];
      if (choices.rng) {
        std::uniform_int_distribution<int> k(-choices.lift_range, choices.lift_range);
        for (auto i : sigma) lift += Int(k(*choices.rng)) * f.rays()[i];
      }
      total += weight * pairing(m_sigma - pick_max(tau), lift);
    }
    out.set(sigma, std::move(total));
  }
  return out;
}

inline MinkowskiWeight intersect_divisor(const MinkowskiWeight& c, const TDivisor& d,
                                         IntersectChoices choices = {}) {
  return intersect_divisor(c, d, cartier_data(d), choices);
}

// deg(c1(D_1) ... c1(D_d)).
inline Int degree(const std::vector<TDivisor>& ds, IntersectChoices choices = {}) {
  if (ds.empty()) throw ValidationError("degree: no divisors");
  auto fan = ds.front().fan_ptr();
  if (ds.size() != fan->dim()) throw ValidationError("degree: need exactly d divisors");
  MinkowskiWeight w = fundamental_weight(fan);
  for (const auto& d : ds) w = intersect_divisor(w, d, choices);
  return w.at({});
}

// Shared regularized fan of a Minkowski sum with each summand pulled back as
// a basepoint-free divisor.
struct MixedVolumeContext {
  std::shared_ptr<const Fan> fan;
  LatticePolytope sum;

  explicit MixedVolumeContext(const std::vector<LatticePolytope>& ks)
      : sum(minkowski_sum(ks)) {
    if (!sum.is_full_dimensional())
      throw ValidationError("mixed_volume: Minkowski sum is not full-dimensional");
    fan = std::make_shared<const Fan>(regularize(*normal_fan(sum).fan));
  }

  TDivisor divisor(const LatticePolytope& k) const { return divisor_of_polytope(fan, k); }

  Rat mixed_volume(const std::vector<LatticePolytope>& ks) const {
    std::vector<TDivisor> ds;
    for (const auto& k : ks) ds.push_back(divisor(k));
    return Rat(degree(ds)) / Rat(factorial(fan->dim()));
  }
};

inline Rat mixed_volume(const std::vector<LatticePolytope>& ks) {
  if (ks.empty()) throw ValidationError("mixed_volume: no polytopes");
  if (ks.size() != ks.front().dim()) throw ValidationError("mixed_volume: need exactly d polytopes");
  return MixedVolumeContext(ks).mixed_volume(ks);
}

// Jurkiewicz-Danilov presentation Z[t_1..t_r] / (I + J).
struct JdPresentation {
  std::size_t variables = 0;
  std::vector<RayIndices> nonfaces;           // I: minimal non-face monomials
  std::vector<std::vector<Int>> linear_forms;  // J: one per basis vector of M

  std::string to_string() const {
    std::ostringstream os;
    os << "variables: t0..t" << (variables ? variables - 1 : 0) << '\n' << "I:";
    for (const auto& m : nonfaces) {
      os << ' ';
      for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "*" : "") << 't' << m[i];
    }
    os << "\nJ:";
    for (const auto& l : linear_forms) {
      os << ' ';
      bool first = true;
      for (std::size_t i = 0; i < l.size(); ++i) {
        if (l[i] == 0) continue;
        Int a = abs(l[i]);
        if (first) os << (l[i] < 0 ? "-" : "");
        else os << (l[i] < 0 ? " - " : " + ");
        if (a != 1) os << a << '*';
        os << 't' << i;
        first = false;
      }
      if (first) os << '0';
      os << ';';
    }
    os << '\n';
    return os.str();
  }
};

inline JdPresentation jd_presentation(const Fan& f) {
  JdPresentation p;
  const std::size_t r = f.rays().size();
  p.variables = r;
  // Minimal non-faces have at most d + 1 rays in a simplicial fan.
  const std::size_t max_size = std::min(r, f.dim() + 1);
  std::vector<RayIndices> frontier{{}};
  for (std::size_t size = 1; size <= max_size; ++size) {
    std::vector<RayIndices> next;
    for (const auto& base : frontier) {
      std::size_t start = base.empty() ? 0 : base.back() + 1;
      for (std::size_t i = start; i < r; ++i) {
        RayIndices s = base;
        s.push_back(i);
        if (f.contains_cone(s)) {
          next.push_back(std::move(s));
          continue;
        }
        bool minimal = true;
        for (std::size_t drop = 0; drop < s.size() && minimal; ++drop) {
          RayIndices sub = s;
          sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
          if (!f.contains_cone(sub)) minimal = false;
        }
        if (minimal) p.nonfaces.push_back(std::move(s));
      }
    }
    frontier = std::move(next);
  }
  std::sort(p.nonfaces.begin(), p.nonfaces.end());
  for (std::size_t j = 0; j < f.dim(); ++j) {
    std::vector<Int> form;
    for (const auto& u : f.rays()) form.push_back(u[j]);
    p.linear_forms.push_back(std::move(form));
  }
  return p;
}

// True iff the given rays do not span a cone. In that case the product of
// their elementary divisors is checked to be the zero weight.
inline bool nonface_product_vanishes(std::shared_ptr<const Fan> fan,
                                     const std::vector<std::size_t>& rays) {
  RayIndices s = rays;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw ValidationError("nonface_product_vanishes: repeated ray");
  if (s.size() > fan->dim()) throw ValidationError("nonface_product_vanishes: more than d rays");
  for (auto i : s)
    if (i >= fan->rays().size()) throw ValidationError("nonface_product_vanishes: bad ray index");
  if (fan->contains_cone(s)) return false;
  MinkowskiWeight w = fundamental_weight(fan);
  for (auto i : s) w = intersect_divisor(w, TDivisor::elementary(fan, i));
  if (!w.is_zero()) throw Error("nonface_product_vanishes: non-face product has a nonzero weight");
  return true;
}

}  // namespace toric

#endif  // TORIC_INTERSECTION_HPP
