#ifndef TORIC_DOUBLE_DESCRIPTION_HPP
#define TORIC_DOUBLE_DESCRIPTION_HPP

// Double description method over the integers: converts a cone given by
// homogeneous inequalities into its extreme rays and lineality space.

#include <cstddef>
#include <utility>
#include <vector>

#include "toric/lattice.hpp"

namespace toric::dd {

using IntVec = std::vector<Int>;

struct Generators {
  std::vector<IntVec> rays;       // extreme rays modulo lineality, primitive
  std::vector<IntVec> lineality;  // basis of the lineality space
};

inline Int dot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline void make_primitive(IntVec& v) {
  Int g = content(v);
  if (g > 1)
    for (auto& x : v) x /= g;
}

// Extreme rays of {x in R^n : a . x >= 0 for every a in `constraints`}.
inline Generators extreme_rays(const std::vector<IntVec>& constraints, std::size_t n) {
  struct Ray {
    IntVec v;
    std::vector<bool> zeros;  // zero set over processed constraints
  };
  std::vector<IntVec> lin;
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n);
    e[i] = 1;
    lin.push_back(std::move(e));
  }
  std::vector<Ray> rays;

  for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
    const IntVec& a = constraints[ci];
    if (a.size() != n) throw ValidationError("double description: dimension mismatch");

    std::size_t pivot = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i)
      if (dot(a, lin[i]) != 0) {
        pivot = i;
        break;
      }

    if (pivot < lin.size()) {
      IntVec l = std::move(lin[pivot]);
      lin.erase(lin.begin() + static_cast<std::ptrdiff_t>(pivot));
      Int al = dot(a, l);
      if (al < 0) {
        for (auto& x : l) x = -x;
        al = -al;
      }
      auto project = [&](IntVec& v) {
        Int av = dot(a, v);
        if (av == 0) return;
        for (std::size_t j = 0; j < n; ++j) v[j] = al * v[j] - av * l[j];
        make_primitive(v);
      };
      for (auto& w : lin) project(w);
      for (auto& r : rays) {
        project(r.v);
        r.zeros.push_back(true);
      }
      Ray nr{l, std::vector<bool>(ci + 1, true)};
      nr.zeros[ci] = false;
      make_primitive(nr.v);
      rays.push_back(std::move(nr));
      continue;
    }

    std::vector<Int> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      if (val[i] > 0) pos.push_back(i);
      else if (val[i] < 0) neg.push_back(i);
    }
    if (neg.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i) rays[i].zeros.push_back(val[i] == 0);
      continue;
    }

    const std::size_t cone_dim = n - lin.size();
    std::vector<Ray> next;
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        std::vector<bool> common(ci, false);
        std::size_t count = 0;
        for (std::size_t k = 0; k < ci; ++k)
          if (rays[p].zeros[k] && rays[q].zeros[k]) {
            common[k] = true;
            ++count;
          }
        if (cone_dim >= 2 && count + 2 < cone_dim) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          bool contains = true;
          for (std::size_t k = 0; k < ci && contains; ++k)
            if (common[k] && !rays[r].zeros[k]) contains = false;
          if (contains) adjacent = false;
        }
        if (!adjacent) continue;
        IntVec v(n);
        Int vp = val[p], vq = -val[q];
        for (std::size_t j = 0; j < n; ++j) v[j] = vp * rays[q].v[j] + vq * rays[p].v[j];
        make_primitive(v);
        common.push_back(true);
        next.push_back({std::move(v), std::move(common)});
      }
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (val[i] < 0) continue;
      rays[i].zeros.push_back(val[i] == 0);
      next.push_back(std::move(rays[i]));
    }
    rays = std::move(next);
  }

  Generators g;
  for (auto& r : rays) g.rays.push_back(std::move(r.v));
  for (auto& l : lin) {
    make_primitive(l);
    g.lineality.push_back(std::move(l));
  }
  return g;
}

}  // namespace toric::dd

#endif  // TORIC_DOUBLE_DESCRIPTION_HPP
