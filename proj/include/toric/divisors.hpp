#ifndef TORIC_DIVISORS_HPP
#define TORIC_DIVISORS_HPP

// T-invariant divisors on smooth complete fans: Cartier data, positivity,
// section polytopes and the canonical metric.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "toric/cones_fans.hpp"
#include "toric/polytopes.hpp"
#include "toric/tdivisor.hpp"

namespace toric {

// m_{D,σ} per maximal cone, aligned with fan.maximal_cones().
struct CartierData {
  std::vector<DualVector> m;
};

inline void require_smooth_full(const Fan& f, const char* op) {
  if (!f.is_smooth()) throw ValidationError(std::string(op) + ": fan is not smooth");
  for (const auto& c : f.maximal_cones())
    if (c.size() != f.dim())
      throw ValidationError(std::string(op) + ": fan has a lower-dimensional maximal cone");
}

// Solves <m_σ, u_i> = -a_i on every maximal cone.
inline CartierData cartier_data(const TDivisor& d) {
  const Fan& f = d.fan();
  require_smooth_full(f, "cartier_data");
  const std::size_t n = f.dim();
  CartierData out;
  for (const auto& c : f.maximal_cones()) {
    std::vector<LatticeVector> rays;
    for (auto i : c) rays.push_back(f.rays()[i]);
    RatMatrix inv = inverse(IntMatrix::from_rows(rays, n));
    // m R^T = -a  =>  m = -a (R^T)^{-1} = -(R^{-1} a)^T.
    std::vector<Int> m(n);
    for (std::size_t j = 0; j < n; ++j) {
      Rat s = 0;
      for (std::size_t k = 0; k < n; ++k) s -= inv(j, k) * Rat(d[c[k]]);
      m[j] = to_int(s);
    }
    out.m.emplace_back(std::move(m));
  }
  return out;
}

inline Int support_function_eval(const TDivisor& d, const CartierData& cd,
                                 const LatticeVector& u) {
  auto hits = d.fan().locate(u);
  if (hits.empty()) throw ValidationError("support_function_eval: vector outside the support");
  return pairing(cd.m[hits.front()], u);
}

inline Int support_function_eval(const TDivisor& d, const LatticeVector& u) {
  return support_function_eval(d, cartier_data(d), u);
}

// ψ_D concave: <m_σ, u_i> >= -a_i for every maximal σ and every ray i.
inline bool is_basepoint_free(const TDivisor& d) {
  CartierData cd = cartier_data(d);
  const auto& rays = d.fan().rays();
  for (const auto& m : cd.m)
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (pairing(m, rays[i]) < -d[i]) return false;
  return true;
}

// Strictly concave: the inequality is strict off σ, and the m_σ are distinct.
inline bool is_ample(const TDivisor& d) {
  CartierData cd = cartier_data(d);
  const Fan& f = d.fan();
  const auto& rays = f.rays();
  for (std::size_t s = 0; s < cd.m.size(); ++s) {
    const auto& cone = f.maximal_cones()[s];
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (std::binary_search(cone.begin(), cone.end(), i)) continue;
      if (pairing(cd.m[s], rays[i]) <= -d[i]) return false;
    }
  }
  std::vector<DualVector> ms = cd.m;
  std::sort(ms.begin(), ms.end());
  return std::adjacent_find(ms.begin(), ms.end()) == ms.end();
}

inline bool is_principal(const TDivisor& d) {
  CartierData cd = cartier_data(d);
  return std::all_of(cd.m.begin(), cd.m.end(), [&](const DualVector& m) { return m == cd.m[0]; });
}

// K_D = conv{m_{D,σ}}; its lattice points index a basis of sections.
inline LatticePolytope polytope_of_divisor(const TDivisor& d) {
  if (!is_basepoint_free(d))
    throw ValidationError("polytope_of_divisor: divisor is not basepoint-free");
  return LatticePolytope(cartier_data(d).m);
}

// a_i = -ψ_K(u_i). ψ_K must be linear on each maximal cone: some vertex of K
// attains the minimum on all rays of the cone at once.
inline TDivisor divisor_of_polytope(std::shared_ptr<const Fan> fan, const LatticePolytope& k) {
  if (k.dim() != fan->dim()) throw ValidationError("divisor_of_polytope: dimension mismatch");
  const auto& rays = fan->rays();
  std::vector<Int> psi;
  for (const auto& u : rays) psi.push_back(support_function(k, u));
  for (const auto& c : fan->maximal_cones()) {
    bool linear = std::any_of(k.vertices().begin(), k.vertices().end(), [&](const DualVector& v) {
      return std::all_of(c.begin(), c.end(),
                         [&](std::size_t i) { return pairing(v, rays[i]) == psi[i]; });
    });
    if (!linear)
      throw ValidationError("divisor_of_polytope: support function is not linear on a cone");
  }
  for (auto& x : psi) x = -x;
  return TDivisor(std::move(fan), std::move(psi));
}

inline Int picard_rank(const Fan& f) {
  return Int(f.rays().size()) - Int(f.dim());
}

// log max_{m in vertices(K)} |x^m|.
inline double log_vertex_max(const LatticePolytope& k, const std::vector<std::complex<double>>& x) {
  if (x.size() != k.dim()) throw ValidationError("torus point: dimension mismatch");
  std::vector<double> logs;
  for (const auto& xi : x) {
    if (xi == 0.0) throw ValidationError("torus point: coordinate is zero");
    logs.push_back(std::log(std::abs(xi)));
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& m : k.vertices()) {
    double s = 0;
    for (std::size_t i = 0; i < logs.size(); ++i) s += static_cast<double>(m[i]) * logs[i];
    best = std::max(best, s);
  }
  return best;
}

// ‖s(x)‖ = |s(x)| / max over vertices m of K_D of |x^m|.
inline double canonical_metric_norm(const LatticePolytope& kd, const LaurentPolynomial& s,
                                    const std::vector<std::complex<double>>& x) {
  for (const auto& m : s.support())
    if (!kd.contains(m))
      throw ValidationError("canonical_metric_norm: section support outside K_D");
  double denom = log_vertex_max(kd, x);
  std::complex<double> v = s.evaluate(x);
  return std::abs(v) * std::exp(-denom);
}

inline double canonical_metric_norm(const TDivisor& d, const LaurentPolynomial& s,
                                    const std::vector<std::complex<double>>& x) {
  return canonical_metric_norm(polytope_of_divisor(d), s, x);
}

}  // namespace toric

#endif  // TORIC_DIVISORS_HPP
