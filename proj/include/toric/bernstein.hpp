#ifndef TORIC_BERNSTEIN_HPP
#define TORIC_BERNSTEIN_HPP

// Lelong constants, bounds for L(∇) and the arithmetic Bernstein-Kushnirenko
// inequality over Q.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "toric/intersection.hpp"
#include "toric/mahler_heights.hpp"
#include "toric/polytopes.hpp"

namespace toric {

struct LelongConstants {
  std::size_t n = 0;
  Rat c_n;           // (1/2) Σ_{i<n} 1/i
  Rat c_n_prime_head;  // Σ_{i ≤ 2n-2} 1/i
  double c_n_prime_tail = 0;  // Σ_{i ≥ 2n-1} 1/(i 2^i)
  double c_n_prime = 0;
};

// Σ_{i=2n-1}^{depth} 1/(i 2^i), smallest terms first.
inline double lelong_tail_series(std::size_t n, std::size_t depth) {
  if (n == 0) throw ValidationError("lelong: n must be positive");
  const std::size_t start = 2 * n - 1;
  double s = 0;
  for (std::size_t i = depth; i >= start; --i) s += std::ldexp(1.0 / static_cast<double>(i), -static_cast<int>(i));
  return s;
}

inline LelongConstants lelong_constants(std::size_t n) {
  if (n == 0) throw ValidationError("lelong: n must be positive");
  LelongConstants c;
  c.n = n;
  for (std::size_t i = 1; i < n; ++i) c.c_n += Rat(1, static_cast<long>(i));
  c.c_n /= 2;
  for (std::size_t i = 1; i <= 2 * n - 2; ++i) c.c_n_prime_head += Rat(1, static_cast<long>(i));
  // The full series Σ_{i≥1} 1/(i 2^i) is log 2; the tail is log 2 minus its head.
  double head_series = 0;
  for (std::size_t i = 2 * n - 2; i >= 1; --i)
    head_series += std::ldexp(1.0 / static_cast<double>(i), -static_cast<int>(i));
  c.c_n_prime_tail = std::numbers::ln2 - head_series;
  c.c_n_prime = static_cast<double>(c.c_n_prime_head) + c.c_n_prime_tail;
  return c;
}

// (C_d + C_d') N(∇), with d the dimension of ∇ inside its own lattice.
inline double bound_L(const LatticePolytope& k) {
  LatticePolytope r = k.reduced();
  if (!is_absolutely_simple(r).simple) throw ValidationError("bound_L: polytope is not absolutely simple");
  if (r.dim() == 0) return 0;
  LelongConstants c = lelong_constants(r.dim());
  return (static_cast<double>(c.c_n) + c.c_n_prime) * static_cast<double>(polytope_norm(r));
}

struct LSampling {
  std::size_t sections = 24;
  std::size_t points = 400;
  double log_radius = 3;  // log-moduli drawn from [-R, R]
  MahlerOptions mahler{1e-7, 0, 1u << 20};
};

// Empirical lower estimate of L(∇) = sup_s (sup_x log‖s(x)‖ - M(s)) over random
// ±1 sections and sampled torus points, including every point with
// coordinates ±1.
inline double estimate_L_lower(const LatticePolytope& k, std::mt19937_64& rng,
                               const LSampling& opts = {}) {
  LatticePolytope r = k.reduced();
  if (r.dim() == 0) return 0;
  const std::size_t d = r.dim();
  std::vector<DualVector> pts = lattice_points(r);

  std::vector<std::vector<std::complex<double>>> xs;
  if (d <= 10)
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
      std::vector<std::complex<double>> x;
      for (std::size_t i = 0; i < d; ++i) x.emplace_back((mask >> i) & 1 ? -1.0 : 1.0, 0.0);
      xs.push_back(std::move(x));
    }
  std::uniform_real_distribution<double> radius(-opts.log_radius, opts.log_radius);
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
  for (std::size_t s = 0; s < opts.points; ++s) {
    std::vector<std::complex<double>> x;
    // Half the samples stay on the compact torus.
    for (std::size_t i = 0; i < d; ++i)
      x.push_back(std::polar(s % 2 ? std::exp(radius(rng)) : 1.0, angle(rng)));
    xs.push_back(std::move(x));
  }

  std::bernoulli_distribution coin(0.5);
  double best = 0;
  for (std::size_t t = 0; t < opts.sections; ++t) {
    LaurentPolynomial s(d);
    for (const auto& m : pts)
      if (t == 0 || coin(rng)) s.add_term(m, coin(rng) ? 1 : -1);
    if (s.is_zero()) s.add_term(pts.front(), 1);
    double mahler = mahler_measure(s, opts.mahler).value;
    for (const auto& x : xs) {
      double n = canonical_metric_norm(r, s, x);
      if (n == 0) continue;
      best = std::max(best, std::log(n) - mahler);
    }
  }
  return best;
}

struct BKReport {
  std::size_t d = 0;
  bool degenerate = false;      // ∇ not full-dimensional: all mixed volumes vanish
  std::vector<Rat> mixed_volumes;  // V(∇, ∇_1, ..., hat ∇_i, ..., ∇_d)
  std::vector<MahlerEstimate> mahler;
  std::vector<double> l_bounds;
  std::vector<bool> l_from_sum;  // L_i bounded through L(∇_i) <= L(∇)
  double rhs = 0;
  double rhs_error = 0;  // Σ V_i · quadrature error of M(P_i)
};

namespace detail {

inline void check_system(const std::vector<LaurentPolynomial>& ps) {
  if (ps.empty()) throw ValidationError("bk: empty system");
  for (const auto& p : ps) {
    if (p.dim() != ps.size()) throw ValidationError("bk: need d polynomials in d variables");
    if (p.is_zero()) throw ValidationError("bk: zero polynomial");
    for (const auto& [m, c] : p.terms())
      if (!is_integer(c)) throw ValidationError("bk: coefficients must be integers");
  }
}

}  // namespace detail

inline BKReport bk_bound(const std::vector<LaurentPolynomial>& ps, const MahlerOptions& opts = {}) {
  detail::check_system(ps);
  const std::size_t d = ps.size();
  BKReport rep;
  rep.d = d;
  std::vector<LatticePolytope> ks;
  for (const auto& p : ps) ks.push_back(newton_polytope(p));
  LatticePolytope sum = minkowski_sum(ks);
  for (const auto& p : ps) rep.mahler.push_back(mahler_measure(p, opts));
  if (!sum.is_full_dimensional()) {
    rep.degenerate = true;
    rep.mixed_volumes.assign(d, Rat(0));
    rep.l_bounds.assign(d, 0.0);
    rep.l_from_sum.assign(d, false);
    return rep;
  }

  MixedVolumeContext ctx({sum});
  TDivisor e = ctx.divisor(sum);
  std::vector<TDivisor> es;
  for (const auto& k : ks) es.push_back(ctx.divisor(k));
  const Rat fact(factorial(d));
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<TDivisor> ds{e};
    for (std::size_t j = 0; j < d; ++j)
      if (j != i) ds.push_back(es[j]);
    rep.mixed_volumes.push_back(Rat(degree(ds)) / fact);
  }

  std::optional<double> sum_bound;
  for (std::size_t i = 0; i < d; ++i) {
    if (is_absolutely_simple(ks[i].reduced()).simple) {
      rep.l_bounds.push_back(bound_L(ks[i]));
      rep.l_from_sum.push_back(false);
      continue;
    }
    if (!sum_bound) {
      if (!is_absolutely_simple(sum).simple)
        throw ValidationError("bk_bound: neither the Newton polytope of P_" + std::to_string(i + 1) +
                              " nor their sum is absolutely simple; no L bound available");
      sum_bound = bound_L(sum);
    }
    rep.l_bounds.push_back(*sum_bound);
    rep.l_from_sum.push_back(true);
  }

  detail::CompensatedSum rhs;
  for (std::size_t i = 0; i < d; ++i) {
    double v = static_cast<double>(rep.mixed_volumes[i]);
    rhs.add(v * (rep.mahler[i].value + rep.l_bounds[i]));
    rep.rhs_error += v * rep.mahler[i].error;
  }
  rep.rhs = rhs.value();
  return rep;
}

struct BKRoot {
  std::vector<Rat> point;
  Int multiplicity = 1;
};

struct BKVerification {
  BKReport report;
  double lhs = 0;
  double slack = 0;  // rhs - lhs
  bool holds = false;
};

// Checks (1/d!) Σ l(x) h_∇(x) <= RHS for user-supplied common roots, each
// verified exactly.
inline BKVerification bk_verify(const std::vector<LaurentPolynomial>& ps,
                                const std::vector<BKRoot>& roots, const MahlerOptions& opts = {}) {
  detail::check_system(ps);
  const std::size_t d = ps.size();
  std::vector<LatticePolytope> ks;
  for (const auto& p : ps) ks.push_back(newton_polytope(p));
  LatticePolytope sum = minkowski_sum(ks);
  for (std::size_t r = 0; r < roots.size(); ++r) {
    const auto& root = roots[r];
    if (root.point.size() != d) throw ValidationError("bk_verify: root " + std::to_string(r) + " has the wrong dimension");
    if (root.multiplicity < 1) throw ValidationError("bk_verify: root " + std::to_string(r) + " has multiplicity < 1");
    for (const auto& c : root.point)
      if (c == 0) throw ValidationError("bk_verify: root " + std::to_string(r) + " is not in the torus");
    for (std::size_t i = 0; i < d; ++i)
      if (ps[i].evaluate(root.point) != 0)
        throw ValidationError("bk_verify: root " + std::to_string(r) + " is not a zero of P_" + std::to_string(i + 1));
  }

  BKVerification out;
  out.report = bk_bound(ps, opts);
  detail::CompensatedSum lhs;
  for (const auto& root : roots)
    lhs.add(static_cast<double>(root.multiplicity) * canonical_height_point(sum, root.point));
  out.lhs = lhs.value() / static_cast<double>(factorial(d));
  out.slack = out.report.rhs - out.lhs;
  out.holds = out.slack >= 0;
  return out;
}

// d! V(∇_1, ..., ∇_d): the number of isolated roots in the torus of a
// generic system with these Newton polytopes.
inline Int bkk_count(const std::vector<LaurentPolynomial>& ps) {
  detail::check_system(ps);
  std::vector<LatticePolytope> ks;
  for (const auto& p : ps) ks.push_back(newton_polytope(p));
  if (!minkowski_sum(ks).is_full_dimensional()) return 0;
  Rat v = mixed_volume(ks) * Rat(factorial(ps.size()));
  return to_int(v);
}

}  // namespace toric

#endif  // TORIC_BERNSTEIN_HPP
