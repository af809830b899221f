#ifndef TORIC_MAHLER_HEIGHTS_HPP
#define TORIC_MAHLER_HEIGHTS_HPP

// Mahler measures of Laurent polynomials, the Bloch-Wigner dilogarithm and
// canonical heights of hypersurfaces and of rational torus points.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "toric/divisors.hpp"
#include "toric/intersection.hpp"
#include "toric/polytopes.hpp"

namespace toric {

struct MahlerEstimate {
  double value = 0;
  std::size_t grid = 0;  // points per axis of the last grid, 0 for closed forms
  double error = 0;      // |est(n) - est(n/2)|, or a bound for closed forms
};

struct MahlerOptions {
  double tol = 1e-6;
  std::size_t max_grid = 0;        // 0: pick from the dimension
  std::size_t max_points = 1u << 24;  // cap on n^d
};

namespace detail {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
    else comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

inline double log_abs(const Int& v) {
  Int a = abs(v);
  if (a == 0) return -std::numeric_limits<double>::infinity();
  std::size_t bits = boost::multiprecision::msb(a);
  if (bits < 1000) return std::log(static_cast<double>(a));
  std::size_t shift = bits - 60;
  return std::log(static_cast<double>(Int(a >> shift))) + static_cast<double>(shift) * std::log(2.0);
}

inline double log_abs(const Rat& r) {
  return log_abs(boost::multiprecision::numerator(r)) -
         log_abs(boost::multiprecision::denominator(r));
}

struct GridTerm {
  std::vector<long long> exponent;
  double coeff;
};

// Average of log|P| over the shifted grid θ_k = 2π(j_k + 1/2 + shift_k)/n.
inline double grid_average(const std::vector<GridTerm>& terms, std::size_t d, std::size_t n,
                           const std::vector<double>& shift) {
  const double two_pi = 2 * std::numbers::pi;
  std::vector<long long> lo(d, 0), hi(d, 0);
  for (const auto& t : terms)
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], t.exponent[k]);
      hi[k] = std::max(hi[k], t.exponent[k]);
    }
  // powers[k][e - lo[k]] = x_k^e at the current grid point
  std::vector<std::vector<std::complex<double>>> powers(d);
  for (std::size_t k = 0; k < d; ++k) powers[k].resize(static_cast<std::size_t>(hi[k] - lo[k] + 1));
  auto fill = [&](std::size_t k, std::size_t j) {
    const double theta = two_pi * (static_cast<double>(j) + 0.5 + shift[k]) / static_cast<double>(n);
    const std::complex<double> z = std::polar(1.0, theta);
    const std::complex<double> zi = std::conj(z);
    auto& pw = powers[k];
    const std::size_t zero = static_cast<std::size_t>(-lo[k]);
    pw[zero] = 1.0;
    for (std::size_t e = zero + 1; e < pw.size(); ++e) pw[e] = pw[e - 1] * z;
    for (std::size_t e = zero; e-- > 0;) pw[e] = pw[e + 1] * zi;
  };
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t k = 0; k < d; ++k) fill(k, 0);
  CompensatedSum acc;
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= n;
  for (std::size_t step = 0; step < total; ++step) {
    std::complex<double> s = 0;
    for (const auto& t : terms) {
      std::complex<double> v = t.coeff;
      for (std::size_t k = 0; k < d; ++k) v *= powers[k][static_cast<std::size_t>(t.exponent[k] - lo[k])];
      s += v;
    }
    double l = std::log(std::abs(s));
    if (!std::isfinite(l)) return std::numeric_limits<double>::quiet_NaN();
    acc.add(l);
    for (std::size_t k = 0; k < d; ++k) {
      if (++idx[k] < n) {
        fill(k, idx[k]);
        break;
      }
      idx[k] = 0;
      fill(k, 0);
    }
  }
  return acc.value() / static_cast<double>(total);
}

}  // namespace detail

// Midpoint-grid Mahler measure with doubling from n until the successive
// difference drops below opts.tol or the grid cap is reached.
inline MahlerEstimate mahler_numeric(const LaurentPolynomial& p, std::size_t n,
                                     const MahlerOptions& opts = {}) {
  if (p.is_zero()) throw ValidationError("mahler_numeric: zero polynomial");
  if (n < 8) throw ValidationError("mahler_numeric: grid size must be at least 8");
  const std::size_t d = p.dim();
  std::vector<detail::GridTerm> terms;
  for (const auto& [m, c] : p.terms()) {
    detail::GridTerm t;
    for (std::size_t k = 0; k < d; ++k) t.exponent.push_back(static_cast<long long>(m[k]));
    t.coeff = static_cast<double>(c);
    terms.push_back(std::move(t));
  }
  if (d == 0) return {std::log(std::abs(terms.front().coeff)), 0, 0};

  std::size_t cap = opts.max_grid;
  if (cap == 0) {
    cap = 8;
    while (true) {
      std::size_t pts = 1;
      bool over = false;
      for (std::size_t k = 0; k < d && !over; ++k) {
        if (pts > opts.max_points / (cap * 2)) over = true;
        pts *= cap * 2;
      }
      if (over || pts > opts.max_points) break;
      cap *= 2;
    }
  }
  cap = std::max(cap, n);

  std::mt19937_64 jitter_rng(0x6d61686c6572ULL);
  std::uniform_real_distribution<double> jitter(-0.25, 0.25);
  auto evaluate = [&](std::size_t grid) {
    std::vector<double> shift(d, 0.0);
    for (int attempt = 0; attempt < 8; ++attempt) {
      double v = detail::grid_average(terms, d, grid, shift);
      if (std::isfinite(v)) return v;
      for (auto& s : shift) s = jitter(jitter_rng);
    }
    throw NumericError("mahler_numeric: integrand not finite after resampling");
  };

  double prev = evaluate(n);
  MahlerEstimate est{prev, n, std::numeric_limits<double>::infinity()};
  for (std::size_t grid = 2 * n; grid <= cap; grid *= 2) {
    double cur = evaluate(grid);
    est = {cur, grid, std::abs(cur - prev)};
    if (est.error < opts.tol) break;
    prev = cur;
  }
  return est;
}

// Jensen: log|lead| + Σ log max(1, |ρ|) over companion-matrix eigenvalues.
// Accepts any Laurent polynomial in one variable.
inline double mahler_univariate_exact(const LaurentPolynomial& p) {
  if (p.dim() != 1) throw ValidationError("mahler_univariate_exact: not univariate");
  if (p.is_zero()) throw ValidationError("mahler_univariate_exact: zero polynomial");
  const auto& terms = p.terms();
  Int lo = terms.begin()->first[0];
  Int hi = terms.rbegin()->first[0];
  const Rat& lead = terms.rbegin()->second;
  double result = detail::log_abs(lead);
  const std::size_t deg = static_cast<std::size_t>(hi - lo);
  if (deg == 0) return result;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg),
                                            static_cast<Eigen::Index>(deg));
  for (std::size_t i = 1; i < deg; ++i)
    c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (const auto& [m, a] : terms) {
    std::size_t k = static_cast<std::size_t>(m[0] - lo);
    if (k == deg) continue;
    c(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(deg - 1)) =
        -static_cast<double>(a / lead);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
  for (const auto& root : es.eigenvalues()) result += std::max(0.0, std::log(std::abs(root)));
  return result;
}

// D(z) = Im li2(z) + log|z| arg(1 - z).
inline double bloch_wigner(std::complex<double> z) {
  if (z == 0.0 || z == 1.0) throw ValidationError("bloch_wigner: z must avoid 0 and 1");
  double sign = 1;
  if (std::abs(z) > 1) {
    z = 1.0 / z;
    sign = -sign;
  }
  if (z.real() > 0.5) {
    z = 1.0 - z;
    sign = -sign;
  }
  // li2(z) = Σ B_k u^{k+1}/(k+1)! with u = -log(1 - z); |u| < π/3·2 here.
  static const double bernoulli[] = {1.0,
                                     -1.0 / 2,
                                     1.0 / 6,
                                     0,
                                     -1.0 / 30,
                                     0,
                                     1.0 / 42,
                                     0,
                                     -1.0 / 30,
                                     0,
                                     5.0 / 66,
                                     0,
                                     -691.0 / 2730,
                                     0,
                                     7.0 / 6,
                                     0,
                                     -3617.0 / 510,
                                     0,
                                     43867.0 / 798,
                                     0,
                                     -174611.0 / 330,
                                     0,
                                     854513.0 / 138,
                                     0,
                                     -236364091.0 / 2730,
                                     0,
                                     8553103.0 / 6,
                                     0,
                                     -23749461029.0 / 870,
                                     0,
                                     8615841276005.0 / 14322};
  const std::complex<double> u = -std::log(1.0 - z);
  std::complex<double> power = u;  // u^{k+1}/(k+1)!
  std::complex<double> li2 = 0;
  for (std::size_t k = 0; k < std::size(bernoulli); ++k) {
    li2 += bernoulli[k] * power;
    power *= u / static_cast<double>(k + 2);
  }
  double d = li2.imag() + std::log(std::abs(z)) * std::arg(1.0 - z);
  return sign * d;
}

// I(a_0, ..., a_n) = M(a_0 + a_1 x_1 + ... + a_n x_n) for n in {1, 2}.
inline double mahler_linear_form(const std::vector<double>& a) {
  if (a.size() != 2 && a.size() != 3)
    throw ValidationError("mahler_linear_form: expected two or three moduli");
  for (double x : a)
    if (x < 0 || !std::isfinite(x)) throw ValidationError("mahler_linear_form: negative modulus");
  double top = *std::max_element(a.begin(), a.end());
  if (top == 0) throw ValidationError("mahler_linear_form: all moduli are zero");
  if (a.size() == 2 || 2 * top >= a[0] + a[1] + a[2]) return std::log(top);
  const double pi = std::numbers::pi;
  auto angle = [&](std::size_t i) {
    double x = a[(i + 1) % 3], y = a[(i + 2) % 3];
    double c = (x * x + y * y - a[i] * a[i]) / (2 * x * y);
    return std::acos(std::clamp(c, -1.0, 1.0));
  };
  double result = 0;
  for (std::size_t i = 0; i < 3; ++i) result += angle(i) / pi * std::log(a[i]);
  return result + bloch_wigner(std::polar(a[1] / a[0], angle(2))) / pi;
}

inline double mahler_trinomial(double a0, double a1, double a2) {
  return mahler_linear_form({a0, a1, a2});
}

namespace detail {

// Univariate Q with P = c·x^{m0} Q(x^v), v primitive, when the support of P
// lies on a line.
inline std::optional<LaurentPolynomial> collinear_reduction(const LaurentPolynomial& p) {
  const auto& terms = p.terms();
  const DualVector& m0 = terms.begin()->first;
  std::optional<DualVector> dir;
  for (const auto& [m, c] : terms) {
    DualVector diff = m - m0;
    if (diff.is_zero()) continue;
    DualVector prim = primitive(diff);
    if (!dir) dir = prim;
    else if (prim != *dir && prim != -1 * *dir) return std::nullopt;
  }
  LaurentPolynomial q(1);
  for (const auto& [m, c] : terms) {
    DualVector diff = m - m0;
    Int k = 0;
    if (dir)
      for (std::size_t i = 0; i < diff.dim(); ++i)
        if ((*dir)[i] != 0) {
          k = diff[i] / (*dir)[i];
          break;
        }
    q.add_term(DualVector({k}), c);
  }
  return q;
}

}  // namespace detail

// M(P) with closed forms where they apply: monomials, supports on a line
// (Jensen), and three terms with affinely independent exponents (trinomial
// formula). Otherwise the midpoint grid.
inline MahlerEstimate mahler_measure(const LaurentPolynomial& p, const MahlerOptions& opts = {}) {
  if (p.is_zero()) throw ValidationError("mahler_measure: zero polynomial");
  const auto& terms = p.terms();
  if (terms.size() == 1) return {detail::log_abs(terms.begin()->second), 0, 0};
  if (auto q = detail::collinear_reduction(p)) {
    if (q->terms().size() == 2) {
      double a = std::abs(static_cast<double>(q->terms().begin()->second));
      double b = std::abs(static_cast<double>(q->terms().rbegin()->second));
      return {mahler_linear_form({a, b}), 0, 0};
    }
    return {mahler_univariate_exact(*q), 0, 1e-12};
  }
  if (terms.size() == 3) {
    std::vector<DualVector> ms;
    std::vector<double> cs;
    for (const auto& [m, c] : terms) {
      ms.push_back(m);
      cs.push_back(std::abs(static_cast<double>(c)));
    }
    if (rank(std::vector<DualVector>{ms[1] - ms[0], ms[2] - ms[0]}) == 2)
      return {mahler_linear_form(cs), 0, 1e-12};
  }
  return mahler_numeric(p, 16, opts);
}

// deg(c1(L_1) ... c1(L_d)) · M(s) for a section s of O(D).
inline MahlerEstimate height_hypersurface(const std::vector<TDivisor>& ls, const LaurentPolynomial& s,
                                          const TDivisor& d, const MahlerOptions& opts = {}) {
  if (s.is_zero()) throw ValidationError("height_hypersurface: zero section");
  if (ls.empty()) throw ValidationError("height_hypersurface: no line bundles");
  const Fan& f = d.fan();
  if (s.dim() != f.dim()) throw ValidationError("height_hypersurface: dimension mismatch");
  for (const auto& l : ls) {
    if (l.fan_ptr() != d.fan_ptr() && !(l.fan() == f))
      throw ValidationError("height_hypersurface: divisors live on different fans");
    if (!is_basepoint_free(l)) throw ValidationError("height_hypersurface: L is not basepoint-free");
  }
  for (const auto& m : s.support())
    for (std::size_t i = 0; i < f.rays().size(); ++i)
      if (pairing(m, f.rays()[i]) < -d[i])
        throw ValidationError("height_hypersurface: s is not a section of O(D)");
  Int deg = degree(ls);
  MahlerEstimate m = mahler_measure(s, opts);
  double k = static_cast<double>(deg);
  return {k * m.value, m.grid, std::abs(k) * m.error};
}

// Factors of |x^m|_ν maxima per place, kept exact. The archimedean entry is
// max over vertices of |x^m|; each finite entry e_b is -min over vertices of
// <m, v_b(x)>, so the place contributes e_b log b. Bases are primes, except
// for leftover cofactors without small prime factors, which are split into a
// pairwise coprime family (each behaves like a single place).
struct HeightPlaces {
  Rat archimedean = 1;
  std::map<Int, Int> finite;

  double value() const {
    double s = detail::log_abs(archimedean);
    for (const auto& [b, e] : finite) s += static_cast<double>(e) * detail::log_abs(b);
    return s;
  }

  friend bool operator==(const HeightPlaces& a, const HeightPlaces& b) {
    return a.archimedean == b.archimedean && a.finite == b.finite;
  }
};

namespace detail {

inline constexpr unsigned small_prime_limit = 1u << 16;

// Splits n over primes below the limit; returns the cofactor.
inline Int small_factor(Int n, std::map<Int, bool>& bases) {
  n = abs(n);
  for (unsigned p = 2; p < small_prime_limit && Int(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    bases[Int(p)] = true;
    while (n % p == 0) n /= p;
  }
  if (n > 1 && n < Int(small_prime_limit) * small_prime_limit) {
    bases[n] = true;
    return 1;
  }
  return n;
}

// Pairwise coprime family generating the same multiplicative monoid.
inline std::vector<Int> coprime_base(std::vector<Int> xs) {
  std::vector<Int> out;
  while (!xs.empty()) {
    Int a = xs.back();
    xs.pop_back();
    if (a == 1) continue;
    bool split = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      Int g = boost::multiprecision::gcd(a, out[i]);
      if (g == 1) continue;
      Int b = out[i];
      out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
      xs.push_back(g);
      xs.push_back(a / g);
      xs.push_back(b / g);
      split = true;
      break;
    }
    if (!split) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Int valuation(Int n, const Int& b) {
  Int v = 0;
  n = abs(n);
  while (n % b == 0) {
    n /= b;
    ++v;
  }
  return v;
}

}  // namespace detail

inline HeightPlaces height_places(const LatticePolytope& k, const std::vector<Rat>& x) {
  if (x.size() != k.dim()) throw ValidationError("height: point dimension mismatch");
  for (const auto& c : x)
    if (c == 0) throw ValidationError("height: zero coordinate");
  HeightPlaces out;

  bool first = true;
  for (const auto& m : k.vertices()) {
    Rat v = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
      Rat base = abs(x[i]);
      long e = static_cast<long>(m[i]);
      if (e < 0) base = Rat(1) / base;
      for (long j = 0; j < (e < 0 ? -e : e); ++j) v *= base;
    }
    if (first || v > out.archimedean) out.archimedean = v;
    first = false;
  }

  std::map<Int, bool> small;
  std::vector<Int> rest;
  for (const auto& c : x) {
    for (const Int& part : {Int(boost::multiprecision::numerator(c)),
                            Int(boost::multiprecision::denominator(c))}) {
      Int co = detail::small_factor(part, small);
      if (co > 1) rest.push_back(co);
    }
  }
  std::vector<Int> bases;
  for (const auto& kv : small) bases.push_back(kv.first);
  for (const auto& b : detail::coprime_base(rest)) bases.push_back(b);

  for (const auto& b : bases) {
    std::vector<Int> v;
    for (const auto& c : x)
      v.push_back(detail::valuation(boost::multiprecision::numerator(c), b) -
                  detail::valuation(boost::multiprecision::denominator(c), b));
    std::optional<Int> lo;
    for (const auto& m : k.vertices()) {
      Int s = 0;
      for (std::size_t i = 0; i < v.size(); ++i) s += m[i] * v[i];
      if (!lo || s < *lo) lo = s;
    }
    if (*lo != 0) out.finite[b] = -*lo;
  }
  return out;
}

// h_∇(x) = Σ_ν log max_{m ∈ ∇∩M} |x^m|_ν for a rational torus point.
inline double canonical_height_point(const LatticePolytope& k, const std::vector<Rat>& x) {
  return height_places(k, x).value();
}

}  // namespace toric

#endif  // TORIC_MAHLER_HEIGHTS_HPP
