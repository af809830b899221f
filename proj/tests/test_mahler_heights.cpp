#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "toric/mahler_heights.hpp"

using namespace toric;
using namespace support;

namespace {

constexpr double kCatalan = 0.91596559417721901505;
// (1/π) D(e^{iπ/3}), a classical constant: 3√3/(4π) L(χ_{-3}, 2).
constexpr double kSmyth = 0.32306594721945051;

LaurentPolynomial random_univariate(std::mt19937_64& rng, int max_degree, int height) {
  std::uniform_int_distribution<int> deg(1, max_degree), coeff(-height, height);
  LaurentPolynomial p(1);
  int n = deg(rng);
  for (int k = 0; k <= n; ++k) p.add_term(mv({k}), Rat(coeff(rng)));
  while (p.terms().empty() || p.terms().rbegin()->first[0] == 0) p.add_term(mv({n}), Rat(1));
  return p;
}

// Im li2 on the unit circle: Σ sin(kθ)/k², summed far enough for 1e-12.
double clausen(double theta) {
  double s = 0;
  for (int k = 2000000; k >= 1; --k) s += std::sin(k * theta) / (static_cast<double>(k) * k);
  return s;
}

}  // namespace

TEST(BlochWigner, Catalan) { EXPECT_NEAR(bloch_wigner({0, 1}), kCatalan, 1e-12); }

TEST(BlochWigner, ClausenOnTheUnitCircle) {
  // For |z| = 1 the log|z| term drops out and D is the Clausen function.
  for (double theta : {0.4, 1.0, std::numbers::pi / 3, 2.5, 3.0})
    EXPECT_NEAR(bloch_wigner(std::polar(1.0, theta)), clausen(theta), 1e-9) << theta;
}

TEST(BlochWigner, Symmetries) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> r(-3, 3);
  for (int t = 0; t < 200; ++t) {
    std::complex<double> z(r(rng), r(rng));
    double d = bloch_wigner(z);
    EXPECT_NEAR(bloch_wigner(std::conj(z)), -d, 1e-12);
    EXPECT_NEAR(bloch_wigner(1.0 / z), -d, 1e-12);
    EXPECT_NEAR(bloch_wigner(1.0 - z), -d, 1e-12);
    EXPECT_LE(std::abs(d), 1.0149416064096536 + 1e-12);
  }
  EXPECT_EQ(bloch_wigner(0.3), 0.0);
  EXPECT_NEAR(bloch_wigner(-2.5), 0.0, 1e-15);
  EXPECT_THROW(bloch_wigner(0.0), ValidationError);
  EXPECT_THROW(bloch_wigner(1.0), ValidationError);
}

TEST(BlochWigner, FiveTermRelation) {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> r(-2, 2);
  for (int t = 0; t < 50; ++t) {
    std::complex<double> x(r(rng), r(rng)), y(r(rng), r(rng));
    double s = bloch_wigner(x) + bloch_wigner(y) + bloch_wigner((1.0 - x) / (1.0 - x * y)) +
               bloch_wigner(1.0 - x * y) + bloch_wigner((1.0 - y) / (1.0 - x * y));
    EXPECT_NEAR(s, 0.0, 1e-10);
  }
}

TEST(LinearForm, Examples) {
  EXPECT_EQ(mahler_linear_form({1, 1}), 0.0);
  EXPECT_NEAR(mahler_linear_form({2, 5}), std::log(5.0), 1e-15);
  EXPECT_NEAR(mahler_trinomial(1, 1, 1), kSmyth, 1e-12);
  EXPECT_NEAR(mahler_trinomial(1, 1, 3), std::log(3.0), 1e-15);
  EXPECT_NEAR(mahler_trinomial(0, 2, 2), std::log(2.0), 1e-15);
  EXPECT_THROW(mahler_linear_form({-1, 1}), ValidationError);
  EXPECT_THROW(mahler_linear_form({0, 0, 0}), ValidationError);
}

TEST(LinearForm, AgreesWithQuadrature) {
  std::mt19937_64 rng(63);
  std::uniform_real_distribution<double> r(0.2, 3);
  for (int t = 0; t < 8; ++t) {
    double a = r(rng), b = r(rng), c = r(rng);
    LaurentPolynomial p(2);
    // Rational approximations of the moduli; the quadrature sees the same values.
    Rat qa(static_cast<long>(a * 1000), 1000), qb(static_cast<long>(b * 1000), 1000), qc(static_cast<long>(c * 1000), 1000);
    p.add_term(mv({0, 0}), qa);
    p.add_term(mv({1, 0}), qb);
    p.add_term(mv({0, 1}), qc);
    MahlerEstimate e = mahler_numeric(p, 16, {1e-7, 0, 1u << 22});
    double closed = mahler_trinomial(static_cast<double>(qa), static_cast<double>(qb), static_cast<double>(qc));
    EXPECT_NEAR(e.value, closed, 1e-4) << a << ' ' << b << ' ' << c;
  }
}

TEST(MahlerNumeric, Examples) {
  EXPECT_NEAR(mahler_numeric(lp({{{0}, 2}}), 8).value, std::log(2.0), 1e-15);
  EXPECT_NEAR(mahler_numeric(lp({{{1}, 1}, {{0}, -2}}), 16).value, std::log(2.0), 1e-6);
  MahlerEstimate e = mahler_numeric(lp({{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}}), 16, {1e-6});
  EXPECT_NEAR(e.value, kSmyth, 1e-3);
  EXPECT_LT(e.error, 1e-6);
  EXPECT_THROW(mahler_numeric(LaurentPolynomial(2), 16), ValidationError);
  EXPECT_THROW(mahler_numeric(lp({{{1}, 1}}), 4), ValidationError);
}

TEST(MahlerNumeric, AgreesWithJensen) {
  std::mt19937_64 rng(64);
  for (int t = 0; t < 30; ++t) {
    LaurentPolynomial p = random_univariate(rng, 6, 9);
    EXPECT_NEAR(mahler_numeric(p, 16, {1e-7, 1u << 18}).value, mahler_univariate_exact(p), 1e-4);
  }
}

TEST(MahlerNumeric, Multiplicative) {
  std::mt19937_64 rng(65);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int t = 0; t < 6; ++t) {
    LaurentPolynomial p(2), q(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        p.add_term(mv({i, j}), Rat(c(rng)));
        q.add_term(mv({i, j}), Rat(c(rng)));
      }
    if (p.is_zero() || q.is_zero()) continue;
    MahlerOptions o{1e-6, 0, 1u << 20};
    MahlerEstimate a = mahler_numeric(p, 16, o), b = mahler_numeric(q, 16, o), ab = mahler_numeric(p * q, 16, o);
    EXPECT_NEAR(ab.value, a.value + b.value, 10 * (a.error + b.error + ab.error) + 1e-5);
  }
}

TEST(MahlerExact, Examples) {
  EXPECT_NEAR(mahler_univariate_exact(lp({{{1}, 1}, {{0}, -2}})), std::log(2.0), 1e-14);
  EXPECT_NEAR(mahler_univariate_exact(lp({{{2}, 1}, {{0}, 1}})), 0.0, 1e-14);
  EXPECT_NEAR(mahler_univariate_exact(lp({{{1}, 3}})), std::log(3.0), 1e-15);
  // Lehmer's polynomial.
  LaurentPolynomial lehmer = lp({{{10}, 1}, {{9}, 1}, {{7}, -1}, {{6}, -1}, {{5}, -1}, {{4}, -1}, {{3}, -1}, {{1}, 1}, {{0}, 1}});
  EXPECT_NEAR(mahler_univariate_exact(lehmer), std::log(1.17628081825991750654), 1e-12);
}

TEST(MahlerMeasure, ClosedFormsMatchQuadrature) {
  // Support on a line: M(1 + x^2 y^2 - 3 x^4 y^4) = M(1 + t - 3 t^2).
  LaurentPolynomial p = lp({{{0, 0}, 1}, {{2, 2}, 1}, {{4, 4}, -3}});
  MahlerEstimate closed = mahler_measure(p);
  EXPECT_EQ(closed.grid, 0u);
  EXPECT_NEAR(closed.value, mahler_univariate_exact(lp({{{0}, 1}, {{1}, 1}, {{2}, -3}})), 1e-12);
  EXPECT_NEAR(closed.value, mahler_numeric(p, 16, {1e-7, 0, 1u << 22}).value, 1e-5);
  // Trinomial with independent exponent differences.
  LaurentPolynomial q = lp({{{1, 0}, 2}, {{0, 1}, 3}, {{-1, -1}, 4}});
  EXPECT_NEAR(mahler_measure(q).value, mahler_trinomial(2, 3, 4), 1e-12);
  EXPECT_NEAR(mahler_measure(q).value, mahler_numeric(q, 16, {1e-7, 0, 1u << 22}).value, 1e-4);
  EXPECT_NEAR(mahler_measure(lp({{{3, -1}, -5}})).value, std::log(5.0), 1e-15);
}

TEST(HeightHypersurface, LineInProjectivePlane) {
  auto f = share(p2());
  TDivisor h = TDivisor::elementary(f, 2);
  LaurentPolynomial s = lp({{{0, 0}, 2}, {{1, 0}, 3}, {{0, 1}, 4}});
  MahlerEstimate e = height_hypersurface({h, h}, s, h);
  EXPECT_NEAR(e.value, mahler_trinomial(2, 3, 4), 1e-12);
  EXPECT_NEAR(height_hypersurface({h, h}, lp({{{1, 0}, 1}}), h).value, 0.0, 1e-15);
  TDivisor zero = TDivisor::zero(f);
  EXPECT_EQ(height_hypersurface({h, zero}, s, h).value, 0.0);
  EXPECT_THROW(height_hypersurface({h, h}, lp({{{2, 0}, 1}}), h), ValidationError);
}

TEST(HeightHypersurface, ScalesWithDegree) {
  auto f = share(p1xp1());
  TDivisor a(f, ints({0, 0, 1, 1}));
  LaurentPolynomial s = lp({{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, -5}});
  double m = mahler_measure(s, {1e-7, 0, 1u << 22}).value;
  EXPECT_NEAR(height_hypersurface({a, a}, s, a, {1e-7, 0, 1u << 22}).value, 2 * m, 1e-9);
}

TEST(Height, Examples) {
  LatticePolytope seg = poly({{0}, {1}});
  EXPECT_NEAR(canonical_height_point(seg, {Rat(2)}), std::log(2.0), 1e-15);
  EXPECT_NEAR(canonical_height_point(seg, {Rat(1, 2)}), std::log(2.0), 1e-15);
  EXPECT_EQ(canonical_height_point(poly({{0, 0}, {3, 1}, {1, 4}}), {Rat(1), Rat(1)}), 0.0);
  EXPECT_NEAR(canonical_height_point(poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), {Rat(2), Rat(3)}), std::log(6.0), 1e-15);
  EXPECT_THROW(canonical_height_point(seg, {Rat(0)}), ValidationError);
}

TEST(Height, AgreesWithLatticePointOracle) {
  std::mt19937_64 rng(66);
  std::uniform_int_distribution<long> num(-60, 60), den(1, 40);
  for (int t = 0; t < 100; ++t) {
    std::size_t d = 1 + t % 3;
    LatticePolytope k = random_polytope(rng, d, -2, 2, 5);
    std::vector<Rat> x;
    for (std::size_t i = 0; i < d; ++i) {
      long n = 0;
      while (n == 0) n = num(rng);
      x.emplace_back(n, den(rng));
    }
    EXPECT_NEAR(canonical_height_point(k, x), oracle::height(lattice_points(k), x), 1e-9);
  }
}

TEST(Height, LargePrimeCofactors) {
  // 2^61 - 1 and 2^89 - 1 are prime and beyond trial division.
  Int p = (Int(1) << 61) - 1, q = (Int(1) << 89) - 1;
  std::vector<Rat> x{Rat(3) / Rat(p * q), Rat(p)};
  HeightPlaces hp = height_places(poly({{0, 0}, {1, 0}, {0, 1}}), x);
  EXPECT_EQ(hp.archimedean, Rat(p));
  EXPECT_EQ(hp.finite.at(p), 1);
  EXPECT_EQ(hp.finite.at(q), 1);
  EXPECT_EQ(hp.finite.count(3), 0u);
  EXPECT_NEAR(hp.value(), 2 * std::log(static_cast<double>(p)) + std::log(static_cast<double>(q)), 1e-9);
}

TEST(Height, MinkowskiSumIsAdditivePerPlace) {
  std::mt19937_64 rng(67);
  std::uniform_int_distribution<long> num(-30, 30), den(1, 30);
  for (int t = 0; t < 50; ++t) {
    std::size_t d = 1 + t % 2;
    LatticePolytope a = random_polytope(rng, d, -2, 3), b = random_polytope(rng, d, -2, 3);
    std::vector<Rat> x;
    for (std::size_t i = 0; i < d; ++i) {
      long n = 0;
      while (n == 0) n = num(rng);
      x.emplace_back(n, den(rng));
    }
    HeightPlaces ha = height_places(a, x), hb = height_places(b, x), hs = height_places(minkowski_sum(a, b), x);
    EXPECT_EQ(hs.archimedean, ha.archimedean * hb.archimedean);
    std::map<Int, Int> sum = ha.finite;
    for (const auto& [p, e] : hb.finite) sum[p] += e;
    std::erase_if(sum, [](const auto& kv) { return kv.second == 0; });
    EXPECT_EQ(hs.finite, sum);
  }
}

TEST(Height, InversionSymmetry) {
  std::mt19937_64 rng(68);
  std::uniform_int_distribution<long> num(1, 50);
  for (int t = 0; t < 50; ++t) {
    LatticePolytope k = random_polytope(rng, 2, -2, 3);
    std::vector<Rat> x{Rat(num(rng), num(rng)), Rat(-num(rng), num(rng))};
    std::vector<Rat> inv{1 / x[0], 1 / x[1]};
    EXPECT_TRUE(height_places(k, x) == height_places(negate(k), inv));
  }
}
