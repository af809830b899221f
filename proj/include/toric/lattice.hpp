#ifndef TORIC_LATTICE_HPP
#define TORIC_LATTICE_HPP

// Exact integer and rational linear algebra over N = Z^d and its dual M.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace toric {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: malformed data or violated preconditions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A numeric goal (tolerance, finiteness) could not be met.
class NumericError : public Error {
 public:
  using Error::Error;
};

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

struct ExtendedGcd {
  Int g, x, y;  // x*a + y*b = g >= 0
};

inline ExtendedGcd extended_gcd(const Int& a, const Int& b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = std::move(r);
    r = std::move(tmp);
    tmp = old_s - q * s;
    old_s = std::move(s);
    s = std::move(tmp);
    tmp = old_t - q * t;
    old_t = std::move(t);
    t = std::move(tmp);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline bool is_integer(const Rat& r) {
  return boost::multiprecision::denominator(r) == 1;
}

inline Int to_int(const Rat& r) {
  if (!is_integer(r)) throw Error("expected an integer, got " + r.str());
  return boost::multiprecision::numerator(r);
}

struct NTag {};
struct MTag {};

// Integer point of a lattice. The tag keeps N and M apart; only `pairing`
// combines the two.
template <typename Tag>
class LatticePoint {
 public:
  LatticePoint() = default;
  explicit LatticePoint(std::size_t d) : coords_(d) {}
  explicit LatticePoint(std::vector<Int> coords) : coords_(std::move(coords)) {}
  LatticePoint(std::initializer_list<long long> coords) {
    coords_.reserve(coords.size());
    for (long long c : coords) coords_.emplace_back(c);
  }

  std::size_t dim() const { return coords_.size(); }
  const Int& operator[](std::size_t i) const { return coords_[i]; }
  Int& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Int>& coords() const { return coords_; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const Int& c) { return c == 0; });
  }

  LatticePoint& operator+=(const LatticePoint& o) {
    check_dim(o);
    for (std::size_t i = 0; i < dim(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  LatticePoint& operator-=(const LatticePoint& o) {
    check_dim(o);
    for (std::size_t i = 0; i < dim(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  LatticePoint& operator*=(const Int& k) {
    for (auto& c : coords_) c *= k;
    return *this;
  }
  friend LatticePoint operator+(LatticePoint a, const LatticePoint& b) { return a += b; }
  friend LatticePoint operator-(LatticePoint a, const LatticePoint& b) { return a -= b; }
  friend LatticePoint operator*(const Int& k, LatticePoint a) { return a *= k; }
  friend LatticePoint operator-(LatticePoint a) {
    for (auto& c : a.coords_) c = -c;
    return a;
  }

  friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
    return a.coords_ == b.coords_;
  }
  friend bool operator!=(const LatticePoint& a, const LatticePoint& b) { return !(a == b); }
  friend bool operator<(const LatticePoint& a, const LatticePoint& b) {
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(),
                                        b.coords_.begin(), b.coords_.end());
  }

  friend std::ostream& operator<<(std::ostream& os, const LatticePoint& p) {
    os << '(';
    for (std::size_t i = 0; i < p.dim(); ++i) os << (i ? "," : "") << p.coords_[i];
    return os << ')';
  }

 private:
  void check_dim(const LatticePoint& o) const {
    if (o.dim() != dim()) throw ValidationError("lattice dimension mismatch");
  }

  std::vector<Int> coords_;
};

using LatticeVector = LatticePoint<NTag>;
using DualVector = LatticePoint<MTag>;

inline Int pairing(const DualVector& m, const LatticeVector& n) {
  if (m.dim() != n.dim()) throw ValidationError("pairing: dimension mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < m.dim(); ++i) s += m[i] * n[i];
  return s;
}

inline Int content(const std::vector<Int>& v) {
  Int g = 0;
  for (const auto& c : v) g = gcd(g, c);
  return g;
}

template <typename Tag>
LatticePoint<Tag> primitive(const LatticePoint<Tag>& v) {
  Int g = content(v.coords());
  if (g == 0) throw ValidationError("primitive: zero vector");
  std::vector<Int> out(v.coords());
  for (auto& c : out) c /= g;
  return LatticePoint<Tag>(std::move(out));
}

template <typename Tag>
bool is_primitive(const LatticePoint<Tag>& v) {
  return content(v.coords()) == 1;
}

// Dense row-major matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ValidationError("matrix rows must have equal length");
      for (long long x : r) data_.emplace_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  template <typename Tag>
  static Matrix from_rows(const std::vector<LatticePoint<Tag>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].dim() != cols) throw ValidationError("matrix: dimension mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = T(rows[i][j]);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw ValidationError("matrix product: shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

// Bareiss fraction-free elimination.
inline Int det(IntMatrix m) {
  if (m.rows() != m.cols()) throw ValidationError("det: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

struct HermiteResult {
  IntMatrix H;  // row Hermite normal form
  IntMatrix U;  // unimodular, U * M == H
  std::size_t rank = 0;
};

// Row-style HNF: H is in echelon form, pivots positive, entries above each
// pivot reduced into [0, pivot).
inline HermiteResult hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  const std::size_t rows = m.rows(), cols = m.cols();

  auto combine = [&](IntMatrix& a, std::size_t r, std::size_t i, const Int& x, const Int& y,
                     const Int& p, const Int& q) {
    // row_r <- x*row_r + y*row_i ; row_i <- p*row_r + q*row_i
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Int nr = x * a(r, j) + y * a(i, j);
      Int ni = p * a(r, j) + q * a(i, j);
      a(r, j) = std::move(nr);
      a(i, j) = std::move(ni);
    }
  };
  auto sub_multiple = [](IntMatrix& a, std::size_t target, std::size_t src, const Int& k) {
    for (std::size_t j = 0; j < a.cols(); ++j) a(target, j) -= k * a(src, j);
  };

  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (h(i, c) == 0) continue;
      if (h(r, c) == 0) {
        h.swap_rows(r, i);
        u.swap_rows(r, i);
        continue;
      }
      Int a = h(r, c), b = h(i, c);
      ExtendedGcd e = extended_gcd(a, b);
      Int p = -b / e.g, q = a / e.g;
      combine(h, r, i, e.x, e.y, p, q);
      combine(u, r, i, e.x, e.y, p, q);
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      for (std::size_t j = 0; j < cols; ++j) h(r, j) = -h(r, j);
      for (std::size_t j = 0; j < rows; ++j) u(r, j) = -u(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int k = floor_div(h(i, c), h(r, c));
      if (k == 0) continue;
      sub_multiple(h, i, r, k);
      sub_multiple(u, i, r, k);
    }
    ++r;
  }
  return {std::move(h), std::move(u), r};
}

// Z-basis of {y in Z^cols : m y = 0}.
inline std::vector<std::vector<Int>> integer_kernel(const IntMatrix& m) {
  HermiteResult hr = hermite_normal_form(m.transpose());
  std::vector<std::vector<Int>> basis;
  for (std::size_t i = hr.rank; i < hr.U.rows(); ++i) basis.push_back(hr.U.row(i));
  return basis;
}

// Is v in the integer span of the rows of `gens`?
inline bool in_span_of_rows(std::vector<Int> v, const IntMatrix& gens) {
  if (gens.rows() > 0 && gens.cols() != v.size())
    throw ValidationError("in_sublattice: dimension mismatch");
  if (gens.rows() == 0)
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
  HermiteResult hr = hermite_normal_form(gens);
  std::size_t col = 0;
  for (std::size_t r = 0; r < hr.rank; ++r) {
    while (hr.H(r, col) == 0) {
      if (v[col] != 0) return false;
      ++col;
    }
    const Int& pivot = hr.H(r, col);
    if (v[col] % pivot != 0) return false;
    Int k = v[col] / pivot;
    for (std::size_t j = col; j < v.size(); ++j) v[j] -= k * hr.H(r, j);
    ++col;
  }
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

template <typename Tag>
bool in_sublattice(const LatticePoint<Tag>& v, const std::vector<LatticePoint<Tag>>& gens) {
  for (const auto& g : gens)
    if (g.dim() != v.dim()) throw ValidationError("in_sublattice: dimension mismatch");
  return in_span_of_rows(v.coords(), IntMatrix::from_rows(gens, v.dim()));
}

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> row_reduce(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    Rat inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rat k = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= k * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(const IntMatrix& m) {
  RatMatrix r = to_rational(m);
  return row_reduce(r).size();
}

template <typename Tag>
std::size_t rank(const std::vector<LatticePoint<Tag>>& vs) {
  if (vs.empty()) return 0;
  return rank(IntMatrix::from_rows(vs, vs.front().dim()));
}

// Coefficients c with sum_i c_i * rows[i] == y, if any. Unique when the rows
// are independent.
inline std::optional<std::vector<Rat>> solve_in_row_span(const IntMatrix& rows,
                                                         const std::vector<Int>& y) {
  const std::size_t k = rows.rows(), d = rows.cols();
  if (y.size() != d) throw ValidationError("solve: dimension mismatch");
  // Columns: unknowns c_0..c_{k-1}, then the right-hand side.
  RatMatrix a(d, k + 1);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < k; ++i) a(j, i) = Rat(rows(i, j));
    a(j, k) = Rat(y[j]);
  }
  std::vector<std::size_t> piv = row_reduce(a);
  if (!piv.empty() && piv.back() == k) return std::nullopt;
  std::vector<Rat> c(k);
  for (std::size_t r = 0; r < piv.size(); ++r) c[piv[r]] = a(r, k);
  return c;
}

template <typename Tag>
std::optional<std::vector<Rat>> solve_in_span(const std::vector<LatticePoint<Tag>>& gens,
                                              const LatticePoint<Tag>& y) {
  return solve_in_row_span(IntMatrix::from_rows(gens, y.dim()), y.coords());
}

// Rational inverse of a square integer matrix; throws if singular.
inline RatMatrix inverse(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw ValidationError("inverse: matrix is not square");
  RatMatrix a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Rat(m(i, j));
    a(i, n + i) = 1;
  }
  if (row_reduce(a).size() != n || (n > 0 && a(n - 1, n - 1) != 1))
    throw ValidationError("inverse: singular matrix");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = a(i, n + j);
  return inv;
}

// Product of the elementary divisors of a full-row-rank integer matrix: the
// index of the row lattice inside its saturation. Equals 1 iff the rows extend
// to a basis of Z^cols.
inline Int lattice_index(const IntMatrix& rows) {
  HermiteResult hr = hermite_normal_form(rows.transpose());
  if (hr.rank != rows.rows()) throw ValidationError("lattice_index: rows are dependent");
  Int idx = 1;
  for (std::size_t i = 0; i < hr.rank; ++i) idx *= hr.H(i, i);
  return abs(idx);
}

// Z-basis of (R-span of rows) ∩ Z^cols.
inline std::vector<std::vector<Int>> saturation_basis(const IntMatrix& rows) {
  auto orth = integer_kernel(rows);
  if (orth.empty()) {
    std::vector<std::vector<Int>> id;
    for (std::size_t i = 0; i < rows.cols(); ++i) {
      std::vector<Int> e(rows.cols());
      e[i] = 1;
      id.push_back(std::move(e));
    }
    return id;
  }
  IntMatrix o(orth.size(), rows.cols());
  for (std::size_t i = 0; i < orth.size(); ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j) o(i, j) = orth[i][j];
  return integer_kernel(o);
}

}  // namespace toric

#endif  // TORIC_LATTICE_HPP
