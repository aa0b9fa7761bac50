#pragma once

// Exact linear algebra over the rationals.
//
// Every value here is immutable once built and every routine is a pure
// function, so results may be shared freely between threads.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lie2 {

using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

/// Raised when operands have incompatible shapes. The message names the
/// offending dimensions.
class DimensionError : public std::invalid_argument {
 public:
  DimensionError(std::string_view what, std::size_t expected, std::size_t actual)
      : std::invalid_argument(std::string(what) + ": expected dimension " +
                              std::to_string(expected) + ", got " + std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

inline bool is_zero(const Scalar& x) { return sgn(x) == 0; }

inline bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return is_zero(x); });
}

/// Parses "p/q" or "p" into a canonical rational. Throws std::invalid_argument.
inline Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return std::invalid_argument("malformed rational '" + s + "'"); };
  if (s.empty()) throw bad();
  std::size_t slash = s.find('/');
  auto digits_ok = [](std::string_view part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

inline std::string format_scalar(const Scalar& x) {
  Scalar c = x;
  c.canonicalize();
  return c.get_str();
}

inline std::string format_vector(const Vector& v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << format_scalar(v[i]);
  out << ')';
  return out.str();
}

inline Vector zero_vector(std::size_t n) { return Vector(n, Scalar(0)); }

inline Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v = zero_vector(n);
  v.at(i) = 1;
  return v;
}

inline Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionError("vector sum", a.size(), b.size());
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionError("vector difference", a.size(), b.size());
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vector operator-(const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline Vector operator*(const Scalar& c, const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline Vector concat(const Vector& a, const Vector& b) {
  Vector r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline Vector slice(const Vector& v, std::size_t offset, std::size_t count) {
  if (offset + count > v.size()) throw DimensionError("vector slice", offset + count, v.size());
  return Vector(v.begin() + static_cast<std::ptrdiff_t>(offset),
                v.begin() + static_cast<std::ptrdiff_t>(offset + count));
}

/// Dense row-major rational matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw DimensionError("matrix row", cols, rows[r].size());
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].size() != rows) throw DimensionError("matrix column", rows, columns[c].size());
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  Vector column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  Vector apply(const Vector& x) const {
    if (x.size() != cols_) throw DimensionError("matrix-vector product", cols_, x.size());
    Vector y = zero_vector(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
      if (lie2::is_zero(x[c])) continue;
      for (std::size_t r = 0; r < rows_; ++r)
        if (!lie2::is_zero((*this)(r, c))) y[r] += (*this)(r, c) * x[c];
    }
    return y;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& x) { return lie2::is_zero(x); });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product", a.cols_, b.rows_);
    Matrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (lie2::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!lie2::is_zero(b(k, j))) p(i, j) += aik * b(k, j);
      }
    return p;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw DimensionError("matrix sum", a.rows_ * a.cols_, b.rows_ * b.cols_);
    Matrix s = a;
    for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] += b.data_[i];
    return s;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw DimensionError("matrix difference", a.rows_ * a.cols_, b.rows_ * b.cols_);
    Matrix s = a;
    for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] -= b.data_[i];
    return s;
  }

  friend Matrix operator*(const Scalar& c, const Matrix& a) {
    Matrix s = a;
    for (auto& x : s.data_) x *= c;
    return s;
  }

  // [A | B]
  static Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw DimensionError("horizontal stack", a.rows_, b.rows_);
    Matrix m(a.rows_, a.cols_ + b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      for (std::size_t c = 0; c < a.cols_; ++c) m(r, c) = a(r, c);
      for (std::size_t c = 0; c < b.cols_; ++c) m(r, a.cols_ + c) = b(r, c);
    }
    return m;
  }

  static Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.cols_) throw DimensionError("vertical stack", a.cols_, b.cols_);
    Matrix m(a.rows_ + b.rows_, a.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t c = 0; c < a.cols_; ++c) m(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows_; ++r)
      for (std::size_t c = 0; c < a.cols_; ++c) m(a.rows_ + r, c) = b(r, c);
    return m;
  }

  /// Copies `block` into this matrix with its top-left corner at (row, col).
  void place(std::size_t row, std::size_t col, const Matrix& block) {
    if (row + block.rows_ > rows_) throw DimensionError("block rows", rows_, row + block.rows_);
    if (col + block.cols_ > cols_) throw DimensionError("block cols", cols_, col + block.cols_);
    for (std::size_t r = 0; r < block.rows_; ++r)
      for (std::size_t c = 0; c < block.cols_; ++c) (*this)(row + r, col + c) = block(r, c);
  }

  Matrix block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const {
    if (row + rows > rows_) throw DimensionError("block rows", rows_, row + rows);
    if (col + cols > cols_) throw DimensionError("block cols", cols_, col + cols);
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = (*this)(row + r, col + c);
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Reduced row echelon form together with its pivot columns. Zero rows are
/// dropped, so `form.rows() == pivots.size()`.
struct Echelon {
  Matrix form;
  std::vector<std::size_t> pivots;
};

inline Echelon rref(Matrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(m(p, c))) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
    Scalar inv = 1 / m(r, c);
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      Scalar f = m(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {m.block(0, 0, r, cols), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// A linear subspace of Q^n, stored as the reduced echelon basis so that two
/// equal subspaces have identical representations.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim = 0) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

  static Subspace span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
    Subspace s(ambient_dim);
    if (vectors.empty()) return s;
    s.set_from(Matrix::from_rows(vectors, ambient_dim));
    return s;
  }

  /// Row space of `rows`.
  static Subspace row_space(const Matrix& rows) {
    Subspace s(rows.cols());
    s.set_from(rows);
    return s;
  }

  static Subspace full(std::size_t ambient_dim) { return row_space(Matrix::identity(ambient_dim)); }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const Matrix& echelon() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  Vector basis_vector(std::size_t i) const { return basis_.row(i); }

  std::vector<Vector> basis() const {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row(i));
    return out;
  }

  /// Basis vectors as the columns of an ambient_dim x dim matrix.
  Matrix inclusion() const { return basis_.transpose(); }

  /// Coordinates of `v` against the echelon basis (the pivot entries), or
  /// nothing when `v` lies outside the subspace.
  std::optional<Vector> coordinates(const Vector& v) const {
    if (v.size() != ambient_) throw DimensionError("subspace coordinates", ambient_, v.size());
    Vector coords(dim());
    Vector rest = v;
    for (std::size_t r = 0; r < dim(); ++r) {
      coords[r] = v[pivots_[r]];
      if (is_zero(coords[r])) continue;
      for (std::size_t c = 0; c < ambient_; ++c)
        if (!is_zero(basis_(r, c))) rest[c] -= coords[r] * basis_(r, c);
    }
    if (!is_zero(rest)) return std::nullopt;
    return coords;
  }

  bool contains(const Vector& v) const { return coordinates(v).has_value(); }

  /// Matrix picking pivot entries: a left inverse of inclusion().
  Matrix coordinate_map() const {
    Matrix m(dim(), ambient_);
    for (std::size_t r = 0; r < dim(); ++r) m(r, pivots_[r]) = 1;
    return m;
  }

  bool contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw DimensionError("subspace containment", ambient_, other.ambient_);
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_vector(i))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  friend Subspace operator+(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_) throw DimensionError("subspace sum", a.ambient_, b.ambient_);
    Subspace s(a.ambient_);
    s.set_from(Matrix::vstack(a.basis_, b.basis_));
    return s;
  }

 private:
  void set_from(const Matrix& rows) {
    Echelon e = rref(rows);
    basis_ = std::move(e.form);
    pivots_ = std::move(e.pivots);
  }

  std::size_t ambient_;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Null space of `a`.
inline Subspace kernel(const Matrix& a) {
  Echelon e = rref(a);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v = zero_vector(n);
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.form(r, free);
    basis.push_back(std::move(v));
  }
  return Subspace::span(n, basis);
}

/// Column space of `a`.
inline Subspace image(const Matrix& a) { return Subspace::row_space(a.transpose()); }

struct KernelImage {
  Subspace kernel;
  Subspace image;
};

inline KernelImage kernel_image(const Matrix& f) { return {kernel(f), image(f)}; }

struct Solution {
  Vector particular;
  Subspace kernel;
};

/// Solves A x = b. Empty when b is outside the column space of A.
inline std::optional<Solution> solve(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) throw DimensionError("solve: rows of A vs length of b", a.rows(), b.size());
  Matrix augmented(a.rows(), a.cols() + 1);
  augmented.place(0, 0, a);
  for (std::size_t r = 0; r < a.rows(); ++r) augmented(r, a.cols()) = b[r];
  Echelon e = rref(augmented);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vector x = zero_vector(a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.form(r, a.cols());
  return Solution{std::move(x), kernel(a)};
}

inline bool is_injective(const Matrix& m) { return rank(m) == m.cols(); }
inline bool is_surjective(const Matrix& m) { return rank(m) == m.rows(); }
inline bool is_bijective(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.cols(); }

/// Inverse of a square invertible matrix; throws std::domain_error otherwise.
inline Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of non-square matrix", m.rows(), m.cols());
  const std::size_t n = m.rows();
  Echelon e = rref(Matrix::hstack(m, Matrix::identity(n)));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1))
    throw std::domain_error("matrix is singular");
  return e.form.block(0, n, n, n);
}

/// {(a, b) in A (+) B : f(a) = g(b)} for f: A -> C and g: B -> C.
inline Subspace pullback_space(const Matrix& f, const Matrix& g) {
  if (f.rows() != g.rows()) throw DimensionError("pullback: codomain of g vs codomain of f", f.rows(), g.rows());
  return kernel(Matrix::hstack(f, Scalar(-1) * g));
}

struct Quotient {
  std::size_t dim;
  Matrix projection;  // dim x ambient
  Matrix section;     // ambient x dim, spans the non-pivot coordinate complement
};

/// Q^n / W. The complement of W is spanned by the standard basis vectors at
/// the non-pivot columns of W's echelon basis.
inline Quotient quotient(std::size_t ambient_dim, const Subspace& w) {
  if (w.ambient_dim() != ambient_dim) throw DimensionError("quotient ambient", ambient_dim, w.ambient_dim());
  std::vector<bool> is_pivot(ambient_dim, false);
  for (auto p : w.pivots()) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < ambient_dim; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix proj(free.size(), ambient_dim);
  Matrix section(ambient_dim, free.size());
  const Matrix& e = w.echelon();
  for (std::size_t k = 0; k < free.size(); ++k) {
    proj(k, free[k]) = 1;
    section(free[k], k) = 1;
    for (std::size_t r = 0; r < w.dim(); ++r) proj(k, w.pivots()[r]) = -e(r, free[k]);
  }
  return {free.size(), std::move(proj), std::move(section)};
}

}  // namespace lie2
