#pragma once

// Finite-dimensional Lie algebras given by structure constants, their
// homomorphisms, and the standard constructions on them.

#include "lie2/exactla.hpp"
#include "lie2/report.hpp"

#include <set>
#include <tuple>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lie2 {

/// Makes labels pairwise distinct by appending primes to repeats.
inline std::vector<std::string> uniquify(std::vector<std::string> names) {
  std::set<std::string> seen;
  for (auto& n : names) {
    while (seen.count(n)) n += "'";
    seen.insert(n);
  }
  return names;
}

/// Lie algebra with basis e_0..e_{n-1} and [e_i, e_j] = sum_k c(i,j,k) e_k.
///
/// Nothing about antisymmetry or the Jacobi identity is enforced on
/// construction; verify_lie_algebra() decides that.
class LieAlgebra {
 public:
  LieAlgebra() = default;

  LieAlgebra(std::vector<std::string> names, std::vector<Scalar> constants)
      : n_(names.size()), names_(std::move(names)), c_(std::move(constants)) {
    if (c_.size() != n_ * n_ * n_) throw DimensionError("structure constants", n_ * n_ * n_, c_.size());
    index();
  }

  /// Builds from the brackets [e_i, e_j] listed for some ordered pairs; the
  /// missing partner of each listed pair is filled in by antisymmetry.
  static LieAlgebra from_brackets(std::vector<std::string> names,
                                  const std::vector<std::tuple<std::size_t, std::size_t, Vector>>& brackets) {
    const std::size_t n = names.size();
    std::vector<Scalar> c(n * n * n);
    std::vector<bool> given(n * n, false);
    for (const auto& [i, j, v] : brackets) {
      if (i >= n || j >= n) throw std::out_of_range("bracket index out of range");
      if (v.size() != n) throw DimensionError("bracket value", n, v.size());
      given[i * n + j] = true;
      for (std::size_t k = 0; k < n; ++k) c[(i * n + j) * n + k] = v[k];
    }
    for (const auto& [i, j, v] : brackets) {
      if (given[j * n + i]) continue;
      for (std::size_t k = 0; k < n; ++k) c[(j * n + i) * n + k] = -v[k];
    }
    return LieAlgebra(std::move(names), std::move(c));
  }

  static LieAlgebra abelian(std::vector<std::string> names) {
    const std::size_t n = names.size();
    return LieAlgebra(std::move(names), std::vector<Scalar>(n * n * n));
  }

  std::size_t dim() const noexcept { return n_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }

  const Scalar& constant(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }
  const std::vector<Scalar>& constants() const noexcept { return c_; }

  Vector bracket_basis(std::size_t i, std::size_t j) const {
    Vector v = zero_vector(n_);
    for (const auto& [k, c] : sparse_[i * n_ + j]) v[k] = c;
    return v;
  }

  Vector bracket(const Vector& x, const Vector& y) const {
    if (x.size() != n_) throw DimensionError("bracket left operand", n_, x.size());
    if (y.size() != n_) throw DimensionError("bracket right operand", n_, y.size());
    Vector r = zero_vector(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (is_zero(x[i])) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (is_zero(y[j])) continue;
        const auto& entries = sparse_[i * n_ + j];
        if (entries.empty()) continue;
        Scalar xy = x[i] * y[j];
        for (const auto& [k, c] : entries) r[k] += xy * c;
      }
    }
    return r;
  }

  /// Matrix of ad(x) = [x, -].
  Matrix ad(const Vector& x) const {
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < n_; ++j) cols.push_back(bracket(x, unit_vector(n_, j)));
    return Matrix::from_columns(cols, n_);
  }

  bool is_abelian() const { return is_zero(c_); }

 private:
  void index() {
    sparse_.assign(n_ * n_, {});
    for (std::size_t ij = 0; ij < n_ * n_; ++ij)
      for (std::size_t k = 0; k < n_; ++k)
        if (!is_zero(c_[ij * n_ + k])) sparse_[ij].emplace_back(k, c_[ij * n_ + k]);
  }

  std::size_t n_ = 0;
  std::vector<std::string> names_;
  std::vector<Scalar> c_;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> sparse_;
};

/// Same dimension and structure constants; basis labels are ignored.
inline bool same_structure(const LieAlgebra& a, const LieAlgebra& b) {
  return a.dim() == b.dim() && a.constants() == b.constants();
}

/// A linear map between Lie algebras, given by its matrix
/// (target.dim() rows, source.dim() columns).
struct LieHom {
  LieAlgebra source;
  LieAlgebra target;
  Matrix matrix;

  LieHom() = default;
  LieHom(LieAlgebra src, LieAlgebra tgt, Matrix m)
      : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
    if (matrix.rows() != target.dim()) throw DimensionError("hom matrix rows vs target dimension", target.dim(), matrix.rows());
    if (matrix.cols() != source.dim()) throw DimensionError("hom matrix columns vs source dimension", source.dim(), matrix.cols());
  }

  static LieHom identity(const LieAlgebra& l) { return {l, l, Matrix::identity(l.dim())}; }
  static LieHom zero(const LieAlgebra& s, const LieAlgebra& t) { return {s, t, Matrix(t.dim(), s.dim())}; }

  Vector operator()(const Vector& x) const { return matrix.apply(x); }
};

/// g after f.
inline LieHom compose(const LieHom& g, const LieHom& f) {
  if (!same_structure(f.target, g.source)) throw DimensionError("composition of homs: middle algebra", f.target.dim(), g.source.dim());
  return {f.source, g.target, g.matrix * f.matrix};
}

inline std::string format_element(const LieAlgebra& l, const Vector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (is_zero(v[i])) continue;
    std::string coeff = format_scalar(v[i]);
    if (!out.empty()) out += sgn(v[i]) < 0 ? " - " : " + ";
    else if (sgn(v[i]) < 0) out += "-";
    if (sgn(v[i]) < 0) coeff = format_scalar(-v[i]);
    if (coeff != "1") out += coeff + "*";
    out += i < l.dim() ? l.name(i) : "e" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

/// Checks antisymmetry and the Jacobi identity on all basis pairs and triples.
inline Report verify_lie_algebra(const LieAlgebra& l, std::string subject = "lie_algebra") {
  Report report;
  report.subject = std::move(subject);
  const std::size_t n = l.dim();
  report.derived["dim"] = n;

  std::string anti;
  for (std::size_t i = 0; i < n && anti.empty(); ++i)
    for (std::size_t j = i; j < n && anti.empty(); ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (l.constant(i, j, k) != -l.constant(j, i, k)) {
          anti = "[" + l.name(i) + "," + l.name(j) + "] = " + format_element(l, l.bracket_basis(i, j)) +
                 " but [" + l.name(j) + "," + l.name(i) + "] = " + format_element(l, l.bracket_basis(j, i));
          break;
        }
  report.add("antisymmetry", anti.empty(), anti);

  std::string jacobi;
  for (std::size_t i = 0; i < n && jacobi.empty(); ++i)
    for (std::size_t j = i + 1; j < n && jacobi.empty(); ++j)
      for (std::size_t k = j + 1; k < n && jacobi.empty(); ++k) {
        Vector ei = unit_vector(n, i), ej = unit_vector(n, j), ek = unit_vector(n, k);
        Vector sum = l.bracket(l.bracket(ei, ej), ek) + l.bracket(l.bracket(ej, ek), ei) +
                     l.bracket(l.bracket(ek, ei), ej);
        if (!is_zero(sum))
          jacobi = "triple (" + l.name(i) + "," + l.name(j) + "," + l.name(k) + "): cyclic sum = " +
                   format_element(l, sum);
      }
  report.add("Jacobi identity", jacobi.empty(), jacobi);
  return report;
}

/// Checks f[e_i, e_j] = [f e_i, f e_j] on all basis pairs.
inline Report verify_hom(const LieHom& f, std::string subject = "lie_hom") {
  if (f.matrix.rows() != f.target.dim() || f.matrix.cols() != f.source.dim())
    throw DimensionError("hom matrix shape", f.target.dim() * f.source.dim(), f.matrix.rows() * f.matrix.cols());
  Report report;
  report.subject = std::move(subject);
  const std::size_t n = f.source.dim();
  std::vector<Vector> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(f.matrix.column(i));
  std::string detail;
  for (std::size_t i = 0; i < n && detail.empty(); ++i)
    for (std::size_t j = i; j < n; ++j) {
      Vector lhs = f(f.source.bracket_basis(i, j));
      Vector rhs = f.target.bracket(images[i], images[j]);
      if (lhs != rhs) {
        detail = "f[" + f.source.name(i) + "," + f.source.name(j) + "] = " + format_element(f.target, lhs) +
                 " but [f " + f.source.name(i) + ", f " + f.source.name(j) + "] = " + format_element(f.target, rhs);
        break;
      }
    }
  report.add("bracket preservation", detail.empty(), detail);
  return report;
}

inline bool is_hom(const LieHom& f) { return verify_hom(f).passed(); }

/// Row-major flattening of a square matrix, and its inverse.
inline Vector flatten(const Matrix& m) {
  Vector v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

inline Matrix unflatten(const Vector& v, std::size_t n) {
  if (v.size() != n * n) throw DimensionError("endomorphism entries", n * n, v.size());
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = v[r * n + c];
  return m;
}

inline bool is_derivation(const LieAlgebra& l, const Matrix& d) {
  const std::size_t n = l.dim();
  if (d.rows() != n || d.cols() != n) throw DimensionError("derivation shape", n, d.rows());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector lhs = d.apply(l.bracket_basis(i, j));
      Vector rhs = l.bracket(d.column(i), unit_vector(n, j)) + l.bracket(unit_vector(n, i), d.column(j));
      if (lhs != rhs) return false;
    }
  return true;
}

/// The derivations of `l` as a subspace of End(l) ~ Q^{n*n}, coordinates
/// being the row-major matrix entries.
inline Subspace derivation_space(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  // Unknown M(a,b) sits at column a*n+b. One row per (i, j, k) with i < j:
  // (M[e_i,e_j])_k - ([M e_i, e_j])_k - ([e_i, M e_j])_k = 0.
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vector row = zero_vector(n * n);
        for (std::size_t m = 0; m < n; ++m) row[k * n + m] += l.constant(i, j, m);
        for (std::size_t a = 0; a < n; ++a) {
          row[a * n + i] -= l.constant(a, j, k);
          row[a * n + j] -= l.constant(i, a, k);
        }
        if (!is_zero(row)) rows.push_back(std::move(row));
      }
  Subspace der = rows.empty() ? Subspace::full(n * n) : kernel(Matrix::from_rows(rows, n * n));

  std::vector<Matrix> basis;
  for (const auto& v : der.basis()) basis.push_back(unflatten(v, n));
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a + 1; b < basis.size(); ++b)
      if (!der.contains(flatten(basis[a] * basis[b] - basis[b] * basis[a])))
        throw std::logic_error("derivation space not closed under commutator");
  return der;
}

/// Adjoint representation as a list of matrices ad(e_j).
inline std::vector<Matrix> adjoint_action(const LieAlgebra& l) {
  std::vector<Matrix> out;
  for (std::size_t j = 0; j < l.dim(); ++j) out.push_back(l.ad(unit_vector(l.dim(), j)));
  return out;
}

/// {x : [x, e_i] = 0 for all i}.
inline Subspace center(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  Matrix m(n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t a = 0; a < n; ++a) m(i * n + k, a) = l.constant(a, i, k);
  return kernel(m);
}

/// [l, l].
inline Subspace derived_algebra(const LieAlgebra& l) {
  std::vector<Vector> vs;
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = i + 1; j < l.dim(); ++j) vs.push_back(l.bracket_basis(i, j));
  return Subspace::span(l.dim(), vs);
}

class NotClosedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotAnIdealError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Lie algebra realised as a subspace of an ambient algebra, with its basis
/// the echelon basis of the subspace.
struct EmbeddedAlgebra {
  LieAlgebra algebra;
  Subspace space;

  Matrix inclusion() const { return space.inclusion(); }
  Vector embed(const Vector& coords) const { return space.inclusion().apply(coords); }

  Vector coordinates(const Vector& ambient) const {
    auto c = space.coordinates(ambient);
    if (!c) throw std::domain_error("vector " + format_vector(ambient) + " lies outside the subalgebra");
    return *c;
  }
};

inline std::vector<std::string> subspace_names(const Subspace& s, const std::vector<std::string>& ambient_names,
                                               const std::string& fallback) {
  std::vector<std::string> names;
  for (std::size_t r = 0; r < s.dim(); ++r) {
    Vector v = s.basis_vector(r);
    bool unit = true;
    for (std::size_t c = 0; c < v.size() && unit; ++c)
      if (c != s.pivots()[r] && !is_zero(v[c])) unit = false;
    names.push_back(unit && s.pivots()[r] < ambient_names.size() ? ambient_names[s.pivots()[r]]
                                                                 : fallback + std::to_string(r + 1));
  }
  return uniquify(std::move(names));
}

/// The subspace `s` with the bracket of `l`; throws NotClosedError if some
/// bracket of basis vectors leaves `s`.
inline EmbeddedAlgebra subalgebra(const LieAlgebra& l, const Subspace& s, const std::string& fallback_name = "b") {
  if (s.ambient_dim() != l.dim()) throw DimensionError("subalgebra ambient", l.dim(), s.ambient_dim());
  const std::size_t d = s.dim();
  std::vector<Vector> basis = s.basis();
  std::vector<Scalar> c(d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vector br = l.bracket(basis[i], basis[j]);
      auto coords = s.coordinates(br);
      if (!coords)
        throw NotClosedError("subspace not closed under bracket: [" + format_vector(basis[i]) + ", " +
                             format_vector(basis[j]) + "] = " + format_vector(br));
      for (std::size_t k = 0; k < d; ++k) c[(i * d + j) * d + k] = (*coords)[k];
    }
  return {LieAlgebra(subspace_names(s, l.names(), fallback_name), std::move(c)), s};
}

/// A (+) B with componentwise bracket.
inline LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  const std::size_t n = a.dim() + b.dim();
  std::vector<std::string> names = a.names();
  names.insert(names.end(), b.names().begin(), b.names().end());
  std::vector<Scalar> c(n * n * n);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < a.dim(); ++k) c[(i * n + j) * n + k] = a.constant(i, j, k);
  const std::size_t o = a.dim();
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      for (std::size_t k = 0; k < b.dim(); ++k) c[((o + i) * n + o + j) * n + o + k] = b.constant(i, j, k);
  return LieAlgebra(uniquify(std::move(names)), std::move(c));
}

/// Fiber product of f: A -> C and g: B -> C inside A (+) B.
struct FiberProduct {
  EmbeddedAlgebra sub;
  LieAlgebra left;
  LieAlgebra right;
  LieHom pr_left;
  LieHom pr_right;

  const LieAlgebra& algebra() const { return sub.algebra; }
  std::size_t dim() const { return sub.algebra.dim(); }

  Vector left_part(const Vector& coords) const { return slice(sub.embed(coords), 0, left.dim()); }
  Vector right_part(const Vector& coords) const { return slice(sub.embed(coords), left.dim(), right.dim()); }

  /// Coordinates of the pair (a, b); throws if f(a) != g(b).
  Vector coordinates(const Vector& a, const Vector& b) const { return sub.coordinates(concat(a, b)); }
};

/// Vector-space pullback of two linear maps with the componentwise bracket.
/// Only the matrices and the two source algebras matter.
inline FiberProduct fiber_product(const LieAlgebra& a, const Matrix& f, const LieAlgebra& b, const Matrix& g,
                                  const std::string& fallback_name = "p") {
  if (f.cols() != a.dim()) throw DimensionError("fiber product: left map columns", a.dim(), f.cols());
  if (g.cols() != b.dim()) throw DimensionError("fiber product: right map columns", b.dim(), g.cols());
  if (f.rows() != g.rows()) throw DimensionError("fiber product: shared codomain", f.rows(), g.rows());
  LieAlgebra sum = direct_sum(a, b);
  EmbeddedAlgebra sub = subalgebra(sum, pullback_space(f, g), fallback_name);
  Matrix inc = sub.inclusion();
  LieHom pl(sub.algebra, a, inc.block(0, 0, a.dim(), inc.cols()));
  LieHom pr(sub.algebra, b, inc.block(a.dim(), 0, b.dim(), inc.cols()));
  return {std::move(sub), a, b, std::move(pl), std::move(pr)};
}

inline FiberProduct lie_fiber_product(const LieHom& f, const LieHom& g) {
  if (!same_structure(f.target, g.target)) throw DimensionError("fiber product: target mismatch", f.target.dim(), g.target.dim());
  return fiber_product(f.source, f.matrix, g.source, g.matrix);
}

struct LieQuotient {
  LieAlgebra algebra;
  LieHom projection;
  Matrix section;  // ambient x quotient, the chosen complement
};

inline void require_ideal(const LieAlgebra& l, const Subspace& ideal) {
  if (ideal.ambient_dim() != l.dim()) throw DimensionError("ideal ambient", l.dim(), ideal.ambient_dim());
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t r = 0; r < ideal.dim(); ++r) {
      Vector w = ideal.basis_vector(r);
      Vector br = l.bracket(unit_vector(l.dim(), i), w);
      if (!ideal.contains(br))
        throw NotAnIdealError("not an ideal: [" + l.name(i) + ", " + format_element(l, w) + "] = " +
                              format_element(l, br) + " lies outside");
    }
}

/// l / ideal, using the pivot-complement of the ideal's echelon basis.
inline LieQuotient lie_quotient(const LieAlgebra& l, const Subspace& ideal) {
  require_ideal(l, ideal);
  Quotient q = quotient(l.dim(), ideal);
  const std::size_t d = q.dim;
  std::vector<std::string> names;
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t c = 0; c < l.dim(); ++c)
      if (q.section(c, k) == 1) names.push_back(l.name(c));
  std::vector<Scalar> c(d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vector br = q.projection.apply(l.bracket(q.section.column(i), q.section.column(j)));
      for (std::size_t k = 0; k < d; ++k) c[(i * d + j) * d + k] = br[k];
    }
  LieAlgebra quot(std::move(names), std::move(c));
  LieHom proj(l, quot, q.projection);
  return {std::move(quot), std::move(proj), std::move(q.section)};
}

/// Transports the structure of `l` to the basis given by the columns of the
/// invertible matrix `basis` (expressed in the old basis).
inline LieAlgebra change_basis(const LieAlgebra& l, const Matrix& basis, std::vector<std::string> names = {}) {
  const std::size_t n = l.dim();
  if (basis.rows() != n || basis.cols() != n) throw DimensionError("change of basis", n, basis.rows());
  Matrix inv = inverse(basis);
  std::vector<Scalar> c(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector br = inv.apply(l.bracket(basis.column(i), basis.column(j)));
      for (std::size_t k = 0; k < n; ++k) c[(i * n + j) * n + k] = br[k];
    }
  if (names.empty()) names = l.names();
  return LieAlgebra(std::move(names), std::move(c));
}

/// Linear Lie algebra spanned by the given square matrices (which must be
/// linearly independent and closed under the commutator).
inline LieAlgebra matrix_lie_algebra(std::vector<std::string> names, const std::vector<Matrix>& gens) {
  const std::size_t d = gens.size();
  if (names.size() != d) throw DimensionError("matrix algebra names", d, names.size());
  if (d == 0) return LieAlgebra::abelian({});
  const std::size_t k = gens[0].rows();
  std::vector<Vector> cols;
  for (const auto& g : gens) cols.push_back(flatten(g));
  Matrix span = Matrix::from_columns(cols, k * k);
  if (!is_injective(span)) throw std::invalid_argument("matrix generators are linearly dependent");
  std::vector<Scalar> c(d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto sol = solve(span, flatten(gens[i] * gens[j] - gens[j] * gens[i]));
      if (!sol) throw NotClosedError("matrix span not closed under commutator");
      for (std::size_t m = 0; m < d; ++m) c[(i * d + j) * d + m] = sol->particular[m];
    }
  return LieAlgebra(std::move(names), std::move(c));
}

namespace fixtures {

/// Heisenberg algebra: [X, Y] = Z.
inline LieAlgebra heis3() { return LieAlgebra::from_brackets({"X", "Y", "Z"}, {{0, 1, {0, 0, 1}}}); }

/// Abelian R^2 with basis E1, E2.
inline LieAlgebra ab2() { return LieAlgebra::abelian({"E1", "E2"}); }

/// sl2: [H,E] = 2E, [H,F] = -2F, [E,F] = H.
inline LieAlgebra sl2() {
  return LieAlgebra::from_brackets({"H", "E", "F"}, {{0, 1, {0, 2, 0}}, {0, 2, {0, 0, -2}}, {1, 2, {1, 0, 0}}});
}

/// The 2n+1 dimensional Heisenberg algebra: [X_i, Y_i] = Z.
inline LieAlgebra heisenberg(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("X" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) names.push_back("Y" + std::to_string(i));
  names.push_back("Z");
  std::vector<std::tuple<std::size_t, std::size_t, Vector>> br;
  for (std::size_t i = 0; i < n; ++i) br.emplace_back(i, n + i, unit_vector(2 * n + 1, 2 * n));
  return LieAlgebra::from_brackets(std::move(names), br);
}

inline LieAlgebra abelian(std::size_t n, const std::string& prefix = "E") {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(prefix + std::to_string(i));
  return LieAlgebra::abelian(std::move(names));
}

/// Upper triangular k x k matrices.
inline LieAlgebra borel(std::size_t k) {
  std::vector<std::string> names;
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      Matrix m(k, k);
      m(i, j) = 1;
      gens.push_back(m);
      names.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  return matrix_lie_algebra(std::move(names), gens);
}

/// Strictly upper triangular k x k matrices.
inline LieAlgebra nilpotent_upper(std::size_t k) {
  std::vector<std::string> names;
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      Matrix m(k, k);
      m(i, j) = 1;
      gens.push_back(m);
      names.push_back("n" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  return matrix_lie_algebra(std::move(names), gens);
}

/// sl2 with the bracket [E,F] = E; violates the Jacobi identity.
inline LieAlgebra corrupted_sl2() {
  return LieAlgebra::from_brackets({"H", "E", "F"}, {{0, 1, {0, 2, 0}}, {0, 2, {0, 0, -2}}, {1, 2, {0, 1, 0}}});
}

}  // namespace fixtures
}  // namespace lie2
