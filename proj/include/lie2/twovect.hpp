#pragma once

// 2-vector spaces as 2-term complexes d: U -> W, with morphisms written as
// action-groupoid pairs (u, v): v -> v + d(u).

#include "lie2/exactla.hpp"
#include "lie2/report.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lie2 {

struct TwoTermComplex {
  std::size_t u_dim = 0;
  std::size_t w_dim = 0;
  Matrix del;  // w_dim x u_dim

  TwoTermComplex() = default;
  TwoTermComplex(std::size_t u, std::size_t w, Matrix d) : u_dim(u), w_dim(w), del(std::move(d)) {
    if (del.rows() != w_dim) throw DimensionError("boundary rows vs W", w_dim, del.rows());
    if (del.cols() != u_dim) throw DimensionError("boundary columns vs U", u_dim, del.cols());
  }
};

/// The arrow v -> v + d(u).
struct Cell {
  Vector u;
  Vector v;

  friend bool operator==(const Cell&, const Cell&) = default;
};

inline std::string format_cell(const Cell& c) { return "(" + format_vector(c.u) + ", " + format_vector(c.v) + ")"; }

inline Vector cell_source(const TwoTermComplex&, const Cell& c) { return c.v; }
inline Vector cell_target(const TwoTermComplex& cx, const Cell& c) { return c.v + cx.del.apply(c.u); }

inline Cell identity_cell(const TwoTermComplex& cx, const Vector& v) { return {zero_vector(cx.u_dim), v}; }

class NotComposableError : public std::invalid_argument {
 public:
  NotComposableError(const Vector& source_of_second, const Vector& target_of_first)
      : std::invalid_argument("cells not composable: source " + format_vector(source_of_second) +
                              " of the outer cell differs from target " + format_vector(target_of_first) +
                              " of the inner cell"),
        source_(source_of_second),
        target_(target_of_first) {}

  const Vector& outer_source() const noexcept { return source_; }
  const Vector& inner_target() const noexcept { return target_; }

 private:
  Vector source_, target_;
};

inline void check_cell(const TwoTermComplex& cx, const Cell& c) {
  if (c.u.size() != cx.u_dim) throw DimensionError("cell u component", cx.u_dim, c.u.size());
  if (c.v.size() != cx.w_dim) throw DimensionError("cell v component", cx.w_dim, c.v.size());
}

/// c2 after c1: (u', v + d u)(u, v) = (u' + u, v).
inline Cell compose_cells(const TwoTermComplex& cx, const Cell& c2, const Cell& c1) {
  check_cell(cx, c2);
  check_cell(cx, c1);
  Vector t1 = cell_target(cx, c1);
  if (c2.v != t1) throw NotComposableError(c2.v, t1);
  return {c2.u + c1.u, c1.v};
}

/// (u, v)^-1 = (-u, v + d u).
inline Cell invert_cell(const TwoTermComplex& cx, const Cell& c) {
  check_cell(cx, c);
  return {-c.u, cell_target(cx, c)};
}

/// Result of turning a linear category {V1 => V0} into a 2-term complex.
struct ComplexFromCategory {
  TwoTermComplex complex;
  Subspace kernel_of_source;  // U = ker s inside V1
  Matrix iso;                 // V1 -> U (+) V0, w |-> (w - 1_{s w}, s w) in ker-s coordinates
  Matrix iso_inverse;         // (u, v) |-> u + 1_v
};

class UnitSectionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// d = t restricted to ker s, with the identification V1 ~ ker s (+) V0.
inline ComplexFromCategory complex_from_category(std::size_t v1_dim, std::size_t v0_dim, const Matrix& s,
                                                 const Matrix& t, const Matrix& unit) {
  if (s.rows() != v0_dim || s.cols() != v1_dim) throw DimensionError("source map shape", v0_dim * v1_dim, s.rows() * s.cols());
  if (t.rows() != v0_dim || t.cols() != v1_dim) throw DimensionError("target map shape", v0_dim * v1_dim, t.rows() * t.cols());
  if (unit.rows() != v1_dim || unit.cols() != v0_dim) throw DimensionError("unit map shape", v0_dim * v1_dim, unit.rows() * unit.cols());
  if (!(s * unit == Matrix::identity(v0_dim))) throw UnitSectionError("unit is not a section of the source map");
  if (!(t * unit == Matrix::identity(v0_dim))) throw UnitSectionError("unit is not a section of the target map");

  Subspace ker = kernel(s);
  Matrix inc = ker.inclusion();
  Matrix coords = ker.coordinate_map();
  TwoTermComplex cx(ker.dim(), v0_dim, t * inc);

  Matrix iso(ker.dim() + v0_dim, v1_dim);
  iso.place(0, 0, coords * (Matrix::identity(v1_dim) - unit * s));
  iso.place(ker.dim(), 0, s);
  Matrix back = Matrix::hstack(inc, unit);
  if (!is_bijective(iso) || !(back * iso == Matrix::identity(v1_dim)))
    throw std::logic_error("category-to-complex map is not bijective");
  return {std::move(cx), std::move(ker), std::move(iso), std::move(back)};
}

/// Composition forced by linearity in a category internal to vector spaces:
/// m(a, b) = a - 1_{s a} + b.
inline Vector linear_category_compose(const Matrix& s, const Matrix& unit, const Vector& a, const Vector& b) {
  return a - unit.apply(s.apply(a)) + b;
}

/// Objects v_1..v_s of W, arrows w_ij = (u_ij, v_j): v_j -> v_i, and
/// weights lambda_k.
struct CocycleData {
  TwoTermComplex complex;
  std::vector<Vector> objects;
  std::vector<std::vector<Vector>> morphisms;  // morphisms[i][j] = u_ij
  std::vector<Scalar> weights;

  std::size_t size() const { return objects.size(); }
  Cell arrow(std::size_t i, std::size_t j) const { return {morphisms[i][j], objects[j]}; }
};

namespace cocycle_checks {
inline constexpr const char* identity = "w_ii = 1";
inline constexpr const char* inverse = "w_ji = w_ij^-1";
inline constexpr const char* cocycle = "w_ij w_jk = w_ik";
inline constexpr const char* boundary = "d(u_ij) = v_i - v_j";
inline constexpr const char* weights = "sum of weights = 1";
}  // namespace cocycle_checks

inline void check_shape(const CocycleData& d) {
  const std::size_t s = d.size();
  if (d.morphisms.size() != s) throw DimensionError("cocycle morphism rows", s, d.morphisms.size());
  if (d.weights.size() != s) throw DimensionError("cocycle weights", s, d.weights.size());
  for (const auto& v : d.objects)
    if (v.size() != d.complex.w_dim) throw DimensionError("cocycle object", d.complex.w_dim, v.size());
  for (const auto& row : d.morphisms) {
    if (row.size() != s) throw DimensionError("cocycle morphism columns", s, row.size());
    for (const auto& u : row)
      if (u.size() != d.complex.u_dim) throw DimensionError("cocycle morphism vector", d.complex.u_dim, u.size());
  }
}

/// Checks the three cocycle conditions in (u, v) form, the boundary
/// condition and that the weights sum to one. Weights outside [0, 1] are
/// accepted and flagged in `derived`.
inline Report verify_cocycle(const CocycleData& d, std::string subject = "cocycle") {
  check_shape(d);
  Report report;
  report.subject = std::move(subject);
  const std::size_t s = d.size();
  auto idx = [](std::size_t i) { return std::to_string(i + 1); };

  std::string detail;
  for (std::size_t i = 0; i < s && detail.empty(); ++i)
    if (!is_zero(d.morphisms[i][i])) detail = "u_" + idx(i) + idx(i) + " = " + format_vector(d.morphisms[i][i]);
  report.add(cocycle_checks::identity, detail.empty(), detail);

  detail.clear();
  for (std::size_t i = 0; i < s && detail.empty(); ++i)
    for (std::size_t j = 0; j < s && detail.empty(); ++j)
      if (d.morphisms[j][i] != -d.morphisms[i][j])
        detail = "u_" + idx(j) + idx(i) + " = " + format_vector(d.morphisms[j][i]) + " but u_" + idx(i) + idx(j) +
                 " = " + format_vector(d.morphisms[i][j]);
  report.add(cocycle_checks::inverse, detail.empty(), detail);

  detail.clear();
  for (std::size_t i = 0; i < s && detail.empty(); ++i)
    for (std::size_t j = 0; j < s && detail.empty(); ++j)
      for (std::size_t k = 0; k < s && detail.empty(); ++k)
        if (d.morphisms[i][k] - d.morphisms[j][k] != d.morphisms[i][j])
          detail = "u_" + idx(i) + idx(k) + " - u_" + idx(j) + idx(k) + " != u_" + idx(i) + idx(j);
  report.add(cocycle_checks::cocycle, detail.empty(), detail);

  detail.clear();
  for (std::size_t i = 0; i < s && detail.empty(); ++i)
    for (std::size_t j = 0; j < s && detail.empty(); ++j)
      if (d.complex.del.apply(d.morphisms[i][j]) != d.objects[i] - d.objects[j])
        detail = "d(u_" + idx(i) + idx(j) + ") = " + format_vector(d.complex.del.apply(d.morphisms[i][j])) +
                 " but v_" + idx(i) + " - v_" + idx(j) + " = " + format_vector(d.objects[i] - d.objects[j]);
  report.add(cocycle_checks::boundary, detail.empty(), detail);

  Scalar total = 0;
  bool in_unit_interval = true;
  for (const auto& w : d.weights) {
    total += w;
    if (sgn(w) < 0 || w > 1) in_unit_interval = false;
  }
  report.add(cocycle_checks::weights, total == 1, total == 1 ? "" : "weights sum to " + format_scalar(total));
  report.derived["objects"] = s;
  report.derived["weights_in_unit_interval"] = in_unit_interval;
  return report;
}

class CocycleError : public std::invalid_argument {
 public:
  CocycleError(std::string condition, const std::string& detail)
      : std::invalid_argument("invalid cocycle: " + condition + (detail.empty() ? "" : " (" + detail + ")")),
        condition_(std::move(condition)) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

/// Cells z_i: sum_k lambda_k v_k -> v_i with w_ij = z_i z_j^-1, namely
/// z_i = (sum_k lambda_k u_ik, sum_k lambda_k v_k).
inline std::vector<Cell> resolve_cocycle(const CocycleData& d) {
  Report report = verify_cocycle(d);
  if (const Check* bad = report.first_failure()) throw CocycleError(bad->id, bad->detail);
  const std::size_t s = d.size();
  Vector base = zero_vector(d.complex.w_dim);
  for (std::size_t k = 0; k < s; ++k) base = base + d.weights[k] * d.objects[k];
  std::vector<Cell> z;
  for (std::size_t i = 0; i < s; ++i) {
    Vector u = zero_vector(d.complex.u_dim);
    for (std::size_t k = 0; k < s; ++k) u = u + d.weights[k] * d.morphisms[i][k];
    z.push_back({std::move(u), base});
  }
  for (std::size_t i = 0; i < s; ++i) {
    if (cell_target(d.complex, z[i]) != d.objects[i]) throw std::logic_error("resolved cell has wrong target");
    for (std::size_t j = 0; j < s; ++j)
      if (compose_cells(d.complex, z[i], invert_cell(d.complex, z[j])) != d.arrow(i, j))
        throw std::logic_error("resolved cells do not reproduce the cocycle");
  }
  return z;
}

}  // namespace lie2
