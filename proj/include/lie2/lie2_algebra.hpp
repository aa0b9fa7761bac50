#pragma once

#include "lie2/crossed_module.hpp"
#include "lie2/twovect.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace lie2 {

/// A category internal to Lie algebras: arrows V1, objects V0.
///
/// `comp` is defined on the composable pairs (g2, g1) with s(g2) = t(g1),
/// realised as the fiber product V1 x_{s,V0,t} V1 inside V1 (+) V1.
struct Lie2Algebra {
  LieAlgebra v1;
  LieAlgebra v0;
  LieHom s;
  LieHom t;
  LieHom unit;
  FiberProduct composable;
  LieHom comp;

  Lie2Algebra() = default;
  Lie2Algebra(LieAlgebra arrows, LieAlgebra objects, Matrix source, Matrix target, Matrix identities,
              Matrix comp_on_pairs)
      : v1(std::move(arrows)),
        v0(std::move(objects)),
        s(v1, v0, std::move(source)),
        t(v1, v0, std::move(target)),
        unit(v0, v1, std::move(identities)),
        composable(fiber_product(v1, s.matrix, v1, t.matrix, "q")),
        comp(composable.algebra(), v1, std::move(comp_on_pairs)) {}

  /// Same, with composition given as a map V1 (+) V1 -> V1 that is only
  /// read on composable pairs.
  static Lie2Algebra from_extension(LieAlgebra arrows, LieAlgebra objects, Matrix source, Matrix target,
                                    Matrix identities, const Matrix& comp_ext) {
    FiberProduct pairs = fiber_product(arrows, source, arrows, target, "q");
    if (comp_ext.rows() != arrows.dim() || comp_ext.cols() != 2 * arrows.dim())
      throw DimensionError("composition matrix columns", 2 * arrows.dim(), comp_ext.cols());
    Matrix restricted = comp_ext * pairs.sub.inclusion();
    return Lie2Algebra(std::move(arrows), std::move(objects), std::move(source), std::move(target),
                       std::move(identities), std::move(restricted));
  }

  /// Composition extended to all of V1 (+) V1 by zero on the pivot complement.
  Matrix composition_extension() const { return comp.matrix * composable.sub.space.coordinate_map(); }

  Vector source(const Vector& g) const { return s(g); }
  Vector target(const Vector& g) const { return t(g); }
  Vector identity(const Vector& y) const { return unit(y); }

  /// g2 after g1; throws std::domain_error when s(g2) != t(g1).
  Vector compose(const Vector& g2, const Vector& g1) const { return comp(composable.coordinates(g2, g1)); }

  /// Inverse arrow, computed as the inverse cell in the 2-term complex model.
  Vector inverse(const Vector& g) const {
    ComplexFromCategory cfc = complex_from_category(v1.dim(), v0.dim(), s.matrix, t.matrix, unit.matrix);
    Vector uv = cfc.iso.apply(g);
    Cell c{slice(uv, 0, cfc.complex.u_dim), slice(uv, cfc.complex.u_dim, v0.dim())};
    Cell inv = invert_cell(cfc.complex, c);
    return cfc.iso_inverse.apply(concat(inv.u, inv.v));
  }
};

inline bool same_lie2(const Lie2Algebra& a, const Lie2Algebra& b) {
  return same_structure(a.v1, b.v1) && same_structure(a.v0, b.v0) && a.s.matrix == b.s.matrix &&
         a.t.matrix == b.t.matrix && a.unit.matrix == b.unit.matrix &&
         a.composition_extension() == b.composition_extension();
}

namespace lie2_checks {
inline constexpr const char* v1_lie = "V1 is a Lie algebra";
inline constexpr const char* v0_lie = "V0 is a Lie algebra";
inline constexpr const char* source_hom = "source is a homomorphism";
inline constexpr const char* target_hom = "target is a homomorphism";
inline constexpr const char* unit_hom = "unit is a homomorphism";
inline constexpr const char* comp_hom = "composition is a homomorphism";
inline constexpr const char* source_unit = "s o unit = id";
inline constexpr const char* target_unit = "t o unit = id";
inline constexpr const char* comp_ends = "source and target of compositions";
inline constexpr const char* unit_law = "unit law";
inline constexpr const char* associativity = "associativity";
}  // namespace lie2_checks

namespace detail {

inline std::string first_failure_text(const Report& r) {
  const Check* c = r.first_failure();
  return c ? c->id + ": " + c->detail : "";
}

/// Triples (g3, g2, g1) with s g3 = t g2 and s g2 = t g1.
inline Subspace composable_triples(const Lie2Algebra& a) {
  const std::size_t n = a.v1.dim(), o = a.v0.dim();
  Matrix m(2 * o, 3 * n);
  m.place(0, 0, a.s.matrix);
  m.place(0, n, Scalar(-1) * a.t.matrix);
  m.place(o, n, a.s.matrix);
  m.place(o, 2 * n, Scalar(-1) * a.t.matrix);
  return kernel(m);
}

}  // namespace detail

inline Report verify_lie2(const Lie2Algebra& a, std::string subject = "lie2_algebra") {
  Report report;
  report.subject = std::move(subject);
  const std::size_t n = a.v1.dim(), o = a.v0.dim();
  report.derived["dim_v1"] = n;
  report.derived["dim_v0"] = o;
  report.derived["dim_composable_pairs"] = a.composable.dim();

  Report r1 = verify_lie_algebra(a.v1), r0 = verify_lie_algebra(a.v0);
  report.add(lie2_checks::v1_lie, r1.passed(), detail::first_failure_text(r1));
  report.add(lie2_checks::v0_lie, r0.passed(), detail::first_failure_text(r0));
  for (auto [id, hom] : {std::pair{lie2_checks::source_hom, &a.s}, std::pair{lie2_checks::target_hom, &a.t},
                         std::pair{lie2_checks::unit_hom, &a.unit}, std::pair{lie2_checks::comp_hom, &a.comp}}) {
    Report rh = verify_hom(*hom);
    report.add(id, rh.passed(), detail::first_failure_text(rh));
  }

  Matrix id0 = Matrix::identity(o);
  Matrix su = a.s.matrix * a.unit.matrix, tu = a.t.matrix * a.unit.matrix;
  report.add(lie2_checks::source_unit, su == id0, su == id0 ? "" : "s(unit(y)) differs from y");
  report.add(lie2_checks::target_unit, tu == id0, tu == id0 ? "" : "t(unit(y)) differs from y");

  // On a composable pair (g2, g1): s(g2 g1) = s g1 and t(g2 g1) = t g2.
  std::string detail;
  for (std::size_t k = 0; k < a.composable.dim() && detail.empty(); ++k) {
    Vector e = unit_vector(a.composable.dim(), k);
    Vector g2 = a.composable.left_part(e), g1 = a.composable.right_part(e);
    Vector c = a.comp(e);
    if (a.s(c) != a.s(g1))
      detail = "s(" + format_element(a.v1, g2) + " o " + format_element(a.v1, g1) + ") = " + format_element(a.v0, a.s(c)) +
               " but s of the first arrow is " + format_element(a.v0, a.s(g1));
    else if (a.t(c) != a.t(g2))
      detail = "t(" + format_element(a.v1, g2) + " o " + format_element(a.v1, g1) + ") = " + format_element(a.v0, a.t(c)) +
               " but t of the second arrow is " + format_element(a.v0, a.t(g2));
  }
  report.add(lie2_checks::comp_ends, detail.empty(), detail);

  // 1_{t g} g = g = g 1_{s g} on a basis of V1.
  detail.clear();
  try {
    for (std::size_t i = 0; i < n && detail.empty(); ++i) {
      Vector g = unit_vector(n, i);
      Vector left = a.compose(a.unit(a.t(g)), g);
      Vector right = a.compose(g, a.unit(a.s(g)));
      if (left != g)
        detail = "1_t o " + a.v1.name(i) + " = " + format_element(a.v1, left);
      else if (right != g)
        detail = a.v1.name(i) + " o 1_s = " + format_element(a.v1, right);
    }
  } catch (const std::domain_error& e) {
    detail = std::string("identity arrows not composable: ") + e.what();
  }
  report.add(lie2_checks::unit_law, detail.empty(), detail);

  detail.clear();
  try {
    Subspace triples = detail::composable_triples(a);
    for (std::size_t k = 0; k < triples.dim() && detail.empty(); ++k) {
      Vector v = triples.basis_vector(k);
      Vector g3 = slice(v, 0, n), g2 = slice(v, n, n), g1 = slice(v, 2 * n, n);
      Vector lhs = a.compose(a.compose(g3, g2), g1);
      Vector rhs = a.compose(g3, a.compose(g2, g1));
      if (lhs != rhs)
        detail = "(g3 g2) g1 = " + format_element(a.v1, lhs) + " but g3 (g2 g1) = " + format_element(a.v1, rhs) +
                 " for the triple " + format_vector(v);
    }
  } catch (const std::domain_error& e) {
    detail = std::string("intermediate composite not composable: ") + e.what();
  }
  report.add(lie2_checks::associativity, detail.empty(), detail);
  return report;
}

class Lie2Error : public std::invalid_argument {
 public:
  Lie2Error(std::string check, const std::string& detail)
      : std::invalid_argument("invalid Lie 2-algebra: " + check + (detail.empty() ? "" : " (" + detail + ")")),
        check_(std::move(check)) {}
  const std::string& check() const noexcept { return check_; }

 private:
  std::string check_;
};

inline void require_lie2(const Lie2Algebra& a) {
  Report r = verify_lie2(a);
  if (const Check* bad = r.first_failure()) throw Lie2Error(bad->id, bad->detail);
}

// ---------------------------------------------------------------------------
// Crossed modules <-> Lie 2-algebras

/// [(x1,y1),(x2,y2)] = ([x1,x2] + D(y1)x2 - D(y2)x1, [y1,y2]).
inline Vector semidirect_bracket(const CrossedModule& cm, const Vector& a, const Vector& b) {
  const std::size_t dm = cm.m.dim(), dn = cm.n.dim();
  Vector x1 = slice(a, 0, dm), y1 = slice(a, dm, dn), x2 = slice(b, 0, dm), y2 = slice(b, dm, dn);
  Vector x = cm.m.bracket(x1, x2) + cm.D(y1).apply(x2) - cm.D(y2).apply(x1);
  return concat(x, cm.n.bracket(y1, y2));
}

/// Builds the Lie 2-algebra without checking the crossed-module axioms.
inline Lie2Algebra lie2_of_crossed_module_unchecked(const CrossedModule& cm) {
  const std::size_t dm = cm.m.dim(), dn = cm.n.dim(), d = dm + dn;
  std::vector<Scalar> c(d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vector br = semidirect_bracket(cm, unit_vector(d, i), unit_vector(d, j));
      for (std::size_t k = 0; k < d; ++k) c[(i * d + j) * d + k] = br[k];
    }
  std::vector<std::string> names = cm.m.names();
  names.insert(names.end(), cm.n.names().begin(), cm.n.names().end());
  LieAlgebra v1(uniquify(std::move(names)), std::move(c));

  Matrix s(dn, d), t(dn, d), unit(d, dn), comp(d, 2 * d);
  s.place(0, dm, Matrix::identity(dn));
  t.place(0, 0, cm.del.matrix);
  t.place(0, dm, Matrix::identity(dn));
  unit.place(dm, 0, Matrix::identity(dn));
  // (x1, y1) o (x2, y2) = (x1 + x2, y2)
  comp.place(0, 0, Matrix::identity(dm));
  comp.place(0, d, Matrix::identity(dm));
  comp.place(dm, d + dm, Matrix::identity(dn));
  return Lie2Algebra::from_extension(std::move(v1), cm.n, std::move(s), std::move(t), std::move(unit), comp);
}

inline Lie2Algebra lie2_of_crossed_module(const CrossedModule& cm) {
  require_crossed_module(cm);
  return lie2_of_crossed_module_unchecked(cm);
}

/// m = ker s, n = V0, del = t on ker s, D(y)x = [unit(y), x].
inline CrossedModule crossed_module_of_lie2(const Lie2Algebra& a) {
  require_lie2(a);
  EmbeddedAlgebra m = subalgebra(a.v1, kernel(a.s.matrix), "k");
  Matrix inc = m.inclusion();
  std::vector<Matrix> action;
  for (std::size_t j = 0; j < a.v0.dim(); ++j) {
    Vector uy = a.unit(unit_vector(a.v0.dim(), j));
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < m.algebra.dim(); ++i) cols.push_back(m.coordinates(a.v1.bracket(uy, inc.column(i))));
    action.push_back(Matrix::from_columns(cols, m.algebra.dim()));
  }
  return CrossedModule(m.algebra, a.v0, a.t.matrix * inc, std::move(action));
}

// ---------------------------------------------------------------------------
// Strict functors

struct Lie2Functor {
  Lie2Algebra source;
  Lie2Algebra target;
  LieHom f1;
  LieHom f0;

  Lie2Functor() = default;
  Lie2Functor(Lie2Algebra src, Lie2Algebra tgt, Matrix on_arrows, Matrix on_objects)
      : source(std::move(src)),
        target(std::move(tgt)),
        f1(source.v1, target.v1, std::move(on_arrows)),
        f0(source.v0, target.v0, std::move(on_objects)) {}

  static Lie2Functor identity(const Lie2Algebra& a) {
    return Lie2Functor(a, a, Matrix::identity(a.v1.dim()), Matrix::identity(a.v0.dim()));
  }
};

namespace functor_checks {
inline constexpr const char* f1_hom = "F1 is a homomorphism";
inline constexpr const char* f0_hom = "F0 is a homomorphism";
inline constexpr const char* source_square = "source square";
inline constexpr const char* target_square = "target square";
inline constexpr const char* unit_square = "unit square";
inline constexpr const char* comp_square = "composition square";
}  // namespace functor_checks

inline Report verify_lie2_functor(const Lie2Functor& f, std::string subject = "lie2_functor") {
  Report report;
  report.subject = std::move(subject);
  Report r1 = verify_hom(f.f1), r0 = verify_hom(f.f0);
  report.add(functor_checks::f1_hom, r1.passed(), detail::first_failure_text(r1));
  report.add(functor_checks::f0_hom, r0.passed(), detail::first_failure_text(r0));
  const auto& a = f.source;
  const auto& b = f.target;
  bool ok = b.s.matrix * f.f1.matrix == f.f0.matrix * a.s.matrix;
  report.add(functor_checks::source_square, ok, ok ? "" : "s F1 != F0 s");
  ok = b.t.matrix * f.f1.matrix == f.f0.matrix * a.t.matrix;
  report.add(functor_checks::target_square, ok, ok ? "" : "t F1 != F0 t");
  ok = f.f1.matrix * a.unit.matrix == b.unit.matrix * f.f0.matrix;
  report.add(functor_checks::unit_square, ok, ok ? "" : "F1 unit != unit F0");

  std::string detail;
  try {
    for (std::size_t k = 0; k < a.composable.dim() && detail.empty(); ++k) {
      Vector e = unit_vector(a.composable.dim(), k);
      Vector lhs = f.f1(a.comp(e));
      Vector rhs = b.compose(f.f1(a.composable.left_part(e)), f.f1(a.composable.right_part(e)));
      if (lhs != rhs) detail = "F1(g2 g1) = " + format_element(b.v1, lhs) + " but F1 g2 F1 g1 = " + format_element(b.v1, rhs);
    }
  } catch (const std::domain_error& e) {
    detail = std::string("images of a composable pair are not composable: ") + e.what();
  }
  report.add(functor_checks::comp_square, detail.empty(), detail);
  return report;
}

class FunctorError : public std::invalid_argument {
 public:
  FunctorError(std::string square, const std::string& detail)
      : std::invalid_argument("not a strict functor: " + square + (detail.empty() ? "" : " (" + detail + ")")),
        square_(std::move(square)) {}
  const std::string& square() const noexcept { return square_; }

 private:
  std::string square_;
};

inline void require_functor(const Lie2Functor& f) {
  Report r = verify_lie2_functor(f);
  if (const Check* bad = r.first_failure()) throw FunctorError(bad->id, bad->detail);
}

/// g after f.
inline Lie2Functor compose(const Lie2Functor& g, const Lie2Functor& f) {
  if (!same_lie2(f.target, g.source)) throw std::invalid_argument("functor composition: middle Lie 2-algebras differ");
  return Lie2Functor(f.source, g.target, g.f1.matrix * f.f1.matrix, g.f0.matrix * f.f0.matrix);
}

/// Functor induced by a morphism of crossed modules (phi_m, phi_n).
inline Lie2Functor functor_of_cm_morphism(const CrossedModule& a, const CrossedModule& b, const Matrix& phi_m,
                                          const Matrix& phi_n) {
  Lie2Algebra la = lie2_of_crossed_module(a), lb = lie2_of_crossed_module(b);
  Matrix f1(lb.v1.dim(), la.v1.dim());
  f1.place(0, 0, phi_m);
  f1.place(b.m.dim(), a.m.dim(), phi_n);
  return Lie2Functor(std::move(la), std::move(lb), std::move(f1), phi_n);
}

/// The isomorphism A -> lie2(cm(A)) given by the complex model (F0 = id).
inline Lie2Functor round_trip_functor(const Lie2Algebra& a) {
  Lie2Algebra back = lie2_of_crossed_module(crossed_module_of_lie2(a));
  ComplexFromCategory cfc = complex_from_category(a.v1.dim(), a.v0.dim(), a.s.matrix, a.t.matrix, a.unit.matrix);
  return Lie2Functor(a, std::move(back), cfc.iso, Matrix::identity(a.v0.dim()));
}

/// Result of the essential-equivalence test; the report carries dimensions.
struct EquivalenceReport {
  bool fully_faithful = false;
  bool essentially_surjective = false;
  Report report;
};

inline EquivalenceReport functor_is_essential_equivalence(const Lie2Functor& f) {
  require_functor(f);
  const auto& a = f.source;
  const auto& b = f.target;
  EquivalenceReport out;
  out.report.subject = "essential_equivalence";

  Subspace reach = image(f.f0.matrix) + image(b.t.matrix * kernel(b.s.matrix).inclusion());
  out.essentially_surjective = reach.dim() == b.v0.dim();
  out.report.add("essentially surjective", out.essentially_surjective,
                 out.essentially_surjective ? "" : "F0(V0) + t(ker s) has dimension " + std::to_string(reach.dim()) +
                                                       " < " + std::to_string(b.v0.dim()));

  // Phi: alpha |-> (s alpha, t alpha, F1 alpha) into {(a, b, beta) : F0 a = s beta, F0 b = t beta}.
  const std::size_t o = a.v0.dim(), w = b.v1.dim(), bo = b.v0.dim();
  Matrix cons(2 * bo, 2 * o + w);
  cons.place(0, 0, f.f0.matrix);
  cons.place(0, 2 * o, Scalar(-1) * b.s.matrix);
  cons.place(bo, o, f.f0.matrix);
  cons.place(bo, 2 * o, Scalar(-1) * b.t.matrix);
  Subspace codomain = kernel(cons);
  Matrix phi = Matrix::vstack(Matrix::vstack(a.s.matrix, a.t.matrix), f.f1.matrix);
  const std::size_t r = rank(phi);
  out.fully_faithful = r == a.v1.dim() && r == codomain.dim();
  out.report.add("fully faithful", out.fully_faithful,
                 out.fully_faithful ? "" : "Phi has rank " + std::to_string(r) + " from dimension " +
                                               std::to_string(a.v1.dim()) + " into dimension " +
                                               std::to_string(codomain.dim()));
  out.report.derived["phi_domain_dim"] = a.v1.dim();
  out.report.derived["phi_codomain_dim"] = codomain.dim();
  out.report.derived["phi_rank"] = r;
  out.report.derived["fully_faithful"] = out.fully_faithful;
  out.report.derived["essentially_surjective"] = out.essentially_surjective;
  return out;
}

// ---------------------------------------------------------------------------
// Bracket defect of linear sections

/// Sections sigma of a surjection f (f sigma = id) and their defects
/// [sigma a, sigma b] - sigma [a, b] on basis pairs a < b of the target.
struct SectionDefects {
  std::vector<Matrix> sections;
  std::vector<std::vector<Vector>> defects;  // defects[section][pair]
  bool section_independent = true;
  bool nonzero = false;
};

inline SectionDefects section_defects(const LieHom& f) {
  const std::size_t src = f.source.dim(), tgt = f.target.dim();
  // Unknown sigma (src x tgt), flattened row-major; equations f sigma = id.
  Matrix eqs(tgt * tgt, src * tgt);
  Vector rhs = zero_vector(tgt * tgt);
  for (std::size_t r = 0; r < tgt; ++r)
    for (std::size_t c = 0; c < tgt; ++c) {
      for (std::size_t k = 0; k < src; ++k) eqs(r * tgt + c, k * tgt + c) = f.matrix(r, k);
      rhs[r * tgt + c] = r == c ? 1 : 0;
    }
  auto sol = solve(eqs, rhs);
  if (!sol) throw std::invalid_argument("map has no linear section (not surjective)");
  std::vector<Vector> flats{sol->particular};
  for (const auto& k : sol->kernel.basis()) flats.push_back(sol->particular + k);

  SectionDefects out;
  for (const auto& flat : flats) {
    Matrix sigma(src, tgt);
    for (std::size_t k = 0; k < src; ++k)
      for (std::size_t c = 0; c < tgt; ++c) sigma(k, c) = flat[k * tgt + c];
    std::vector<Vector> d;
    for (std::size_t a = 0; a < tgt; ++a)
      for (std::size_t b = a + 1; b < tgt; ++b) {
        Vector v = f.source.bracket(sigma.column(a), sigma.column(b)) - sigma.apply(f.target.bracket_basis(a, b));
        if (!is_zero(v)) out.nonzero = true;
        d.push_back(std::move(v));
      }
    if (!out.defects.empty() && d != out.defects.front()) out.section_independent = false;
    out.sections.push_back(std::move(sigma));
    out.defects.push_back(std::move(d));
  }
  return out;
}

namespace fixtures {

inline Lie2Algebra discrete_lie2(const LieAlgebra& l) { return lie2_of_crossed_module(discrete_cm(l)); }

/// phi: lie2(heisCM) -> lie2(abCM), X |-> E1, Y |-> E2, Z |-> 0, c |-> 0.
inline Lie2Functor heisenberg_functor() {
  Matrix phi0(2, 3);
  phi0(0, 0) = 1;
  phi0(1, 1) = 1;
  return functor_of_cm_morphism(heis_cm(), ab_cm(), Matrix(0, 1), phi0);
}

/// Projection (0 -> R^2) -> (0 -> R), F0 = (1 0).
inline Lie2Functor projection_functor() {
  Matrix p(1, 2);
  p(0, 0) = 1;
  return functor_of_cm_morphism(discrete_cm(abelian(2)), discrete_cm(abelian(1)), Matrix(0, 0), p);
}

}  // namespace fixtures
}  // namespace lie2
