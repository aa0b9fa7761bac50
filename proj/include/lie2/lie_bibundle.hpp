#pragma once

#include "lie2/lie2_algebra.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace lie2 {

/// A g-h bibundle of Lie algebras. The left action is defined on
/// g1 x_{s,g0,aL} p (pairs (gamma, x)), the right action on
/// p x_{aR,h0,t} h1 (pairs (x, eta)).
struct LieBibundle {
  LieAlgebra p;
  Lie2Algebra g;
  Lie2Algebra h;
  LieHom a_left;
  LieHom a_right;
  FiberProduct left_domain;
  FiberProduct right_domain;
  LieHom act_left;
  LieHom act_right;

  using LeftRule = std::function<Vector(const Vector& gamma, const Vector& x)>;
  using RightRule = std::function<Vector(const Vector& x, const Vector& eta)>;

  LieBibundle() = default;
  LieBibundle(LieAlgebra space, Lie2Algebra left, Lie2Algebra right, Matrix anchor_left, Matrix anchor_right,
              Matrix left_on_domain, Matrix right_on_domain)
      : LieBibundle(Unset{}, std::move(space), std::move(left), std::move(right), std::move(anchor_left),
                    std::move(anchor_right)) {
    act_left = LieHom(left_domain.algebra(), p, std::move(left_on_domain));
    act_right = LieHom(right_domain.algebra(), p, std::move(right_on_domain));
  }

  /// Builds the action matrices by evaluating the rules on a basis of each
  /// action domain.
  static LieBibundle from_rules(LieAlgebra space, Lie2Algebra left, Lie2Algebra right, Matrix anchor_left,
                                Matrix anchor_right, const LeftRule& l, const RightRule& r) {
    LieBibundle b(Unset{}, std::move(space), std::move(left), std::move(right), std::move(anchor_left),
                  std::move(anchor_right));
    b.act_left = LieHom(b.left_domain.algebra(), b.p, b.tabulate(b.left_domain, l));
    b.act_right = LieHom(b.right_domain.algebra(), b.p, b.tabulate(b.right_domain, r));
    return b;
  }

  /// Actions given on the ambient sums g1 (+) p and p (+) h1.
  static LieBibundle from_extension(LieAlgebra space, Lie2Algebra left, Lie2Algebra right, Matrix anchor_left,
                                    Matrix anchor_right, const Matrix& left_ext, const Matrix& right_ext) {
    LieBibundle b(Unset{}, std::move(space), std::move(left), std::move(right), std::move(anchor_left),
                  std::move(anchor_right));
    if (left_ext.rows() != b.p.dim() || left_ext.cols() != b.g.v1.dim() + b.p.dim())
      throw DimensionError("left action matrix columns", b.g.v1.dim() + b.p.dim(), left_ext.cols());
    if (right_ext.rows() != b.p.dim() || right_ext.cols() != b.p.dim() + b.h.v1.dim())
      throw DimensionError("right action matrix columns", b.p.dim() + b.h.v1.dim(), right_ext.cols());
    b.act_left = LieHom(b.left_domain.algebra(), b.p, left_ext * b.left_domain.sub.inclusion());
    b.act_right = LieHom(b.right_domain.algebra(), b.p, right_ext * b.right_domain.sub.inclusion());
    return b;
  }

  Matrix left_extension() const { return act_left.matrix * left_domain.sub.space.coordinate_map(); }
  Matrix right_extension() const { return act_right.matrix * right_domain.sub.space.coordinate_map(); }

  /// gamma . x; throws std::domain_error unless s(gamma) = aL(x).
  Vector left_act(const Vector& gamma, const Vector& x) const { return act_left(left_domain.coordinates(gamma, x)); }
  /// x . eta; throws std::domain_error unless aR(x) = t(eta).
  Vector right_act(const Vector& x, const Vector& eta) const { return act_right(right_domain.coordinates(x, eta)); }

 private:
  struct Unset {};
  LieBibundle(Unset, LieAlgebra space, Lie2Algebra left, Lie2Algebra right, Matrix anchor_left, Matrix anchor_right)
      : p(std::move(space)),
        g(std::move(left)),
        h(std::move(right)),
        a_left(p, g.v0, std::move(anchor_left)),
        a_right(p, h.v0, std::move(anchor_right)),
        left_domain(fiber_product(g.v1, g.s.matrix, p, a_left.matrix, "l")),
        right_domain(fiber_product(p, a_right.matrix, h.v1, h.t.matrix, "r")) {}

  Matrix tabulate(const FiberProduct& dom, const std::function<Vector(const Vector&, const Vector&)>& rule) const {
    std::vector<Vector> cols;
    for (std::size_t k = 0; k < dom.dim(); ++k) {
      Vector e = unit_vector(dom.dim(), k);
      cols.push_back(rule(dom.left_part(e), dom.right_part(e)));
    }
    return Matrix::from_columns(cols, p.dim());
  }
};

namespace bundle_checks {
inline constexpr const char* p_lie = "p is a Lie algebra";
inline constexpr const char* left_anchor_hom = "left anchor is a homomorphism";
inline constexpr const char* right_anchor_hom = "right anchor is a homomorphism";
inline constexpr const char* left_action_hom = "left action is a homomorphism";
inline constexpr const char* right_action_hom = "right action is a homomorphism";
inline constexpr const char* left_action_anchors = "left action respects anchors";
inline constexpr const char* right_action_anchors = "right action respects anchors";
inline constexpr const char* left_unit = "left unitality";
inline constexpr const char* right_unit = "right unitality";
inline constexpr const char* left_assoc = "left associativity";
inline constexpr const char* right_assoc = "right associativity";
inline constexpr const char* commute = "actions commute";
inline constexpr const char* principal = "right action is principal";
inline constexpr const char* principal_bracket = "principality inverse respects brackets";
}  // namespace bundle_checks

namespace detail {

/// Runs `body` over a basis of `space`, stopping at the first non-empty
/// message; domain errors from non-composable intermediate pairs become the
/// message.
template <class Body>
std::string first_violation(const Subspace& space, Body&& body) {
  try {
    for (std::size_t k = 0; k < space.dim(); ++k) {
      std::string msg = body(space.basis_vector(k));
      if (!msg.empty()) return msg;
    }
  } catch (const std::domain_error& e) {
    return std::string("not composable: ") + e.what();
  }
  return {};
}

inline Matrix stacked_constraints(std::size_t rows_total, std::size_t cols_total,
                                  const std::vector<std::tuple<std::size_t, std::size_t, Matrix>>& blocks) {
  Matrix m(rows_total, cols_total);
  for (const auto& [r, c, b] : blocks) m.place(r, c, b);
  return m;
}

}  // namespace detail

inline Report verify_bibundle(const LieBibundle& b, std::string subject = "lie_bibundle") {
  Report report;
  report.subject = std::move(subject);
  const std::size_t pd = b.p.dim(), g1 = b.g.v1.dim(), h1 = b.h.v1.dim();
  const std::size_t g0 = b.g.v0.dim(), h0 = b.h.v0.dim();
  report.derived["dim_p"] = pd;

  Report rp = verify_lie_algebra(b.p);
  report.add(bundle_checks::p_lie, rp.passed(), detail::first_failure_text(rp));
  for (auto [id, hom] : {std::pair{bundle_checks::left_anchor_hom, &b.a_left},
                         std::pair{bundle_checks::right_anchor_hom, &b.a_right},
                         std::pair{bundle_checks::left_action_hom, &b.act_left},
                         std::pair{bundle_checks::right_action_hom, &b.act_right}}) {
    Report rh = verify_hom(*hom);
    report.add(id, rh.passed(), detail::first_failure_text(rh));
  }

  std::string msg;
  for (std::size_t k = 0; k < b.left_domain.dim() && msg.empty(); ++k) {
    Vector e = unit_vector(b.left_domain.dim(), k);
    Vector gamma = b.left_domain.left_part(e), x = b.left_domain.right_part(e);
    Vector y = b.act_left(e);
    if (b.a_left(y) != b.g.t(gamma))
      msg = "aL(gamma . x) = " + format_element(b.g.v0, b.a_left(y)) + " but t(gamma) = " + format_element(b.g.v0, b.g.t(gamma));
    else if (b.a_right(y) != b.a_right(x))
      msg = "aR(gamma . x) = " + format_element(b.h.v0, b.a_right(y)) + " but aR(x) = " + format_element(b.h.v0, b.a_right(x));
  }
  report.add(bundle_checks::left_action_anchors, msg.empty(), msg);

  msg.clear();
  for (std::size_t k = 0; k < b.right_domain.dim() && msg.empty(); ++k) {
    Vector e = unit_vector(b.right_domain.dim(), k);
    Vector x = b.right_domain.left_part(e), eta = b.right_domain.right_part(e);
    Vector y = b.act_right(e);
    if (b.a_right(y) != b.h.s(eta))
      msg = "aR(x . eta) = " + format_element(b.h.v0, b.a_right(y)) + " but s(eta) = " + format_element(b.h.v0, b.h.s(eta));
    else if (b.a_left(y) != b.a_left(x))
      msg = "aL(x . eta) = " + format_element(b.g.v0, b.a_left(y)) + " but aL(x) = " + format_element(b.g.v0, b.a_left(x));
  }
  report.add(bundle_checks::right_action_anchors, msg.empty(), msg);

  Subspace all_p = Subspace::full(pd);
  msg = detail::first_violation(all_p, [&](const Vector& x) -> std::string {
    Vector y = b.left_act(b.g.unit(b.a_left(x)), x);
    return y == x ? "" : "1 . " + format_element(b.p, x) + " = " + format_element(b.p, y);
  });
  report.add(bundle_checks::left_unit, msg.empty(), msg);
  msg = detail::first_violation(all_p, [&](const Vector& x) -> std::string {
    Vector y = b.right_act(x, b.h.unit(b.a_right(x)));
    return y == x ? "" : format_element(b.p, x) + " . 1 = " + format_element(b.p, y);
  });
  report.add(bundle_checks::right_unit, msg.empty(), msg);

  // (gamma2 gamma1) . x = gamma2 . (gamma1 . x)
  Subspace left_triples = kernel(detail::stacked_constraints(
      2 * g0, 2 * g1 + pd,
      {{0, 0, b.g.s.matrix}, {0, g1, Scalar(-1) * b.g.t.matrix}, {g0, g1, b.g.s.matrix},
       {g0, 2 * g1, Scalar(-1) * b.a_left.matrix}}));
  msg = detail::first_violation(left_triples, [&](const Vector& v) -> std::string {
    Vector g2 = slice(v, 0, g1), g1v = slice(v, g1, g1), x = slice(v, 2 * g1, pd);
    Vector lhs = b.left_act(b.g.compose(g2, g1v), x);
    Vector rhs = b.left_act(g2, b.left_act(g1v, x));
    return lhs == rhs ? "" : "(g2 g1) . x = " + format_element(b.p, lhs) + " but g2 . (g1 . x) = " + format_element(b.p, rhs);
  });
  report.add(bundle_checks::left_assoc, msg.empty(), msg);

  // (x . eta1) . eta2 = x . (eta1 eta2)
  Subspace right_triples = kernel(detail::stacked_constraints(
      2 * h0, pd + 2 * h1,
      {{0, 0, b.a_right.matrix}, {0, pd, Scalar(-1) * b.h.t.matrix}, {h0, pd, b.h.s.matrix},
       {h0, pd + h1, Scalar(-1) * b.h.t.matrix}}));
  msg = detail::first_violation(right_triples, [&](const Vector& v) -> std::string {
    Vector x = slice(v, 0, pd), e1 = slice(v, pd, h1), e2 = slice(v, pd + h1, h1);
    Vector lhs = b.right_act(b.right_act(x, e1), e2);
    Vector rhs = b.right_act(x, b.h.compose(e1, e2));
    return lhs == rhs ? "" : "(x . e1) . e2 = " + format_element(b.p, lhs) + " but x . (e1 e2) = " + format_element(b.p, rhs);
  });
  report.add(bundle_checks::right_assoc, msg.empty(), msg);

  // (gamma . x) . eta = gamma . (x . eta)
  Subspace mixed = kernel(detail::stacked_constraints(
      g0 + h0, g1 + pd + h1,
      {{0, 0, b.g.s.matrix}, {0, g1, Scalar(-1) * b.a_left.matrix}, {g0, g1, b.a_right.matrix},
       {g0, g1 + pd, Scalar(-1) * b.h.t.matrix}}));
  msg = detail::first_violation(mixed, [&](const Vector& v) -> std::string {
    Vector gamma = slice(v, 0, g1), x = slice(v, g1, pd), eta = slice(v, g1 + pd, h1);
    Vector lhs = b.right_act(b.left_act(gamma, x), eta);
    Vector rhs = b.left_act(gamma, b.right_act(x, eta));
    return lhs == rhs ? "" : "(g . x) . e = " + format_element(b.p, lhs) + " but g . (x . e) = " + format_element(b.p, rhs);
  });
  report.add(bundle_checks::commute, msg.empty(), msg);

  // (x, eta) |-> (x, x . eta) into p x_{aL,g0,aL} p
  FiberProduct pairs = fiber_product(b.p, b.a_left.matrix, b.p, b.a_left.matrix, "w");
  std::vector<Vector> cols;
  msg.clear();
  for (std::size_t k = 0; k < b.right_domain.dim() && msg.empty(); ++k) {
    Vector e = unit_vector(b.right_domain.dim(), k);
    Vector x = b.right_domain.left_part(e);
    auto c = pairs.sub.space.coordinates(concat(x, b.act_right(e)));
    if (!c) msg = "x . eta leaves the aL-fiber of x";
    else cols.push_back(*c);
  }
  report.derived["principality_domain_dim"] = b.right_domain.dim();
  report.derived["principality_codomain_dim"] = pairs.dim();
  if (msg.empty()) {
    Matrix pi = Matrix::from_columns(cols, pairs.dim());
    report.derived["principality_rank"] = rank(pi);
    if (!is_bijective(pi))
      msg = "principality map has rank " + std::to_string(rank(pi)) + " from dimension " +
            std::to_string(b.right_domain.dim()) + " to dimension " + std::to_string(pairs.dim());
    report.add(bundle_checks::principal, msg.empty(), msg);
    Report rh = verify_hom(LieHom(b.right_domain.algebra(), pairs.algebra(), pi));
    report.add(bundle_checks::principal_bracket, msg.empty() && rh.passed(),
               msg.empty() ? detail::first_failure_text(rh) : "principality map is not invertible");
  } else {
    report.add(bundle_checks::principal, false, msg);
    report.add(bundle_checks::principal_bracket, false, "principality map is undefined");
  }
  return report;
}

// ---------------------------------------------------------------------------
// <F> for a strict functor F: g -> h

/// {(x, gamma) in g0 (+) h1 : F0 x = t gamma}.
inline FiberProduct functor_bundle_space(const Lie2Functor& f) {
  return fiber_product(f.source.v0, f.f0.matrix, f.target.v1, f.target.t.matrix, "p");
}

inline LieBibundle bundle_of_functor(const Lie2Functor& f) {
  require_functor(f);
  FiberProduct fp = functor_bundle_space(f);
  const Lie2Algebra& g = f.source;
  const Lie2Algebra& h = f.target;
  Matrix a_left = fp.pr_left.matrix;
  Matrix a_right = h.s.matrix * fp.pr_right.matrix;
  auto left = [&](const Vector& gamma, const Vector& xc) {
    Vector eta = fp.right_part(xc);
    return fp.coordinates(g.t(gamma), h.compose(f.f1(gamma), eta));
  };
  auto right = [&](const Vector& xc, const Vector& nu) {
    return fp.coordinates(fp.left_part(xc), h.compose(fp.right_part(xc), nu));
  };
  return LieBibundle::from_rules(fp.algebra(), g, h, std::move(a_left), std::move(a_right), left, right);
}

// ---------------------------------------------------------------------------
// Composition

class BibundleCompositionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Q o P together with the data needed to build maps out of it.
struct BibundleComposite {
  LieBibundle bundle;
  FiberProduct pairs;  // p x_{aR,h0,aL} q
  Subspace delta;      // inside pairs-coordinates
  LieQuotient quotient;

  /// A representative pair (x, y) in p (+) q of the class c.
  std::pair<Vector, Vector> lift(const Vector& c) const {
    Vector e = quotient.section.apply(c);
    return {pairs.left_part(e), pairs.right_part(e)};
  }

  Vector project(const Vector& x, const Vector& y) const { return quotient.projection(pairs.coordinates(x, y)); }

  /// Restricts a linear map given on `pairs` to the quotient, after checking
  /// that it vanishes on delta.
  Matrix descend(const Matrix& on_pairs) const {
    for (const auto& d : delta.basis())
      if (!is_zero(on_pairs.apply(d))) throw std::logic_error("map does not vanish on the identified directions");
    return on_pairs * quotient.section;
  }
};

inline BibundleComposite compose_bibundles_detail(const LieBibundle& q, const LieBibundle& p) {
  if (!same_lie2(p.h, q.g)) throw BibundleCompositionError("middle Lie 2-algebras of the two bibundles differ");
  const Lie2Algebra& h = p.h;
  FiberProduct pairs = fiber_product(p.p, p.a_right.matrix, q.p, q.a_left.matrix, "c");

  std::vector<Vector> gens;
  Subspace kt = kernel(h.t.matrix);
  try {
    for (const auto& u : kt.basis()) {
      Vector pu = p.right_act(zero_vector(p.p.dim()), u);
      Vector qu = q.left_act(h.inverse(u), zero_vector(q.p.dim()));
      gens.push_back(pairs.coordinates(pu, qu));
    }
  } catch (const std::domain_error& e) {
    throw BibundleCompositionError(std::string("identified directions leave the fiber product: ") + e.what());
  }
  Subspace delta = Subspace::span(pairs.dim(), gens);
  LieQuotient quot;
  try {
    quot = lie_quotient(pairs.algebra(), delta);
  } catch (const NotAnIdealError& e) {
    throw BibundleCompositionError(std::string("identified directions do not form an ideal: ") + e.what());
  }

  BibundleComposite out{LieBibundle(), std::move(pairs), std::move(delta), std::move(quot)};
  const auto& fp = out.pairs;
  const LieAlgebra& c = out.quotient.algebra;
  Matrix left_on_pairs = p.a_left.matrix * fp.pr_left.matrix;
  Matrix right_on_pairs = q.a_right.matrix * fp.pr_right.matrix;
  Matrix a_left, a_right;
  try {
    a_left = out.descend(left_on_pairs);
    a_right = out.descend(right_on_pairs);
  } catch (const std::logic_error&) {
    throw BibundleCompositionError("anchors do not descend to the quotient");
  }
  auto left = [&](const Vector& gamma, const Vector& cv) {
    auto [x, y] = out.lift(cv);
    return out.project(p.left_act(gamma, x), y);
  };
  auto right = [&](const Vector& cv, const Vector& kappa) {
    auto [x, y] = out.lift(cv);
    return out.project(x, q.right_act(y, kappa));
  };
  try {
    out.bundle = LieBibundle::from_rules(c, p.g, q.h, std::move(a_left), std::move(a_right), left, right);
  } catch (const std::domain_error& e) {
    throw BibundleCompositionError(std::string("actions do not descend: ") + e.what());
  }
  return out;
}

inline LieBibundle compose_bibundles(const LieBibundle& q, const LieBibundle& p) {
  return compose_bibundles_detail(q, p).bundle;
}

// ---------------------------------------------------------------------------
// Morphisms

namespace morphism_checks {
inline constexpr const char* hom = "homomorphism";
inline constexpr const char* bijective = "bijective";
inline constexpr const char* left_anchor = "left anchor";
inline constexpr const char* right_anchor = "right anchor";
inline constexpr const char* left_equivariance = "left equivariance";
inline constexpr const char* right_equivariance = "right equivariance";
}  // namespace morphism_checks

inline Report verify_bibundle_morphism(const LieBibundle& p, const LieBibundle& q, const Matrix& cand,
                                       std::string subject = "bibundle_morphism") {
  if (!same_lie2(p.g, q.g) || !same_lie2(p.h, q.h))
    throw std::invalid_argument("bibundles have different source or target Lie 2-algebras");
  if (cand.rows() != q.p.dim() || cand.cols() != p.p.dim())
    throw DimensionError("bibundle morphism shape", q.p.dim() * p.p.dim(), cand.rows() * cand.cols());
  Report report;
  report.subject = std::move(subject);
  Report rh = verify_hom(LieHom(p.p, q.p, cand));
  report.add(morphism_checks::hom, rh.passed(), detail::first_failure_text(rh));
  bool bij = is_bijective(cand);
  report.add(morphism_checks::bijective, bij, bij ? "" : "rank " + std::to_string(rank(cand)));
  bool ok = q.a_left.matrix * cand == p.a_left.matrix;
  report.add(morphism_checks::left_anchor, ok, ok ? "" : "aL o cand != aL");
  ok = q.a_right.matrix * cand == p.a_right.matrix;
  report.add(morphism_checks::right_anchor, ok, ok ? "" : "aR o cand != aR");

  std::string msg = detail::first_violation(Subspace::full(p.left_domain.dim()), [&](const Vector& e) -> std::string {
    Vector gamma = p.left_domain.left_part(e), x = p.left_domain.right_part(e);
    Vector lhs = cand.apply(p.act_left(e)), rhs = q.left_act(gamma, cand.apply(x));
    return lhs == rhs ? "" : "cand(g . x) = " + format_element(q.p, lhs) + " but g . cand(x) = " + format_element(q.p, rhs);
  });
  report.add(morphism_checks::left_equivariance, msg.empty(), msg);
  msg = detail::first_violation(Subspace::full(p.right_domain.dim()), [&](const Vector& e) -> std::string {
    Vector x = p.right_domain.left_part(e), eta = p.right_domain.right_part(e);
    Vector lhs = cand.apply(p.act_right(e)), rhs = q.right_act(cand.apply(x), eta);
    return lhs == rhs ? "" : "cand(x . e) = " + format_element(q.p, lhs) + " but cand(x) . e = " + format_element(q.p, rhs);
  });
  report.add(morphism_checks::right_equivariance, msg.empty(), msg);
  return report;
}

/// A candidate isomorphism together with its endpoints.
struct BibundleWitness {
  LieBibundle from;
  LieBibundle to;
  Matrix map;
};

/// <g> o <f> -> <g o f>, [(x, gamma), (y, delta)] |-> (x, g(gamma) delta).
inline BibundleWitness functor_composite_witness(const Lie2Functor& g, const Lie2Functor& f) {
  LieBibundle bf = bundle_of_functor(f), bg = bundle_of_functor(g);
  Lie2Functor gf = compose(g, f);
  BibundleComposite comp = compose_bibundles_detail(bg, bf);
  FiberProduct sf = functor_bundle_space(f), sg = functor_bundle_space(g), sgf = functor_bundle_space(gf);
  const Lie2Algebra& c = g.target;
  std::vector<Vector> cols;
  for (std::size_t k = 0; k < comp.pairs.dim(); ++k) {
    Vector e = unit_vector(comp.pairs.dim(), k);
    Vector xp = comp.pairs.left_part(e), xq = comp.pairs.right_part(e);
    Vector x = sf.left_part(xp), gamma = sf.right_part(xp), delta = sg.right_part(xq);
    cols.push_back(sgf.coordinates(x, c.compose(g.f1(gamma), delta)));
  }
  Matrix map = comp.descend(Matrix::from_columns(cols, sgf.dim()));
  return {std::move(comp.bundle), bundle_of_functor(gf), std::move(map)};
}

/// <id_h> o P -> P, [(x, (y, delta))] |-> x . delta.
inline BibundleWitness left_unit_witness(const LieBibundle& p) {
  Lie2Functor id = Lie2Functor::identity(p.h);
  LieBibundle unit = bundle_of_functor(id);
  BibundleComposite comp = compose_bibundles_detail(unit, p);
  FiberProduct su = functor_bundle_space(id);
  std::vector<Vector> cols;
  for (std::size_t k = 0; k < comp.pairs.dim(); ++k) {
    Vector e = unit_vector(comp.pairs.dim(), k);
    cols.push_back(p.right_act(comp.pairs.left_part(e), su.right_part(comp.pairs.right_part(e))));
  }
  Matrix map = comp.descend(Matrix::from_columns(cols, p.p.dim()));
  return {std::move(comp.bundle), p, std::move(map)};
}

/// P o <id_g> -> P, [((x, gamma), y)] |-> gamma . y.
inline BibundleWitness right_unit_witness(const LieBibundle& p) {
  Lie2Functor id = Lie2Functor::identity(p.g);
  LieBibundle unit = bundle_of_functor(id);
  BibundleComposite comp = compose_bibundles_detail(p, unit);
  FiberProduct su = functor_bundle_space(id);
  std::vector<Vector> cols;
  for (std::size_t k = 0; k < comp.pairs.dim(); ++k) {
    Vector e = unit_vector(comp.pairs.dim(), k);
    cols.push_back(p.left_act(su.right_part(comp.pairs.left_part(e)), comp.pairs.right_part(e)));
  }
  Matrix map = comp.descend(Matrix::from_columns(cols, p.p.dim()));
  return {std::move(comp.bundle), p, std::move(map)};
}

/// R o (Q o P) -> (R o Q) o P, [([(x, y)], z)] |-> [(x, [(y, z)])].
inline BibundleWitness associator_witness(const LieBibundle& r, const LieBibundle& q, const LieBibundle& p) {
  BibundleComposite qp = compose_bibundles_detail(q, p);
  BibundleComposite left = compose_bibundles_detail(r, qp.bundle);
  BibundleComposite rq = compose_bibundles_detail(r, q);
  BibundleComposite right = compose_bibundles_detail(rq.bundle, p);
  std::vector<Vector> cols;
  for (std::size_t k = 0; k < left.pairs.dim(); ++k) {
    Vector e = unit_vector(left.pairs.dim(), k);
    auto [x, y] = qp.lift(left.pairs.left_part(e));
    Vector z = left.pairs.right_part(e);
    cols.push_back(right.project(x, rq.project(y, z)));
  }
  Matrix map = left.descend(Matrix::from_columns(cols, right.bundle.p.dim()));
  return {std::move(left.bundle), std::move(right.bundle), std::move(map)};
}

// ---------------------------------------------------------------------------
// Morita

/// Weak invertibility: aR surjective and (gamma, x) |-> (gamma . x, x) an
/// isomorphism g1 x_{s,aL} p -> p x_{aR,aR} p.
inline Report is_weakly_invertible(const LieBibundle& b) {
  Report report;
  report.subject = "weak_invertibility";
  Report base = verify_bibundle(b);
  report.derived["principality_domain_dim"] = base.derived["principality_domain_dim"];
  report.derived["principality_codomain_dim"] = base.derived["principality_codomain_dim"];

  bool surj = is_surjective(b.a_right.matrix);
  report.add("right anchor surjective", surj, surj ? "" : "aR has rank " + std::to_string(rank(b.a_right.matrix)));

  FiberProduct pairs = fiber_product(b.p, b.a_right.matrix, b.p, b.a_right.matrix, "w");
  std::vector<Vector> cols;
  std::string msg;
  for (std::size_t k = 0; k < b.left_domain.dim() && msg.empty(); ++k) {
    Vector e = unit_vector(b.left_domain.dim(), k);
    auto c = pairs.sub.space.coordinates(concat(b.act_left(e), b.left_domain.right_part(e)));
    if (!c) msg = "gamma . x leaves the aR-fiber of x";
    else cols.push_back(*c);
  }
  report.derived["left_principality_domain_dim"] = b.left_domain.dim();
  report.derived["left_principality_codomain_dim"] = pairs.dim();
  if (msg.empty()) {
    Matrix lambda = Matrix::from_columns(cols, pairs.dim());
    const std::size_t r = rank(lambda);
    report.derived["left_principality_rank"] = r;
    if (!is_bijective(lambda))
      msg = "map has rank " + std::to_string(r) + " from dimension " + std::to_string(b.left_domain.dim()) +
            " to dimension " + std::to_string(pairs.dim());
  }
  report.add("left action is principal over aR", msg.empty(), msg);
  return report;
}

/// Searches for a bibundle isomorphism P -> Q: the anchor and equivariance
/// conditions are linear in the candidate, so their solution space is
/// computed exactly and candidates from it are tested for bracket
/// preservation and bijectivity.
inline std::optional<Matrix> find_bibundle_isomorphism(const LieBibundle& p, const LieBibundle& q,
                                                       std::uint64_t seed = 0, std::size_t attempts = 64) {
  if (!same_lie2(p.g, q.g) || !same_lie2(p.h, q.h)) return std::nullopt;
  const std::size_t pd = p.p.dim(), qd = q.p.dim();
  if (pd != qd) return std::nullopt;
  const std::size_t unknowns = qd * pd;
  auto var = [pd](std::size_t i, std::size_t j) { return i * pd + j; };
  std::vector<Vector> rows;
  Vector rhs;
  auto add_row = [&](Vector row, const Scalar& value) {
    rows.push_back(std::move(row));
    rhs.push_back(value);
  };
  for (const auto* anchors : {&p.a_left, &p.a_right}) {
    const Matrix& aq = anchors == &p.a_left ? q.a_left.matrix : q.a_right.matrix;
    const Matrix& ap = anchors->matrix;
    for (std::size_t r = 0; r < aq.rows(); ++r)
      for (std::size_t j = 0; j < pd; ++j) {
        Vector row = zero_vector(unknowns);
        for (std::size_t i = 0; i < qd; ++i) row[var(i, j)] = aq(r, i);
        add_row(std::move(row), ap(r, j));
      }
  }
  // cand(a) - Ey cand(x) = Eo other, for each basis pair of an action domain.
  auto equivariance = [&](const FiberProduct& dom, const LieHom& act, const Matrix& ext, bool point_first,
                          std::size_t other_dim) {
    const std::size_t off_y = point_first ? 0 : other_dim, off_o = point_first ? qd : 0;
    for (std::size_t k = 0; k < dom.dim(); ++k) {
      Vector e = unit_vector(dom.dim(), k);
      Vector x = point_first ? dom.left_part(e) : dom.right_part(e);
      Vector other = point_first ? dom.right_part(e) : dom.left_part(e);
      Vector a = act(e);
      for (std::size_t r = 0; r < qd; ++r) {
        Vector row = zero_vector(unknowns);
        for (std::size_t j = 0; j < pd; ++j) row[var(r, j)] += a[j];
        for (std::size_t i = 0; i < qd; ++i) {
          const Scalar& ey = ext(r, off_y + i);
          if (is_zero(ey)) continue;
          for (std::size_t j = 0; j < pd; ++j) row[var(i, j)] -= ey * x[j];
        }
        Scalar value = 0;
        for (std::size_t m = 0; m < other_dim; ++m) value += ext(r, off_o + m) * other[m];
        add_row(std::move(row), value);
      }
    }
  };
  equivariance(p.left_domain, p.act_left, q.left_extension(), false, p.g.v1.dim());
  equivariance(p.right_domain, p.act_right, q.right_extension(), true, p.h.v1.dim());

  auto sol = solve(Matrix::from_rows(rows, unknowns), rhs);
  if (!sol) return std::nullopt;
  auto to_matrix = [&](const Vector& flat) {
    Matrix m(qd, pd);
    for (std::size_t i = 0; i < qd; ++i)
      for (std::size_t j = 0; j < pd; ++j) m(i, j) = flat[var(i, j)];
    return m;
  };
  auto accept = [&](const Vector& flat) -> std::optional<Matrix> {
    Matrix m = to_matrix(flat);
    if (verify_bibundle_morphism(p, q, m).passed()) return m;
    return std::nullopt;
  };
  std::vector<Vector> dirs = sol->kernel.basis();
  if (auto m = accept(sol->particular)) return m;
  for (const auto& d : dirs)
    for (int sign : {1, -1})
      if (auto m = accept(sol->particular + Scalar(sign) * d)) return m;
  if (dirs.empty()) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (std::size_t n = 0; n < attempts; ++n) {
    Vector flat = sol->particular;
    for (const auto& d : dirs) flat = flat + Scalar(coeff(rng)) * d;
    if (auto m = accept(flat)) return m;
  }
  return std::nullopt;
}

}  // namespace lie2
