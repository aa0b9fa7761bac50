#pragma once

#include "lie2/liealg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace lie2 {

/// Boundary del: m -> n and an action D: n -> Der(m), stored as the
/// endomorphisms D(e_j) of m for the basis e_j of n.
struct CrossedModule {
  LieAlgebra m;
  LieAlgebra n;
  LieHom del;
  std::vector<Matrix> action;

  CrossedModule() = default;
  CrossedModule(LieAlgebra m_, LieAlgebra n_, Matrix boundary, std::vector<Matrix> action_)
      : m(std::move(m_)), n(std::move(n_)), del(m, n, std::move(boundary)), action(std::move(action_)) {
    if (action.size() != n.dim()) throw DimensionError("action: one matrix per basis vector of n", n.dim(), action.size());
    for (const auto& d : action)
      if (d.rows() != m.dim() || d.cols() != m.dim()) throw DimensionError("action matrix", m.dim(), d.rows());
  }

  /// D(y) for an arbitrary element y of n.
  Matrix D(const Vector& y) const {
    if (y.size() != n.dim()) throw DimensionError("action argument", n.dim(), y.size());
    Matrix out(m.dim(), m.dim());
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!is_zero(y[j])) out = out + y[j] * action[j];
    return out;
  }
};

namespace cm_checks {
inline constexpr const char* m_lie = "m is a Lie algebra";
inline constexpr const char* n_lie = "n is a Lie algebra";
inline constexpr const char* boundary_hom = "boundary is a Lie algebra homomorphism";
inline constexpr const char* derivations = "action by derivations";
inline constexpr const char* action_hom = "action is a Lie algebra homomorphism";
inline constexpr const char* axiom_i = "crossed module axiom (i)";
inline constexpr const char* axiom_ii = "crossed module axiom (ii)";
}  // namespace cm_checks

inline Report verify_crossed_module(const CrossedModule& cm, std::string subject = "crossed_module") {
  Report report;
  report.subject = std::move(subject);
  const std::size_t dm = cm.m.dim(), dn = cm.n.dim();
  report.derived["dim_m"] = dm;
  report.derived["dim_n"] = dn;

  Report rm = verify_lie_algebra(cm.m);
  Report rn = verify_lie_algebra(cm.n);
  auto first = [](const Report& r) { return r.first_failure() ? r.first_failure()->id + ": " + r.first_failure()->detail : ""; };
  report.add(cm_checks::m_lie, rm.passed(), first(rm));
  report.add(cm_checks::n_lie, rn.passed(), first(rn));

  Report rh = verify_hom(cm.del);
  report.add(cm_checks::boundary_hom, rh.passed(), first(rh));

  Subspace der = derivation_space(cm.m);
  std::string detail;
  for (std::size_t j = 0; j < dn && detail.empty(); ++j)
    if (!der.contains(flatten(cm.action[j]))) detail = "D(" + cm.n.name(j) + ") is not a derivation of m";
  report.add(cm_checks::derivations, detail.empty(), detail);

  detail.clear();
  for (std::size_t a = 0; a < dn && detail.empty(); ++a)
    for (std::size_t b = a + 1; b < dn && detail.empty(); ++b) {
      Matrix lhs = cm.D(cm.n.bracket_basis(a, b));
      Matrix rhs = cm.action[a] * cm.action[b] - cm.action[b] * cm.action[a];
      if (!(lhs == rhs))
        detail = "D([" + cm.n.name(a) + "," + cm.n.name(b) + "]) != [D(" + cm.n.name(a) + "), D(" + cm.n.name(b) + ")]";
    }
  report.add(cm_checks::action_hom, detail.empty(), detail);

  // (i) del(D(y) x) = [y, del x]
  detail.clear();
  for (std::size_t j = 0; j < dn && detail.empty(); ++j)
    for (std::size_t i = 0; i < dm && detail.empty(); ++i) {
      Vector lhs = cm.del(cm.action[j].column(i));
      Vector rhs = cm.n.bracket(unit_vector(dn, j), cm.del.matrix.column(i));
      if (lhs != rhs)
        detail = "del(D(" + cm.n.name(j) + ")" + cm.m.name(i) + ") = " + format_element(cm.n, lhs) + " but [" +
                 cm.n.name(j) + ", del " + cm.m.name(i) + "] = " + format_element(cm.n, rhs);
    }
  report.add(cm_checks::axiom_i, detail.empty(), detail);

  // (ii) D(del x) x' = [x, x']
  detail.clear();
  for (std::size_t i = 0; i < dm && detail.empty(); ++i) {
    Matrix d = cm.D(cm.del.matrix.column(i));
    for (std::size_t k = 0; k < dm && detail.empty(); ++k) {
      Vector lhs = d.column(k);
      Vector rhs = cm.m.bracket_basis(i, k);
      if (lhs != rhs)
        detail = "D(del " + cm.m.name(i) + ")" + cm.m.name(k) + " = " + format_element(cm.m, lhs) + " but [" +
                 cm.m.name(i) + "," + cm.m.name(k) + "] = " + format_element(cm.m, rhs);
    }
  }
  report.add(cm_checks::axiom_ii, detail.empty(), detail);
  return report;
}

class CrossedModuleError : public std::invalid_argument {
 public:
  CrossedModuleError(std::string axiom, const std::string& detail)
      : std::invalid_argument("invalid crossed module: " + axiom + (detail.empty() ? "" : " (" + detail + ")")),
        axiom_(std::move(axiom)) {}
  const std::string& axiom() const noexcept { return axiom_; }

 private:
  std::string axiom_;
};

inline void require_crossed_module(const CrossedModule& cm) {
  Report r = verify_crossed_module(cm);
  if (const Check* bad = r.first_failure()) throw CrossedModuleError(bad->id, bad->detail);
}

namespace fixtures {

/// del: R -> heis3, c |-> Z, trivial action.
inline CrossedModule heis_cm() {
  LieAlgebra r = LieAlgebra::abelian({"c"});
  Matrix del(3, 1);
  del(2, 0) = 1;
  return CrossedModule(r, heis3(), del, std::vector<Matrix>(3, Matrix(1, 1)));
}

/// 0 -> l with the zero action: the discrete Lie 2-algebra on l.
inline CrossedModule discrete_cm(const LieAlgebra& l) {
  return CrossedModule(LieAlgebra::abelian({}), l, Matrix(l.dim(), 0), std::vector<Matrix>(l.dim(), Matrix(0, 0)));
}

inline CrossedModule ab_cm() { return discrete_cm(ab2()); }

/// id: l -> l with the adjoint action.
inline CrossedModule ad_cm(const LieAlgebra& l) {
  return CrossedModule(l, l, Matrix::identity(l.dim()), adjoint_action(l));
}

/// Inclusion of an ideal with the restricted adjoint action.
inline CrossedModule ideal_cm(const LieAlgebra& l, const Subspace& ideal) {
  require_ideal(l, ideal);
  EmbeddedAlgebra sub = subalgebra(l, ideal, "i");
  Matrix inc = sub.inclusion();
  std::vector<Matrix> action;
  for (std::size_t j = 0; j < l.dim(); ++j) {
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < sub.algebra.dim(); ++i)
      cols.push_back(sub.coordinates(l.bracket(unit_vector(l.dim(), j), inc.column(i))));
    action.push_back(Matrix::from_columns(cols, sub.algebra.dim()));
  }
  return CrossedModule(sub.algebra, l, inc, std::move(action));
}

}  // namespace fixtures
}  // namespace lie2
