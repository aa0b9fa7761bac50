#pragma once

// Seeded random instances for property tests: rational matrices, crossed
// modules and their morphisms, finite groupoids, functors and cocycles.

#include "fingpd/linking.hpp"
#include "lie2/lie_bibundle.hpp"

#include <random>

namespace lie2::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline bool coin(Rng& rng) { return uniform(rng, 0, 1) == 1; }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& xs) {
  return xs[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(xs.size()) - 1))];
}

/// Small rationals, occasionally with denominator 2 or 3.
inline Scalar random_scalar(Rng& rng) {
  Scalar x(uniform(rng, -3, 3), uniform(rng, 0, 3) == 0 ? uniform(rng, 2, 3) : 1);
  x.canonicalize();
  return x;
}

inline Vector random_vector(Rng& rng, std::size_t n) {
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_scalar(rng));
  return v;
}

inline Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_scalar(rng);
  return m;
}

inline Matrix random_invertible(Rng& rng, std::size_t n) {
  for (;;) {
    Matrix m = random_matrix(rng, n, n);
    if (is_bijective(m)) return m;
  }
}

// ---------------------------------------------------------------------------
// Crossed modules

/// The crossed module carried along invertible maps pm on m and pn on n,
/// so that (pm, pn) is an isomorphism from `cm` to the result.
inline CrossedModule transport(const CrossedModule& cm, const Matrix& pm, const Matrix& pn) {
  Matrix pm_inv = inverse(pm), pn_inv = inverse(pn);
  LieAlgebra m = change_basis(cm.m, pm_inv), n = change_basis(cm.n, pn_inv);
  std::vector<Matrix> action;
  for (std::size_t j = 0; j < n.dim(); ++j) {
    Matrix d(cm.m.dim(), cm.m.dim());
    Vector y = pn_inv.column(j);
    for (std::size_t k = 0; k < y.size(); ++k)
      if (!is_zero(y[k])) d = d + y[k] * cm.action[k];
    action.push_back(pm * d * pm_inv);
  }
  return CrossedModule(std::move(m), std::move(n), pn * cm.del.matrix * pm_inv, std::move(action));
}

inline Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.place(0, 0, a);
  m.place(a.rows(), a.cols(), b);
  return m;
}

inline CrossedModule direct_sum(const CrossedModule& a, const CrossedModule& b) {
  std::vector<Matrix> action;
  for (const auto& d : a.action) action.push_back(block_diagonal(d, Matrix(b.m.dim(), b.m.dim())));
  for (const auto& d : b.action) action.push_back(block_diagonal(Matrix(a.m.dim(), a.m.dim()), d));
  return CrossedModule(lie2::direct_sum(a.m, b.m), lie2::direct_sum(a.n, b.n), block_diagonal(a.del.matrix, b.del.matrix),
                       std::move(action));
}

inline CrossedModule zero_cm() { return fixtures::discrete_cm(LieAlgebra::abelian({})); }

/// The named base fixtures.
inline std::vector<std::pair<std::string, CrossedModule>> base_crossed_modules() {
  using namespace fixtures;
  return {{"heisCM", heis_cm()},
          {"abCM", ab_cm()},
          {"adCM(sl2)", ad_cm(sl2())},
          {"adCM(heis3)", ad_cm(heis3())},
          {"span{Z} in heis3", ideal_cm(heis3(), Subspace::span(3, {{0, 0, 1}}))}};
}

struct Perturbation {
  CrossedModule cm;
  std::string what;
};

/// Either a change of basis (keeps every axiom) or one changed entry of the
/// boundary, an action matrix or a bracket.
inline Perturbation perturb(Rng& rng, const CrossedModule& cm) {
  const std::size_t dm = cm.m.dim(), dn = cm.n.dim();
  switch (uniform(rng, 0, 3)) {
    case 0:
      return {transport(cm, random_invertible(rng, dm), random_invertible(rng, dn)), "change of basis"};
    case 1:
      if (dm > 0 && dn > 0) {
        CrossedModule out = cm;
        Matrix d = cm.del.matrix;
        d(uniform(rng, 0, dn - 1), uniform(rng, 0, dm - 1)) += uniform(rng, 1, 2);
        out.del = LieHom(out.m, out.n, d);
        return {out, "boundary entry"};
      }
      [[fallthrough]];
    case 2:
      if (dm > 0 && dn > 0) {
        CrossedModule out = cm;
        out.action[uniform(rng, 0, dn - 1)](uniform(rng, 0, dm - 1), uniform(rng, 0, dm - 1)) += uniform(rng, 1, 2);
        return {out, "action entry"};
      }
      [[fallthrough]];
    default: {
      if (dn < 2) return {cm, "unchanged"};
      std::size_t i = uniform(rng, 0, dn - 2), j = uniform(rng, i + 1, dn - 1), k = uniform(rng, 0, dn - 1);
      std::vector<Scalar> c = cm.n.constants();
      Scalar delta(uniform(rng, 1, 2));
      c[(i * dn + j) * dn + k] += delta;
      c[(j * dn + i) * dn + k] -= delta;
      CrossedModule out(cm.m, LieAlgebra(cm.n.names(), std::move(c)), cm.del.matrix, cm.action);
      return {out, "bracket of n"};
    }
  }
}

/// A crossed-module morphism a -> b given by (phi_m, phi_n).
struct CmMorphism {
  CrossedModule source;
  CrossedModule target;
  Matrix phi_m;
  Matrix phi_n;
  std::string what;

  Lie2Functor functor() const { return functor_of_cm_morphism(source, target, phi_m, phi_n); }
};

inline std::size_t v1_dim(const CrossedModule& cm) { return cm.m.dim() + cm.n.dim(); }

/// A random morphism out of `a` whose target has V1 of dimension at most
/// `max_dim`.
inline CmMorphism random_cm_morphism(Rng& rng, const CrossedModule& a, std::size_t max_dim) {
  const std::size_t dm = a.m.dim(), dn = a.n.dim();
  for (;;) {
    switch (uniform(rng, 0, 3)) {
      case 0: {
        Matrix pm = random_invertible(rng, dm), pn = random_invertible(rng, dn);
        return {a, transport(a, pm, pn), pm, pn, "isomorphism"};
      }
      case 1: {
        CrossedModule c = coin(rng) ? fixtures::discrete_cm(LieAlgebra::abelian({"T"})) : fixtures::heis_cm();
        if (v1_dim(a) + v1_dim(c) > max_dim) continue;
        CrossedModule b = direct_sum(a, c);
        Matrix im(b.m.dim(), dm), in(b.n.dim(), dn);
        im.place(0, 0, Matrix::identity(dm));
        in.place(0, 0, Matrix::identity(dn));
        return {a, std::move(b), std::move(im), std::move(in), "inclusion"};
      }
      case 2:
        return {a, zero_cm(), Matrix(0, dm), Matrix(0, dn), "to zero"};
      default:
        return {a, a, Matrix::identity(dm), Matrix::identity(dn), "identity"};
    }
  }
}

/// Projection from a + c onto a, for a given as the first summand.
inline CmMorphism projection(const CrossedModule& a, const CrossedModule& c) {
  CrossedModule s = direct_sum(a, c);
  Matrix pm(a.m.dim(), s.m.dim()), pn(a.n.dim(), s.n.dim());
  pm.place(0, 0, Matrix::identity(a.m.dim()));
  pn.place(0, 0, Matrix::identity(a.n.dim()));
  return {std::move(s), a, std::move(pm), std::move(pn), "projection"};
}

struct LieChain {
  Lie2Functor f;
  Lie2Functor g;
  std::string what;
};

/// Composable strict functors f: A -> B, g: B -> C with every V1 of
/// dimension at most max_dim.
inline LieChain random_lie_chain(Rng& rng, std::size_t max_dim = 8) {
  auto bases = base_crossed_modules();
  bases.push_back({"disc(heis3)", fixtures::discrete_cm(fixtures::heis3())});
  bases.push_back({"disc(sl2)", fixtures::discrete_cm(fixtures::sl2())});
  const auto& [name, a] = pick(rng, bases);
  if (uniform(rng, 0, 5) == 0) {
    CrossedModule c = fixtures::discrete_cm(LieAlgebra::abelian({"T"}));
    CmMorphism p = projection(a, c);
    CmMorphism g = random_cm_morphism(rng, a, max_dim);
    return {p.functor(), g.functor(), name + ": projection then " + g.what};
  }
  CmMorphism f = random_cm_morphism(rng, a, max_dim);
  CmMorphism g = random_cm_morphism(rng, f.target, max_dim);
  return {f.functor(), g.functor(), name + ": " + f.what + " then " + g.what};
}

// ---------------------------------------------------------------------------
// Finite groupoids

using fingpd::FinFunctor;
using fingpd::FinGroupoid;
using fingpd::GroupoidPtr;

/// codisc(k) x (Z_n or Z_2 x Z_2); transitive, at most max_objects objects.
inline FinGroupoid random_transitive(Rng& rng, std::size_t max_objects, std::size_t max_order = 4) {
  std::size_t k = uniform(rng, 1, static_cast<long>(max_objects));
  std::vector<std::string> objs;
  for (std::size_t i = 0; i < k; ++i) objs.push_back(std::string(1, static_cast<char>('a' + i)));
  FinGroupoid group = uniform(rng, 0, 4) == 0 && max_order >= 4
                          ? fingpd::product(fingpd::cyclic(2), fingpd::cyclic(2))
                          : fingpd::cyclic(uniform(rng, 1, static_cast<long>(std::min<std::size_t>(max_order, 3))));
  return fingpd::product(fingpd::codiscrete(objs), group);
}

/// A disjoint union of one or two transitive pieces.
inline FinGroupoid random_groupoid(Rng& rng, std::size_t max_objects = 4, std::size_t max_order = 4) {
  FinGroupoid g = random_transitive(rng, max_objects, max_order);
  if (g.object_count() < max_objects && coin(rng))
    return fingpd::disjoint_union(g, random_transitive(rng, max_objects - g.object_count(), max_order));
  return g;
}

inline FinFunctor random_functor(Rng& rng, const GroupoidPtr& g, const GroupoidPtr& h) {
  std::vector<FinFunctor> all = fingpd::all_functors(g, h, 4096);
  return pick(rng, all);
}

/// x -> (x, first object) into G x codisc(objs); an essential equivalence.
inline FinFunctor thickening(const GroupoidPtr& g, std::size_t copies) {
  std::vector<std::string> objs;
  for (std::size_t i = 0; i < copies; ++i) objs.push_back("c" + std::to_string(i));
  auto h = fingpd::share(fingpd::product(*g, fingpd::codiscrete(objs)));
  const std::size_t k = copies, k1 = copies * copies;
  std::vector<fingpd::Index> o, a;
  for (fingpd::Index x = 0; x < g->object_count(); ++x) o.push_back(x * k);
  for (fingpd::Index e = 0; e < g->arrow_count(); ++e) a.push_back(e * k1);
  return FinFunctor(g, h, std::move(o), std::move(a));
}

/// (x, c) -> x out of G x codisc(objs); an essential equivalence.
inline FinFunctor collapse(const GroupoidPtr& g, std::size_t copies) {
  std::vector<std::string> objs;
  for (std::size_t i = 0; i < copies; ++i) objs.push_back("c" + std::to_string(i));
  auto h = fingpd::share(fingpd::product(*g, fingpd::codiscrete(objs)));
  const std::size_t k = copies, k1 = copies * copies;
  std::vector<fingpd::Index> o, a;
  for (fingpd::Index x = 0; x < h->object_count(); ++x) o.push_back(x / k);
  for (fingpd::Index e = 0; e < h->arrow_count(); ++e) a.push_back(e / k1);
  return FinFunctor(h, g, std::move(o), std::move(a));
}

/// A biprincipal bibundle: the bundle of an essential equivalence, its
/// reverse, or a composite of two such.
inline fingpd::FinBibundle random_morita(Rng& rng) {
  auto g = fingpd::share(random_groupoid(rng, 2, 3));
  const std::size_t copies = uniform(rng, 1, 2);
  switch (uniform(rng, 0, 3)) {
    case 0:
      return fingpd::bundle_of_functor(thickening(g, copies));
    case 1:
      return fingpd::bundle_of_functor(collapse(g, copies));
    case 2:
      return fingpd::reverse_bibundle(fingpd::bundle_of_functor(thickening(g, copies)));
    default: {
      fingpd::FinBibundle c = fingpd::bundle_of_functor(collapse(g, copies));
      return fingpd::compose_bibundles(fingpd::reverse_bibundle(c), c);
    }
  }
}

// ---------------------------------------------------------------------------
// Cocycles

/// v_i = v_1 + d(a_i), u_ij = a_i - a_j, random weights summing to 1.
inline CocycleData random_cocycle(Rng& rng, std::size_t s, std::size_t u_dim, std::size_t w_dim) {
  CocycleData c;
  c.complex = TwoTermComplex(u_dim, w_dim, random_matrix(rng, w_dim, u_dim));
  Vector base = random_vector(rng, w_dim);
  std::vector<Vector> a;
  for (std::size_t i = 0; i < s; ++i) {
    a.push_back(i == 0 ? zero_vector(u_dim) : random_vector(rng, u_dim));
    c.objects.push_back(base + c.complex.del.apply(a.back()));
  }
  c.morphisms.assign(s, std::vector<Vector>(s));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) c.morphisms[i][j] = a[i] - a[j];
  Scalar rest(1);
  for (std::size_t i = 0; i + 1 < s; ++i) {
    c.weights.push_back(random_scalar(rng));
    rest -= c.weights.back();
  }
  c.weights.push_back(rest);
  return c;
}

}  // namespace lie2::testing
