#pragma once

// Linking groupoid of a biprincipal bibundle P: G -> H. Objects are
// G0 + H0, arrows G1 + P + P^-1 + H1, where p in P is an arrow aR(p) -> aL(p)
// and p^-1 goes back. Mixed composites use the actions:
//   gamma o p = gamma . p          p o eta = p . eta
//   p^-1 o gamma = (gamma^-1 . p)^-1   eta o p^-1 = (p . eta^-1)^-1
//   p o q^-1 = the gamma with gamma . q = p
//   q^-1 o p = the eta with q . eta = p

#include "fingpd/bibundle.hpp"

namespace fingpd {

/// The report of is_essential_equivalence() with the biprincipality of <f>
/// recorded alongside.
inline Report essential_equivalence_report(const FinFunctor& f) {
  Report r = is_essential_equivalence(f);
  r.derived["fully_faithful"] = !r.failed("fully faithful");
  r.derived["essentially_surjective"] = !r.failed("essentially surjective");
  r.derived["bundle_biprincipal"] = is_biprincipal(bundle_of_functor(f)).passed();
  return r;
}

struct LinkingGroupoid {
  GroupoidPtr groupoid;
  FinFunctor w_g;
  FinFunctor w_h;
};

inline LinkingGroupoid linking_groupoid(const FinBibundle& b) {
  Report bi = is_biprincipal(b);
  if (const Check* bad = bi.first_failure())
    throw BibundleError("linking groupoid needs a biprincipal bibundle: " + bad->id + " (" + bad->detail + ")");
  const FinGroupoid& G = *b.g;
  const FinGroupoid& H = *b.h;
  const std::size_t g0 = G.object_count(), g1 = G.arrow_count(), n = b.size();
  const Index off_p = g1, off_pi = g1 + n, off_h = g1 + 2 * n;

  std::vector<std::string> objects, arrows;
  for (Index x = 0; x < g0; ++x) objects.push_back("G:" + G.objects()[x]);
  for (Index y = 0; y < H.object_count(); ++y) objects.push_back("H:" + H.objects()[y]);
  std::vector<Index> src, tgt, inv, unit;
  for (Index a = 0; a < g1; ++a) {
    arrows.push_back("G:" + G.arrows()[a]);
    src.push_back(G.s(a));
    tgt.push_back(G.t(a));
    inv.push_back(G.inv(a));
  }
  for (Index p = 0; p < n; ++p) {
    arrows.push_back("P:" + b.elements()[p]);
    src.push_back(g0 + b.a_right(p));
    tgt.push_back(b.a_left(p));
    inv.push_back(off_pi + p);
  }
  for (Index p = 0; p < n; ++p) {
    arrows.push_back("P^-1:" + b.elements()[p]);
    src.push_back(b.a_left(p));
    tgt.push_back(g0 + b.a_right(p));
    inv.push_back(off_p + p);
  }
  for (Index e = 0; e < H.arrow_count(); ++e) {
    arrows.push_back("H:" + H.arrows()[e]);
    src.push_back(g0 + H.s(e));
    tgt.push_back(g0 + H.t(e));
    inv.push_back(off_h + H.inv(e));
  }
  for (Index x = 0; x < g0; ++x) unit.push_back(G.unit(x));
  for (Index y = 0; y < H.object_count(); ++y) unit.push_back(off_h + H.unit(y));

  auto must = [](Index v, const char* what) {
    if (v == none) throw std::logic_error(std::string("linking composite undefined: ") + what);
    return v;
  };
  std::vector<CompEntry> comp;
  for (const auto& e : G.comp_entries()) comp.push_back(e);
  for (const auto& e : H.comp_entries()) comp.push_back({off_h + e.second, off_h + e.first, off_h + e.result});
  for (Index p = 0; p < n; ++p) {
    for (Index gm : G.arrows_out_of(b.a_left(p))) {
      comp.push_back({gm, off_p + p, off_p + must(b.left(gm, p), "gamma . p")});
    }
    for (Index gm : G.arrows_into(b.a_left(p))) {
      Index q = must(b.left(G.inv(gm), p), "gamma^-1 . p");
      comp.push_back({off_pi + p, gm, off_pi + q});
    }
    for (Index e : H.arrows_into(b.a_right(p))) {
      comp.push_back({off_p + p, off_h + e, off_p + must(b.right(p, e), "p . eta")});
    }
    for (Index e : H.arrows_out_of(b.a_right(p))) {
      Index q = must(b.right(p, H.inv(e)), "p . eta^-1");
      comp.push_back({off_h + e, off_pi + p, off_pi + q});
    }
  }
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q) {
      if (b.a_right(p) == b.a_right(q))
        comp.push_back({off_p + p, off_pi + q, must(left_quotient(b, p, q), "p o q^-1")});
      if (b.a_left(p) == b.a_left(q))
        comp.push_back({off_pi + q, off_p + p, off_h + must(right_quotient(b, q, p), "q^-1 o p")});
    }

  auto l = std::make_shared<const FinGroupoid>(std::move(objects), std::move(arrows), std::move(src), std::move(tgt),
                                               std::move(unit), std::move(inv), comp);
  std::vector<Index> go(g0), ga(g1), ho(H.object_count()), ha(H.arrow_count());
  for (Index x = 0; x < g0; ++x) go[x] = x;
  for (Index a = 0; a < g1; ++a) ga[a] = a;
  for (Index y = 0; y < ho.size(); ++y) ho[y] = g0 + y;
  for (Index e = 0; e < ha.size(); ++e) ha[e] = off_h + e;
  FinFunctor wg(b.g, l, std::move(go), std::move(ga));
  FinFunctor wh(b.h, l, std::move(ho), std::move(ha));
  return {std::move(l), std::move(wg), std::move(wh)};
}

}  // namespace fingpd
