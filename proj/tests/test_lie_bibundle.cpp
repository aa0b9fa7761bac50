#include "lie2/lie_bibundle.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

using namespace lie2;
using namespace lie2::fixtures;
using lie2::testing::Rng;

namespace {

bool witnessed(const BibundleWitness& w) { return verify_bibundle_morphism(w.from, w.to, w.map).passed(); }

}  // namespace

TEST(FunctorBundle, HeisenbergBundleDimensions) {
  LieBibundle p = bundle_of_functor(heisenberg_functor());
  Report r = verify_bibundle(p);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.derived["dim_p"], 3);
  EXPECT_EQ(r.derived["principality_domain_dim"], 3);
  EXPECT_EQ(r.derived["principality_codomain_dim"], 3);
  EXPECT_EQ(r.derived["principality_rank"], 3);
}

TEST(FunctorBundle, IdentityBundleOfHeisenbergLie2Algebra) {
  LieBibundle p = bundle_of_functor(Lie2Functor::identity(lie2_of_crossed_module(heis_cm())));
  Report r = verify_bibundle(p);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.derived["dim_p"], 4);
}

TEST(WeakInvertibility, HeisenbergBundleIsWeaklyInvertible) {
  Report r = is_weakly_invertible(bundle_of_functor(heisenberg_functor()));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.derived["left_principality_domain_dim"], 4);
  EXPECT_EQ(r.derived["left_principality_codomain_dim"], 4);
  EXPECT_EQ(r.derived["left_principality_rank"], 4);
}

TEST(WeakInvertibility, ProjectionBundleIsNot) {
  Report r = is_weakly_invertible(bundle_of_functor(projection_functor()));
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(r.failed("left action is principal over aR"));
}

TEST(Bibundle, BrokenRightActionIsCaught) {
  LieBibundle p = bundle_of_functor(heisenberg_functor());
  Matrix right = p.right_extension();
  right(0, 0) += 1;
  LieBibundle bad = LieBibundle::from_extension(p.p, p.g, p.h, p.a_left.matrix, p.a_right.matrix, p.left_extension(), right);
  EXPECT_FALSE(verify_bibundle(bad).passed());
}

TEST(Composition, MismatchedMiddleIsRejected) {
  LieBibundle p = bundle_of_functor(heisenberg_functor());
  EXPECT_THROW(compose_bibundles(p, p), BibundleCompositionError);
}

TEST(Composition, CompositeOfFunctorBundlesIsWitnessed) {
  Lie2Functor phi = heisenberg_functor();
  Lie2Functor id_src = Lie2Functor::identity(phi.source), id_tgt = Lie2Functor::identity(phi.target);
  EXPECT_TRUE(witnessed(functor_composite_witness(id_tgt, phi)));
  EXPECT_TRUE(witnessed(functor_composite_witness(phi, id_src)));
}

TEST(Composition, UnitAndAssociatorWitnesses) {
  Lie2Functor phi = heisenberg_functor();
  LieBibundle p = bundle_of_functor(phi);
  LieBibundle i_src = bundle_of_functor(Lie2Functor::identity(phi.source));
  LieBibundle i_tgt = bundle_of_functor(Lie2Functor::identity(phi.target));
  EXPECT_TRUE(witnessed(left_unit_witness(p)));
  EXPECT_TRUE(witnessed(right_unit_witness(p)));
  EXPECT_TRUE(witnessed(associator_witness(i_tgt, p, i_src)));
}

TEST(Isomorphism, SearchFindsTheUnitIsomorphism) {
  LieBibundle p = bundle_of_functor(heisenberg_functor());
  BibundleWitness w = left_unit_witness(p);
  auto iso = find_bibundle_isomorphism(w.from, w.to, 3);
  ASSERT_TRUE(iso);
  EXPECT_TRUE(verify_bibundle_morphism(w.from, w.to, *iso).passed());
  EXPECT_FALSE(find_bibundle_isomorphism(p, bundle_of_functor(projection_functor())));
}

TEST(Isomorphism, MorphismChecksNameTheFailure) {
  LieBibundle p = bundle_of_functor(heisenberg_functor());
  Report r = verify_bibundle_morphism(p, p, Matrix(3, 3));
  EXPECT_TRUE(r.failed(morphism_checks::bijective));
}

TEST(BibundleProperty, RandomChainsAreFunctorial) {
  Rng rng(51);
  for (int k = 0; k < 15; ++k) {
    auto c = lie2::testing::random_lie_chain(rng, 7);
    LieBibundle bf = bundle_of_functor(c.f), bg = bundle_of_functor(c.g);
    ASSERT_TRUE(verify_bibundle(bf).passed()) << c.what;
    LieBibundle composite = compose_bibundles(bg, bf);
    EXPECT_TRUE(verify_bibundle(composite).passed()) << c.what;
    BibundleWitness w = functor_composite_witness(c.g, c.f);
    EXPECT_TRUE(verify_bibundle_morphism(composite, bundle_of_functor(compose(c.g, c.f)), w.map).passed()) << c.what;
    EXPECT_EQ(is_weakly_invertible(bf).passed(), functor_is_essential_equivalence(c.f).report.passed()) << c.what;
  }
}
