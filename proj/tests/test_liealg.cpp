#include "lie2/liealg.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

using namespace lie2;
using namespace lie2::fixtures;
using lie2::testing::Rng;

TEST(LieAlgebra, FixturesSatisfyTheAxioms) {
  for (const auto& l : {heis3(), ab2(), sl2(), heisenberg(2), borel(3), nilpotent_upper(4), abelian(3)})
    EXPECT_TRUE(verify_lie_algebra(l).passed());
}

TEST(LieAlgebra, Sl2Brackets) {
  LieAlgebra l = sl2();
  EXPECT_EQ(l.bracket_basis(0, 1), (Vector{0, 2, 0}));
  EXPECT_EQ(l.bracket_basis(2, 0), (Vector{0, 0, 2}));
  EXPECT_EQ(l.bracket_basis(1, 2), (Vector{1, 0, 0}));
  EXPECT_EQ(format_element(l, l.bracket_basis(1, 0)), "-2*E");
}

TEST(LieAlgebra, CorruptedSl2NamesTheTriple) {
  Report r = verify_lie_algebra(corrupted_sl2());
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.failed("antisymmetry"));
  ASSERT_TRUE(r.failed("Jacobi identity"));
  EXPECT_EQ(r.find("Jacobi identity")->detail, "triple (H,E,F): cyclic sum = -2*E");
}

TEST(LieAlgebra, AntisymmetryFailureIsReported) {
  LieAlgebra l({"A", "B"}, {0, 0, 1, 0, 1, 0, 0, 0});
  Report r = verify_lie_algebra(l);
  EXPECT_TRUE(r.failed("antisymmetry"));
  EXPECT_NE(r.find("antisymmetry")->detail.find("[A,B]"), std::string::npos);
}

TEST(Derivations, DimensionsMatchTheOracle) {
  EXPECT_EQ(derivation_space(ab2()).dim(), 4u);
  EXPECT_EQ(derivation_space(sl2()).dim(), 3u);
  EXPECT_EQ(derivation_space(heis3()).dim(), 6u);
}

TEST(Center, DimensionsMatchTheOracle) {
  EXPECT_EQ(center(heis3()).dim(), 1u);
  EXPECT_EQ(center(sl2()).dim(), 0u);
  EXPECT_EQ(center(ab2()).dim(), 2u);
  EXPECT_TRUE(center(heis3()).contains(Vector{0, 0, 1}));
  EXPECT_EQ(derived_algebra(heis3()), center(heis3()));
}

TEST(Homomorphisms, QuotientOfHeisenbergByCenter) {
  LieQuotient q = lie_quotient(heis3(), center(heis3()));
  EXPECT_EQ(q.algebra.dim(), 2u);
  EXPECT_TRUE(q.algebra.is_abelian());
  EXPECT_TRUE(verify_hom(q.projection).passed());
  EXPECT_THROW(lie_quotient(heis3(), Subspace::span(3, {{1, 0, 0}})), NotAnIdealError);
}

TEST(Homomorphisms, SectionOfTheQuotientIsNotAHomomorphism) {
  LieHom s{ab2(), heis3(), Matrix::from_rows({{1, 0}, {0, 1}, {0, 0}}, 2)};
  Report r = verify_hom(s);
  EXPECT_FALSE(r.passed());
}

TEST(Subalgebra, KeepsAmbientNamesOnCoordinateVectors) {
  EmbeddedAlgebra z = subalgebra(heis3(), Subspace::span(3, {{0, 0, 1}}));
  EXPECT_EQ(z.algebra.names(), std::vector<std::string>{"Z"});
  EXPECT_THROW(subalgebra(heis3(), Subspace::span(3, {{1, 0, 0}, {0, 1, 0}})), NotClosedError);
}

TEST(FiberProduct, ProjectionsAgreeOverTheBase) {
  LieHom q = lie_quotient(heis3(), center(heis3())).projection;
  FiberProduct fp = lie_fiber_product(q, q);
  EXPECT_EQ(fp.dim(), 4u);
  EXPECT_TRUE(verify_lie_algebra(fp.algebra()).passed());
  for (std::size_t k = 0; k < fp.dim(); ++k) {
    Vector e = unit_vector(fp.dim(), k);
    EXPECT_EQ(q(fp.left_part(e)), q(fp.right_part(e)));
  }
}

TEST(LieProperty, ChangeOfBasisPreservesAxiomsAndInvariants) {
  Rng rng(21);
  for (int k = 0; k < 60; ++k) {
    LieAlgebra l = lie2::testing::pick(rng, std::vector<LieAlgebra>{heis3(), sl2(), borel(2), heisenberg(2)});
    Matrix p = lie2::testing::random_invertible(rng, l.dim());
    LieAlgebra m = change_basis(l, p);
    EXPECT_TRUE(verify_lie_algebra(m).passed());
    EXPECT_EQ(derivation_space(m).dim(), derivation_space(l).dim());
    EXPECT_EQ(center(m).dim(), center(l).dim());
    EXPECT_TRUE(verify_hom(LieHom{m, l, p}).passed());
  }
}

TEST(LieProperty, AdjointActsByDerivations) {
  for (const auto& l : {heis3(), sl2(), borel(3)}) {
    Subspace der = derivation_space(l);
    for (const auto& d : adjoint_action(l)) EXPECT_TRUE(der.contains(flatten(d)));
  }
}
