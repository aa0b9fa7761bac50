#include "lie2/commands.hpp"

#include <gtest/gtest.h>

using namespace lie2;
using namespace lie2::cli;

namespace {

io::Document fixture(const std::string& name) {
  return io::load_document(std::string(LIE2_FIXTURES) + "/" + name + ".json");
}

io::Document invalid(const std::string& name) {
  return io::load_document(std::string(LIE2_FIXTURES) + "/invalid/" + name + ".json");
}

}  // namespace

TEST(Verify, ValidCorpusPassesAndInvalidCorpusFails) {
  for (const auto& p : json_files(LIE2_FIXTURES)) EXPECT_TRUE(verify_document(io::load_document(p.string())).passed()) << p;
  for (const auto& p : json_files(std::string(LIE2_FIXTURES) + "/invalid"))
    EXPECT_FALSE(verify_document(io::load_document(p.string())).passed()) << p;
}

TEST(Verify, SubjectIsTheDocumentName) {
  Report r = verify_document(invalid("corrupted_sl2"));
  EXPECT_EQ(r.subject, "corrupted_sl2");
  EXPECT_TRUE(r.failed("Jacobi identity"));
}

TEST(Build, Lie2OfCrossedModuleAndBack) {
  io::Document l = build("lie2-of-cm", fixture("heisCM"));
  EXPECT_EQ(l.kind, "lie2_algebra");
  EXPECT_EQ(l.name, "lie2(heisCM)");
  io::Document back = build("cm-of-lie2", l);
  EXPECT_EQ(back.payload, fixture("heisCM").payload);
  EXPECT_EQ(io::emit_document(l).substr(0, 1), "{");
}

TEST(Build, RejectsWrongKindAndInvalidInput) {
  EXPECT_THROW(build("lie2-of-cm", fixture("heis3")), KindError);
  EXPECT_THROW(build("linking", fixture("phi")), KindError);
  EXPECT_THROW(build("fold", fixture("heisCM")), KindError);
  try {
    build("lie2-of-cm", invalid("heisCM_boundary_X"));
    FAIL() << "accepted";
  } catch (const InputRejected& e) {
    EXPECT_TRUE(e.report().failed(cm_checks::axiom_i));
  }
}

TEST(Build, LinkingNeedsBiprincipality) {
  io::Document l = build("linking", fixture("bundle_pt_codisc_ab"));
  EXPECT_EQ(l.kind, "fin_groupoid");
  EXPECT_EQ(l.payload, fixture("linking_pt_codisc_ab").payload);
  EXPECT_THROW(build("linking", fixture("bundle_disc12_pt")), InputRejected);
}

TEST(Build, BundleOfFunctorMatchesTheFixture) {
  EXPECT_EQ(build("bundle-of-functor", fixture("phi")).payload, fixture("bundle_phi").payload);
  EXPECT_EQ(build("bundle-of-functor", fixture("pt_to_codisc_ab")).payload, fixture("bundle_pt_codisc_ab").payload);
}

TEST(Compose, LieCompositeIsIsomorphicToTheOriginal) {
  io::Document c = compose(fixture("bundle_id_ab2"), fixture("bundle_phi"));
  EXPECT_EQ(c.name, "bundle_id_ab2 o bundle_phi");
  Report r = verify_document(c);
  check_against(r, c, fixture("bundle_phi"), 1);
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.derived.contains("isomorphism"));
}

TEST(Compose, FiniteCompositeIsIsomorphicToTheComposedFunctor) {
  io::Document bf = build("bundle-of-functor", fixture("pt_to_codisc_ab"));
  io::Document bg = build("bundle-of-functor", fixture("codisc_ab_to_pt"));
  io::Document c = compose(bg, bf);
  Report r = verify_document(c);
  check_against(r, c, build("bundle-of-functor", fixture("id_pt")), 0);
  EXPECT_TRUE(r.passed());
}

TEST(Compose, MismatchNamesBothMiddleStructures) {
  try {
    compose(fixture("bundle_phi"), fixture("bundle_phi"));
    FAIL() << "accepted";
  } catch (const InputRejected& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("middle structures differ"), std::string::npos);
    EXPECT_NE(what.find("V1 basis {E1, E2}"), std::string::npos) << what;
  }
  EXPECT_THROW(compose(fixture("bundle_phi"), fixture("bundle_pt_codisc_ab")), KindError);
  EXPECT_THROW(compose(fixture("heis3"), fixture("bundle_phi")), KindError);
}

TEST(Compose, AgainstRequiresMatchingKinds) {
  Report r;
  EXPECT_THROW(check_against(r, fixture("bundle_phi"), fixture("bundle_pt_codisc_ab"), 0), KindError);
  EXPECT_THROW(check_against(r, fixture("heis3"), fixture("heis3"), 0), KindError);
  check_against(r, fixture("bundle_pt_codisc_ab"), fixture("bundle_codisc_ab_pt"), 0);
  EXPECT_TRUE(r.failed("isomorphic to bundle_codisc_ab_pt"));
}

TEST(Morita, DispatchesOnKind) {
  EXPECT_TRUE(morita(fixture("bundle_phi")).passed());
  EXPECT_TRUE(morita(fixture("phi")).passed());
  EXPECT_FALSE(morita(fixture("projection")).passed());
  EXPECT_TRUE(morita(fixture("bundle_codisc_ab_pt")).passed());
  Report r = morita(fixture("disc12_to_pt"));
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.derived["bundle_biprincipal"], false);
  EXPECT_EQ(r.subject, "disc12_to_pt");
  EXPECT_THROW(morita(fixture("heis3")), KindError);
}

TEST(Resolve, ProducesAVerifiedCellList) {
  io::Document cells = resolve(fixture("cocycle_two_objects"));
  EXPECT_EQ(cells.kind, io::cell_list_kind);
  EXPECT_EQ(cells.name, "cells(cocycle_two_objects)");
  Report r = verify_document(io::parse_document(io::emit_document(cells)));
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.find("w_ij = z_i z_j^-1"));
  EXPECT_EQ(cells.payload["cells"][0]["u"][0], "-1/2");
  EXPECT_THROW(resolve(invalid("cocycle_bad_weights")), CocycleError);
  EXPECT_THROW(resolve(fixture("heis3")), KindError);
}

TEST(Resolve, TamperedCellListFails) {
  io::Document cells = resolve(fixture("cocycle_two_objects"));
  cells.payload["cells"][0]["u"][0] = "7";
  EXPECT_FALSE(verify_document(cells).passed());
}
