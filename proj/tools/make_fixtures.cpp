// Writes the fixture corpus: valid documents under DIR, deliberately broken
// ones under DIR/invalid.

#include "lie2/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace lie2;
using namespace lie2::fixtures;
namespace fs = std::filesystem;

CocycleData two_object_cocycle() {
  CocycleData c;
  c.complex = TwoTermComplex(1, 2, Matrix::from_rows({{Scalar(1)}, {Scalar(0)}}, 1));
  c.objects = {{0, 0}, {1, 0}};
  c.morphisms = {{{0}, {-1}}, {{1}, {0}}};
  c.weights = {Scalar(1, 2), Scalar(1, 2)};
  return c;
}

CrossedModule heis_cm_bad_boundary() {
  CrossedModule cm = heis_cm();
  cm.del = LieHom(cm.m, cm.n, Matrix::from_rows({{1}, {0}, {0}}, 1));
  return cm;
}

std::vector<io::Document> valid_corpus() {
  using fingpd::FinFunctor;
  std::vector<io::Document> out;
  out.push_back(io::document_of("heis3", heis3()));
  out.push_back(io::document_of("sl2", sl2()));
  out.push_back(io::document_of("ab2", ab2()));
  out.push_back(io::document_of("borel2", borel(2)));
  out.push_back(io::document_of("heisCM", heis_cm()));
  out.push_back(io::document_of("abCM", ab_cm()));
  out.push_back(io::document_of("adCM_sl2", ad_cm(sl2())));
  out.push_back(io::document_of("adCM_heis3", ad_cm(heis3())));
  out.push_back(io::document_of("idealCM_Z_heis3", ideal_cm(heis3(), Subspace::span(3, {{0, 0, 1}}))));
  out.push_back(io::document_of("lie2_heisCM", lie2_of_crossed_module(heis_cm())));
  out.push_back(io::document_of("phi", heisenberg_functor()));
  out.push_back(io::document_of("projection", projection_functor()));
  out.push_back(io::document_of("bundle_phi", bundle_of_functor(heisenberg_functor())));
  out.push_back(io::document_of("bundle_id_ab2", bundle_of_functor(Lie2Functor::identity(heisenberg_functor().target))));
  out.push_back(io::document_of("cocycle_two_objects", two_object_cocycle()));

  auto pt = fingpd::share(fingpd::point());
  auto ab = fingpd::share(fingpd::codiscrete({"a", "b"}));
  auto z2 = fingpd::share(fingpd::cyclic(2));
  auto d12 = fingpd::share(fingpd::discrete({"1", "2"}));
  FinFunctor pt_ab(pt, ab, {0}, {0});
  out.push_back(io::document_of("ptGpd", *pt));
  out.push_back(io::document_of("codisc_ab", *ab));
  out.push_back(io::document_of("Z2", *z2));
  out.push_back(io::document_of("pt_to_codisc_ab", pt_ab));
  out.push_back(io::document_of("disc12_to_pt", FinFunctor(d12, pt, {0, 0}, {0, 0})));
  out.push_back(io::document_of("Z2_to_pt", FinFunctor(z2, pt, {0}, {0, 0})));
  out.push_back(io::document_of("codisc_ab_to_pt", FinFunctor(ab, pt, {0, 0}, {0, 0, 0, 0})));
  out.push_back(io::document_of("id_pt", FinFunctor::identity(pt)));
  fingpd::FinBibundle morita = fingpd::bundle_of_functor(pt_ab);
  out.push_back(io::document_of("bundle_pt_codisc_ab", morita));
  out.push_back(io::document_of("bundle_disc12_pt", fingpd::bundle_of_functor(FinFunctor(d12, pt, {0, 0}, {0, 0}))));
  out.push_back(io::document_of("bundle_codisc_ab_pt", fingpd::reverse_bibundle(morita)));
  out.push_back(io::document_of("linking_pt_codisc_ab", *fingpd::linking_groupoid(morita).groupoid));
  return out;
}

std::vector<io::Document> invalid_corpus() {
  std::vector<io::Document> out;
  out.push_back(io::document_of("corrupted_sl2", corrupted_sl2()));
  out.push_back(io::document_of("heisCM_boundary_X", heis_cm_bad_boundary()));
  CocycleData c = two_object_cocycle();
  c.weights = {Scalar(1, 2), Scalar(1, 3)};
  out.push_back(io::document_of("cocycle_bad_weights", c));
  return out;
}

void write_all(const fs::path& dir, const std::vector<io::Document>& docs) {
  fs::create_directories(dir);
  for (const auto& d : docs) {
    std::ofstream out(dir / (d.name + ".json"), std::ios::binary);
    out << io::emit_document(d);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Write the fixture corpus"};
  std::string dir = "fixtures";
  app.add_option("dir", dir, "Output directory");
  CLI11_PARSE(app, argc, argv);
  write_all(dir, valid_corpus());
  write_all(fs::path(dir) / "invalid", invalid_corpus());
  std::cout << "wrote fixtures to " << dir << "\n";
}
