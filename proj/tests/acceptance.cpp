// Acceptance suite: one PASS/FAIL line per criterion, all comparisons exact.
// Usage: acceptance FIXTURE_DIR [SEED]

#include "lie2/commands.hpp"
#include "support/generators.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

namespace {

using namespace lie2;
using namespace lie2::testing;
namespace fs = std::filesystem;

/// Collects failures; the first few are kept for the report line.
struct Tally {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    ++failures;
    if (notes.size() < 3) notes.push_back(what);
  }
  bool ok() const { return failures == 0 && cases > 0; }
};

// 1. lie2_of_crossed_module output verifies iff the input is a crossed
// module; single-axiom injections are named.
Tally crossed_module_lemma(Rng& rng) {
  Tally t;
  auto agree = [&](const CrossedModule& cm, const std::string& what) {
    bool cm_ok = verify_crossed_module(cm).passed();
    bool l2_ok = false;
    try {
      l2_ok = verify_lie2(lie2_of_crossed_module_unchecked(cm)).passed();
    } catch (const NotClosedError&) {
      // composable pairs do not form a subalgebra: no Lie 2-algebra at all
    }
    t.expect(cm_ok == l2_ok, what + ": crossed module " + (cm_ok ? "valid" : "invalid") + " but Lie 2-algebra " +
                                 (l2_ok ? "valid" : "invalid"));
    return cm_ok;
  };
  auto bases = base_crossed_modules();
  for (const auto& [name, cm] : bases) t.expect(agree(cm, name), name + " should be a crossed module");
  std::size_t valid = 0, invalid = 0;
  for (int k = 0; k < 200; ++k) {
    const auto& [name, cm] = pick(rng, bases);
    Perturbation p = perturb(rng, cm);
    (agree(p.cm, name + " / " + p.what) ? valid : invalid)++;
  }
  t.expect(valid > 0 && invalid > 0, "perturbations should produce both valid and invalid instances");

  auto single = [&](const CrossedModule& cm, const std::string& axiom, const std::string& what) {
    Report r = verify_crossed_module(cm);
    std::size_t failing = 0;
    for (const auto& c : r.checks) failing += c.pass ? 0 : 1;
    t.expect(r.failed(axiom) && failing == 1, what + " should fail only " + axiom);
    try {
      lie2_of_crossed_module(cm);
      t.expect(false, what + " should be rejected");
    } catch (const CrossedModuleError& e) {
      t.expect(e.axiom() == axiom, what + " rejected citing " + e.axiom());
    }
    agree(cm, what);
  };
  CrossedModule bad_i = fixtures::heis_cm();
  bad_i.del = LieHom(bad_i.m, bad_i.n, Matrix::from_rows({{1}, {0}, {0}}, 1));
  single(bad_i, "crossed module axiom (i)", "heisCM with boundary c -> X");
  LieAlgebra h = fixtures::heis3();
  CrossedModule bad_ii(h, LieAlgebra::abelian({}), Matrix(0, 3), {});
  single(bad_ii, "crossed module axiom (ii)", "heis3 -> 0");
  return t;
}

// 2. The Heisenberg Morita equivalence without a strict inverse.
Tally heisenberg_fixture() {
  Tally t;
  Lie2Functor phi = fixtures::heisenberg_functor();
  EquivalenceReport eq = functor_is_essential_equivalence(phi);
  t.expect(eq.fully_faithful && eq.essentially_surjective, "phi should be an essential equivalence");
  Report w = is_weakly_invertible(bundle_of_functor(phi));
  t.expect(w.passed(), "<phi> should be weakly invertible");
  t.expect(w.derived["principality_domain_dim"] == 3 && w.derived["principality_codomain_dim"] == 3,
           "principality map should be 3 -> 3");
  t.expect(w.derived["left_principality_domain_dim"] == 4 && w.derived["left_principality_codomain_dim"] == 4 &&
               w.derived["left_principality_rank"] == 4,
           "left principality map should be 4 -> 4 of rank 4");
  SectionDefects sd = section_defects(phi.f0);
  t.expect(sd.nonzero && sd.section_independent, "section defect should be nonzero and section-independent");
  const Vector z{0, 0, 1};
  bool all_z = !sd.defects.empty();
  for (const auto& d : sd.defects) all_z = all_z && d.size() == 1 && d[0] == z;
  t.expect(all_z, "every section should have defect Z");
  return t;
}

// 3. compose(<g>, <f>) = <g o f> and the unit laws, with verified witnesses.
Tally functoriality(Rng& rng) {
  Tally t;
  for (int k = 0; k < 100; ++k) {
    LieChain c = random_lie_chain(rng);
    std::string what = "Lie chain " + std::to_string(k) + " (" + c.what + ")";
    if (!verify_lie2_functor(c.f).passed() || !verify_lie2_functor(c.g).passed()) {
      t.expect(false, what + ": generated functor does not verify");
      continue;
    }
    LieBibundle bf = bundle_of_functor(c.f), bg = bundle_of_functor(c.g);
    LieBibundle gf = bundle_of_functor(compose(c.g, c.f));
    BibundleWitness w = functor_composite_witness(c.g, c.f);
    t.expect(verify_bibundle_morphism(compose_bibundles(bg, bf), gf, w.map).passed(), what + ": composite witness");
    LieBibundle id_left = bundle_of_functor(Lie2Functor::identity(c.f.target));
    LieBibundle id_right = bundle_of_functor(Lie2Functor::identity(c.f.source));
    t.expect(verify_bibundle_morphism(compose_bibundles(id_left, bf), bf, left_unit_witness(bf).map).passed(),
             what + ": left unit witness");
    t.expect(verify_bibundle_morphism(compose_bibundles(bf, id_right), bf, right_unit_witness(bf).map).passed(),
             what + ": right unit witness");
  }
  for (int k = 0; k < 100; ++k) {
    auto g0 = fingpd::share(random_groupoid(rng, 4, 3));
    auto g1 = fingpd::share(random_groupoid(rng, 4, 3));
    auto g2 = fingpd::share(random_groupoid(rng, 4, 3));
    fingpd::FinFunctor f = random_functor(rng, g0, g1), g = random_functor(rng, g1, g2);
    std::string what = "finite chain " + std::to_string(k);
    fingpd::FinBibundle bf = fingpd::bundle_of_functor(f), bg = fingpd::bundle_of_functor(g);
    fingpd::FinWitness w = fingpd::functor_composite_witness(g, f);
    t.expect(fingpd::verify_bibundle_map(fingpd::compose_bibundles(bg, bf), fingpd::bundle_of_functor(fingpd::compose(g, f)),
                                         w.map)
                 .passed(),
             what + ": composite witness");
    auto id_left = fingpd::bundle_of_functor(fingpd::FinFunctor::identity(g1));
    auto id_right = fingpd::bundle_of_functor(fingpd::FinFunctor::identity(g0));
    t.expect(fingpd::verify_bibundle_map(fingpd::compose_bibundles(id_left, bf), bf, fingpd::left_unit_witness(bf).map)
                 .passed(),
             what + ": left unit witness");
    t.expect(fingpd::verify_bibundle_map(fingpd::compose_bibundles(bf, id_right), bf, fingpd::right_unit_witness(bf).map)
                 .passed(),
             what + ": right unit witness");
  }
  return t;
}

/// Groupoids with at most 3 objects and 12 arrows used by the exhaustive checks.
/// Permutations of {0,1,2} written as image strings, composed right to left.
fingpd::FinGroupoid symmetric3() {
  std::vector<std::tuple<std::string, std::string, std::string>> arrows;
  for (const char* p : {"012", "021", "102", "120", "201", "210"}) arrows.emplace_back(p, "*", "*");
  return fingpd::groupoid_from_rule({"*"}, arrows, [](const std::string& b, const std::string& a) {
    std::string r(3, ' ');
    for (int i = 0; i < 3; ++i) r[i] = b[a[i] - '0'];
    return r;
  });
}

std::vector<std::pair<std::string, fingpd::GroupoidPtr>> small_groupoids() {
  using namespace fingpd;
  return {{"pt", share(point())},
          {"Z2", share(cyclic(2))},
          {"Z3", share(cyclic(3))},
          {"Z4", share(cyclic(4))},
          {"Z2xZ2", share(product(cyclic(2), cyclic(2)))},
          {"S3", share(symmetric3())},
          {"Z2+Z2", share(disjoint_union(cyclic(2), cyclic(2)))},
          {"disc2", share(discrete({"1", "2"}))},
          {"disc3", share(discrete({"1", "2", "3"}))},
          {"codisc2", share(codiscrete({"a", "b"}))},
          {"codisc3", share(codiscrete({"a", "b", "c"}))},
          {"Z2+pt", share(disjoint_union(cyclic(2), point()))},
          {"codisc2+pt", share(disjoint_union(codiscrete({"a", "b"}), point()))},
          {"codisc2+Z2", share(disjoint_union(codiscrete({"a", "b"}), cyclic(2)))},
          {"Z2xcodisc2", share(product(cyclic(2), codiscrete({"a", "b"})))},
          {"Z3xcodisc2", share(product(cyclic(3), codiscrete({"a", "b"})))}};
}

// 4. Natural transformations f => k and bundle isomorphisms <f> -> <k>
// correspond bijectively.
Tally folklore_round_trip(std::size_t& pairs_checked) {
  Tally t;
  auto family = small_groupoids();
  for (const auto& [gn, g] : family)
    for (const auto& [hn, h] : family) {
      std::vector<fingpd::FinFunctor> fs = fingpd::all_functors(g, h);
      for (const auto& f : fs)
        for (const auto& k : fs) {
          ++pairs_checked;
          std::string what = gn + " -> " + hn;
          auto nats = fingpd::all_nats(f, k);
          fingpd::FinBibundle bf = fingpd::bundle_of_functor(f), bk = fingpd::bundle_of_functor(k);
          auto isos = fingpd::all_bibundle_isomorphisms(bf, bk, nats.size() + 1);
          t.expect(isos.size() == nats.size(), what + ": " + std::to_string(nats.size()) + " transformations but " +
                                                   std::to_string(isos.size()) + " bundle isomorphisms");
          for (const auto& n : nats) {
            std::vector<fingpd::Index> delta = fingpd::bundle_iso_of_nat(n);
            bool ok = fingpd::verify_bibundle_map(bf, bk, delta).passed() &&
                      fingpd::nat_of_bundle_iso(f, k, delta).component == n.component;
            t.expect(ok, what + ": nat -> iso -> nat");
          }
          for (const auto& delta : isos)
            t.expect(fingpd::bundle_iso_of_nat(fingpd::nat_of_bundle_iso(f, k, delta)) == delta,
                     what + ": iso -> nat -> iso");
        }
    }
  return t;
}

// 5. Cocycle resolution and rejection of invalid cocycles.
Tally cocycles(Rng& rng) {
  Tally t;
  for (int k = 0; k < 100; ++k) {
    const std::size_t s = uniform(rng, 1, 6), u = uniform(rng, 1, 5), w = uniform(rng, 1, 5);
    CocycleData c = random_cocycle(rng, s, u, w);
    std::string what = "cocycle " + std::to_string(k) + " (s=" + std::to_string(s) + ")";
    std::vector<Cell> z = resolve_cocycle(c);
    bool all = z.size() == s;
    for (std::size_t i = 0; i < s && all; ++i)
      for (std::size_t j = 0; j < s && all; ++j)
        all = compose_cells(c.complex, z[i], invert_cell(c.complex, z[j])) == c.arrow(i, j);
    t.expect(all, what + ": w_ij = z_i z_j^-1");

    auto rejects = [&](CocycleData bad, const std::string& condition) {
      try {
        resolve_cocycle(bad);
        t.expect(false, what + ": accepted a cocycle violating " + condition);
      } catch (const CocycleError& e) {
        t.expect(e.condition() == condition, what + ": cited " + e.condition() + " instead of " + condition);
      }
    };
    Vector bump = unit_vector(u, uniform(rng, 0, u - 1));
    {
      CocycleData bad = c;
      bad.morphisms[s - 1][s - 1] = bad.morphisms[s - 1][s - 1] + bump;
      rejects(bad, cocycle_checks::identity);
    }
    if (s >= 2) {
      CocycleData bad = c;
      bad.morphisms[1][0] = bad.morphisms[1][0] + bump;
      rejects(bad, cocycle_checks::inverse);
      bad = c;
      bad.objects[1] = bad.objects[1] + unit_vector(w, 0);
      rejects(bad, cocycle_checks::boundary);
    }
    if (s >= 3) {
      CocycleData bad = c;
      bad.morphisms[0][1] = bad.morphisms[0][1] + bump;
      bad.morphisms[1][0] = bad.morphisms[1][0] - bump;
      rejects(bad, cocycle_checks::cocycle);
    }
    CocycleData bad = c;
    bad.weights[0] += Scalar(1, 7);
    rejects(bad, cocycle_checks::weights);
  }
  return t;
}

// 6. Linking groupoids of Morita equivalences.
Tally linking(Rng& rng) {
  Tally t;
  auto pt = fingpd::share(fingpd::point());
  auto ab = fingpd::share(fingpd::codiscrete({"a", "b"}));
  fingpd::FinBibundle fixture = fingpd::bundle_of_functor(fingpd::FinFunctor(pt, ab, {0}, {0}));
  fingpd::LinkingGroupoid l = fingpd::linking_groupoid(fixture);
  bool codiscrete3 = l.groupoid->object_count() == 3 && l.groupoid->arrow_count() == 9;
  for (fingpd::Index x = 0; x < 3 && codiscrete3; ++x)
    for (fingpd::Index y = 0; y < 3 && codiscrete3; ++y) codiscrete3 = l.groupoid->hom(x, y).size() == 1;
  t.expect(codiscrete3 && fingpd::verify_groupoid(*l.groupoid).passed(),
           "pt/codisc{a,b} linking groupoid should be the codiscrete groupoid on 3 objects");

  auto check = [&](const fingpd::FinBibundle& p, const std::string& what) {
    fingpd::LinkingGroupoid lg = fingpd::linking_groupoid(p);
    t.expect(fingpd::verify_groupoid(*lg.groupoid).passed(), what + ": linking groupoid verifies");
    t.expect(fingpd::is_essential_equivalence(lg.w_g).passed(), what + ": w_G essential equivalence");
    t.expect(fingpd::is_essential_equivalence(lg.w_h).passed(), what + ": w_H essential equivalence");
    fingpd::FinBibundle lhs = fingpd::compose_bibundles(fingpd::bundle_of_functor(lg.w_h), p);
    fingpd::FinBibundle rhs = fingpd::bundle_of_functor(lg.w_g);
    auto iso = fingpd::find_bibundle_isomorphism(lhs, rhs);
    t.expect(iso && fingpd::verify_bibundle_map(lhs, rhs, *iso).passed(), what + ": <w_H> o P = <w_G>");
  };
  check(fixture, "pt/codisc{a,b}");
  for (int k = 0; k < 50; ++k) check(random_morita(rng), "random Morita equivalence " + std::to_string(k));
  return t;
}

// 7. <f> is biprincipal exactly when f is an essential equivalence.
Tally equivalence_cross_check(Rng& rng, std::size_t& equivalences) {
  Tally t;
  for (int k = 0; k < 500; ++k) {
    fingpd::FinFunctor f;
    switch (k % 4) {
      case 0: {
        auto g = fingpd::share(random_groupoid(rng, 2, 3));
        f = coin(rng) ? thickening(g, uniform(rng, 1, 2)) : collapse(g, uniform(rng, 1, 2));
        break;
      }
      default:
        f = random_functor(rng, fingpd::share(random_groupoid(rng, 3, 3)), fingpd::share(random_groupoid(rng, 3, 3)));
    }
    bool ee = fingpd::is_essential_equivalence(f).passed();
    bool bi = fingpd::is_biprincipal(fingpd::bundle_of_functor(f)).passed();
    equivalences += ee ? 1 : 0;
    t.expect(ee == bi, "functor " + std::to_string(k) + ": essential equivalence " + (ee ? "yes" : "no") +
                           ", biprincipal " + (bi ? "yes" : "no"));
  }
  t.expect(equivalences > 0 && equivalences < 500, "the family should contain equivalences and non-equivalences");
  return t;
}

// 8. Build outputs re-verify; the corpus round-trips byte for byte.
Tally cli_closure(const fs::path& dir, std::size_t& built, std::size_t& files) {
  Tally t;
  std::vector<fs::path> all = cli::json_files(dir);
  for (const auto& p : cli::json_files(dir / "invalid")) all.push_back(p);
  for (const auto& path : all) {
    ++files;
    std::string text = io::read_file(path.string());
    io::Document d = io::parse_document(text);
    t.expect(io::emit_document(d) == text, path.filename().string() + ": round trip differs");
    io::decode(d);
  }
  for (const auto& path : cli::json_files(dir)) {
    io::Document d = io::load_document(path.string());
    for (const auto& verb : cli::build_verbs()) {
      io::Document out;
      try {
        out = cli::build(verb, d);
      } catch (const cli::KindError&) {
        continue;
      } catch (const cli::InputRejected&) {
        continue;
      }
      ++built;
      std::string what = verb + " " + path.filename().string();
      t.expect(cli::verify_document(out).passed(), what + ": output does not verify");
      std::string text = io::emit_document(out);
      t.expect(io::emit_document(io::parse_document(text)) == text, what + ": output does not round-trip");
    }
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance FIXTURE_DIR [SEED]\n";
    return 2;
  }
  const fs::path fixtures = argv[1];
  const std::uint64_t seed = argc > 2 ? std::stoull(argv[2]) : 20240601;
  Rng rng(seed);
  std::size_t pairs = 0, equivalences = 0, built = 0, files = 0;
  bool all = true;

  auto run = [&](int n, const std::string& title, const std::function<Tally()>& body,
                 const std::function<std::string()>& extra = {}) {
    auto start = std::chrono::steady_clock::now();
    Tally t;
    try {
      t = body();
    } catch (const std::exception& e) {
      t.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line << (t.ok() ? "PASS" : "FAIL") << " " << n << " " << title << ": " << t.cases << " checks";
    if (extra) line << ", " << extra();
    line.precision(1);
    line << std::fixed << " (" << secs << " s)";
    for (const auto& note : t.notes) line << "\n     " << note;
    std::cout << line.str() << std::endl;
    all = all && t.ok();
  };

  run(1, "crossed module lemma", [&] { return crossed_module_lemma(rng); });
  run(2, "Heisenberg Morita fixture", [&] { return heisenberg_fixture(); });
  run(3, "functoriality of bundles", [&] { return functoriality(rng); });
  run(4, "nat/iso round trip", [&] { return folklore_round_trip(pairs); },
      [&] { return std::to_string(pairs) + " functor pairs"; });
  run(5, "cocycle resolution", [&] { return cocycles(rng); });
  run(6, "linking groupoid", [&] { return linking(rng); });
  run(7, "biprincipal vs essential equivalence", [&] { return equivalence_cross_check(rng, equivalences); },
      [&] { return std::to_string(equivalences) + " equivalences"; });
  run(8, "CLI closure", [&] { return cli_closure(fixtures, built, files); },
      [&] { return std::to_string(built) + " builds, " + std::to_string(files) + " corpus files"; });
  return all ? 0 : 1;
}
