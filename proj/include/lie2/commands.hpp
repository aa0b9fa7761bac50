#pragma once

// The operations behind the lie2 command-line tool, usable without a shell.

#include "lie2/document.hpp"

#include <cstdint>
#include <filesystem>

namespace lie2::cli {

enum ExitCode : int { exit_pass = 0, exit_fail = 1, exit_malformed = 2 };

/// The document has the wrong kind for the requested operation.
class KindError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The input to an operation does not verify; carries the failing report.
class InputRejected : public std::runtime_error {
 public:
  InputRejected(const std::string& what, Report r) : std::runtime_error(what), report_(std::move(r)) {}
  const Report& report() const noexcept { return report_; }

 private:
  Report report_;
};

inline std::string list_names(const std::vector<std::string>& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
  return out + "}";
}

inline std::string describe(const Lie2Algebra& a) {
  return "Lie 2-algebra with V1 basis " + list_names(a.v1.names()) + " and V0 basis " + list_names(a.v0.names());
}

inline std::string describe(const fingpd::FinGroupoid& g) {
  return "groupoid with objects " + list_names(g.objects().names()) + " and " + std::to_string(g.arrow_count()) +
         " arrows";
}

// ---------------------------------------------------------------------------
// verify

/// Runs the full axiom suite for a decoded structure. Composite structures
/// also report the checks of their constituents under a prefix.
inline Report verify_structure(const io::Structure& s, const std::string& subject) {
  struct Visitor {
    const std::string& subject;
    Report operator()(const LieAlgebra& l) const { return verify_lie_algebra(l, subject); }
    Report operator()(const CrossedModule& cm) const { return verify_crossed_module(cm, subject); }
    Report operator()(const Lie2Algebra& a) const { return verify_lie2(a, subject); }
    Report operator()(const Lie2Functor& f) const {
      Report r;
      r.subject = subject;
      r.absorb(verify_lie2(f.source), "source: ");
      r.absorb(verify_lie2(f.target), "target: ");
      Report own = verify_lie2_functor(f);
      r.absorb(own, "");
      r.derived = own.derived;
      return r;
    }
    Report operator()(const LieBibundle& b) const {
      Report r;
      r.subject = subject;
      r.absorb(verify_lie2(b.g), "left: ");
      r.absorb(verify_lie2(b.h), "right: ");
      Report own = verify_bibundle(b);
      r.absorb(own, "");
      r.derived = own.derived;
      return r;
    }
    Report operator()(const fingpd::FinGroupoid& g) const { return fingpd::verify_groupoid(g, subject); }
    Report operator()(const fingpd::FinFunctor& f) const {
      Report r;
      r.subject = subject;
      r.absorb(fingpd::verify_groupoid(*f.source), "source: ");
      if (f.target != f.source) r.absorb(fingpd::verify_groupoid(*f.target), "target: ");
      Report own = fingpd::verify_functor(f);
      r.absorb(own, "");
      r.derived = own.derived;
      return r;
    }
    Report operator()(const fingpd::FinBibundle& b) const {
      Report r;
      r.subject = subject;
      r.absorb(fingpd::verify_groupoid(*b.g), "left: ");
      if (b.h != b.g) r.absorb(fingpd::verify_groupoid(*b.h), "right: ");
      Report own = fingpd::verify_bibundle(b);
      r.absorb(own, "");
      r.derived = own.derived;
      return r;
    }
    Report operator()(const CocycleData& c) const { return verify_cocycle(c, subject); }
    Report operator()(const std::pair<CocycleData, std::vector<Cell>>& cl) const {
      Report r = verify_cocycle(cl.first, subject);
      const auto& [c, z] = cl;
      bool ok = z.size() == c.size();
      std::string detail = ok ? "" : "expected " + std::to_string(c.size()) + " cells";
      for (std::size_t i = 0; i < z.size() && ok; ++i)
        for (std::size_t j = 0; j < z.size() && ok; ++j) {
          try {
            ok = compose_cells(c.complex, z[i], invert_cell(c.complex, z[j])) == c.arrow(i, j);
          } catch (const std::invalid_argument&) {
            ok = false;
          }
          if (!ok) detail = "z_" + std::to_string(i + 1) + " z_" + std::to_string(j + 1) + "^-1 != w_" +
                            std::to_string(i + 1) + std::to_string(j + 1);
        }
      r.add("w_ij = z_i z_j^-1", ok, detail);
      return r;
    }
  };
  return std::visit(Visitor{subject}, s);
}

inline Report verify_document(const io::Document& d) { return verify_structure(io::decode(d), d.name); }

/// Searches for an isomorphism between two bibundle documents of the same
/// flavour and records the outcome as one more check.
inline void check_against(Report& r, const io::Document& a, const io::Document& b, std::uint64_t seed) {
  const std::string id = "isomorphic to " + b.name;
  io::Structure sa = io::decode(a), sb = io::decode(b);
  if (auto* p = std::get_if<LieBibundle>(&sa)) {
    auto* q = std::get_if<LieBibundle>(&sb);
    if (!q) throw KindError("--against needs two documents of the same bibundle kind, got " + a.kind + " and " + b.kind);
    auto iso = find_bibundle_isomorphism(*p, *q, seed);
    r.add(id, iso.has_value(), iso ? "" : "no isomorphism found among the candidates searched");
    if (iso) r.derived["isomorphism"] = io::encode_matrix(*iso);
    return;
  }
  if (auto* p = std::get_if<fingpd::FinBibundle>(&sa)) {
    auto* q = std::get_if<fingpd::FinBibundle>(&sb);
    if (!q) throw KindError("--against needs two documents of the same bibundle kind, got " + a.kind + " and " + b.kind);
    auto iso = fingpd::same_groupoid(p->g, q->g) && fingpd::same_groupoid(p->h, q->h)
                   ? fingpd::find_bibundle_isomorphism(*p, *q)
                   : std::nullopt;
    r.add(id, iso.has_value(), iso ? "" : "no equivariant bijection exists");
    if (iso) {
      Json m = Json::object();
      for (fingpd::Index x = 0; x < p->size(); ++x) m[p->elements()[x]] = q->elements()[(*iso)[x]];
      r.derived["isomorphism"] = m;
    }
    return;
  }
  throw KindError("--against applies to lie_bibundle and fin_bibundle documents, not " + a.kind);
}

// ---------------------------------------------------------------------------
// build

inline const std::vector<std::string>& build_verbs() {
  static const std::vector<std::string> verbs{"lie2-of-cm", "cm-of-lie2", "bundle-of-functor", "linking"};
  return verbs;
}

inline void require_verified(const io::Document& d) {
  Report r = verify_document(d);
  if (const Check* bad = r.first_failure())
    throw InputRejected("input '" + d.name + "' does not verify: " + bad->id + (bad->detail.empty() ? "" : " (" + bad->detail + ")"),
                        r);
}

inline io::Document build(const std::string& verb, const io::Document& in) {
  auto need = [&](std::initializer_list<const char*> kinds) {
    for (const char* k : kinds)
      if (in.kind == k) return;
    std::string want;
    for (const char* k : kinds) want += (want.empty() ? "" : " or ") + std::string(k);
    throw KindError("build " + verb + " expects a " + want + " document, got " + in.kind);
  };
  if (std::find(build_verbs().begin(), build_verbs().end(), verb) == build_verbs().end())
    throw KindError("unknown build verb '" + verb + "'");
  if (verb == "lie2-of-cm") need({"crossed_module"});
  else if (verb == "cm-of-lie2") need({"lie2_algebra"});
  else if (verb == "bundle-of-functor") need({"lie2_functor", "fin_functor"});
  else need({"fin_bibundle"});

  require_verified(in);
  io::Structure s = io::decode(in);
  if (verb == "lie2-of-cm") return io::document_of("lie2(" + in.name + ")", lie2_of_crossed_module(std::get<CrossedModule>(s)));
  if (verb == "cm-of-lie2") return io::document_of("cm(" + in.name + ")", crossed_module_of_lie2(std::get<Lie2Algebra>(s)));
  if (verb == "bundle-of-functor") {
    if (auto* f = std::get_if<Lie2Functor>(&s)) return io::document_of("<" + in.name + ">", bundle_of_functor(*f));
    return io::document_of("<" + in.name + ">", fingpd::bundle_of_functor(std::get<fingpd::FinFunctor>(s)));
  }
  const auto& b = std::get<fingpd::FinBibundle>(s);
  Report bi = fingpd::is_biprincipal(b);
  if (const Check* bad = bi.first_failure())
    throw InputRejected("linking groupoid needs a biprincipal bibundle: " + bad->id + " (" + bad->detail + ")", bi);
  return io::document_of("link(" + in.name + ")", *fingpd::linking_groupoid(b).groupoid);
}

// ---------------------------------------------------------------------------
// compose

/// Q after P. Both inputs must verify and P's right structure must equal
/// Q's left one.
inline io::Document compose(const io::Document& q_doc, const io::Document& p_doc) {
  for (const auto* d : {&q_doc, &p_doc})
    if (d->kind != "lie_bibundle" && d->kind != "fin_bibundle")
      throw KindError("compose expects bibundle documents, got " + d->kind);
  if (q_doc.kind != p_doc.kind) throw KindError("cannot compose a " + q_doc.kind + " with a " + p_doc.kind);
  require_verified(q_doc);
  require_verified(p_doc);
  io::Structure qs = io::decode(q_doc), ps = io::decode(p_doc);
  const std::string name = q_doc.name + " o " + p_doc.name;
  if (auto* q = std::get_if<LieBibundle>(&qs)) {
    const auto& p = std::get<LieBibundle>(ps);
    if (!same_lie2(p.h, q->g))
      throw InputRejected("middle structures differ: " + p_doc.name + " ends at the " + describe(p.h) + " but " +
                              q_doc.name + " starts at the " + describe(q->g),
                          Report{});
    return io::document_of(name, compose_bibundles(*q, p));
  }
  const auto& q = std::get<fingpd::FinBibundle>(qs);
  const auto& p = std::get<fingpd::FinBibundle>(ps);
  if (!fingpd::same_groupoid(p.h, q.g))
    throw InputRejected("middle structures differ: " + p_doc.name + " ends at the " + describe(*p.h) + " but " +
                            q_doc.name + " starts at the " + describe(*q.g),
                        Report{});
  return io::document_of(name, fingpd::compose_bibundles(q, p));
}

// ---------------------------------------------------------------------------
// morita

/// Weak invertibility of a bibundle, or essential equivalence of a functor.
inline Report morita(const io::Document& d) {
  if (d.kind != "lie_bibundle" && d.kind != "fin_bibundle" && d.kind != "lie2_functor" && d.kind != "fin_functor")
    throw KindError("morita expects a bibundle or functor document, got " + d.kind);
  require_verified(d);
  io::Structure s = io::decode(d);
  Report r;
  if (auto* b = std::get_if<LieBibundle>(&s)) r = is_weakly_invertible(*b);
  else if (auto* f = std::get_if<Lie2Functor>(&s)) r = functor_is_essential_equivalence(*f).report;
  else if (auto* fb = std::get_if<fingpd::FinBibundle>(&s)) r = fingpd::is_biprincipal(*fb);
  else r = fingpd::essential_equivalence_report(std::get<fingpd::FinFunctor>(s));
  r.subject = d.name;
  return r;
}

// ---------------------------------------------------------------------------
// resolve-cocycle

inline io::Document resolve(const io::Document& d) {
  if (d.kind != "cocycle") throw KindError("resolve-cocycle expects a cocycle document, got " + d.kind);
  CocycleData c = std::get<CocycleData>(io::decode(d));
  std::vector<Cell> z = resolve_cocycle(c);
  return io::make_document(io::cell_list_kind, "cells(" + d.name + ")", io::encode_cell_list(c, z));
}

// ---------------------------------------------------------------------------
// Directories

/// The *.json files of a directory in lexicographic order.
inline std::vector<std::filesystem::path> json_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lie2::cli
