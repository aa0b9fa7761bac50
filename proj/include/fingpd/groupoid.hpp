#pragma once

// Finite groupoids, functors and natural transformations, stored by index
// with string labels. Composition is written right to left: comp(b, a) is
// "b after a" and needs s(b) = t(a).

#include "lie2/report.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fingpd {

using lie2::Check;
using lie2::Report;
using Index = std::size_t;
inline constexpr Index none = static_cast<Index>(-1);

class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Upper bound on arrows (and bundle elements); LIE2_MAX_SIZE overrides it.
inline std::size_t max_size() {
  if (const char* env = std::getenv("LIE2_MAX_SIZE")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 10000;
}

inline void check_size(std::size_t n, const char* what) {
  const std::size_t cap = max_size();
  if (n > cap)
    throw SizeLimitError(std::string(what) + " has " + std::to_string(n) + " elements, above the limit of " +
                         std::to_string(cap) + " (set LIE2_MAX_SIZE to raise it)");
}

inline std::uint64_t pair_key(Index a, Index b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

/// Label -> index lookup.
class Labels {
 public:
  Labels() = default;
  explicit Labels(std::vector<std::string> names) : names_(std::move(names)) {
    for (Index i = 0; i < names_.size(); ++i)
      if (!index_.emplace(names_[i], i).second) throw std::invalid_argument("duplicate label '" + names_[i] + "'");
  }
  std::size_t size() const noexcept { return names_.size(); }
  const std::string& operator[](Index i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<Index> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  Index at(const std::string& name) const {
    auto i = find(name);
    if (!i) throw std::out_of_range("unknown label '" + name + "'");
    return *i;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Index> index_;
};

struct CompEntry {
  Index second;  // applied last
  Index first;
  Index result;
};

class FinGroupoid {
 public:
  FinGroupoid() = default;
  FinGroupoid(std::vector<std::string> objects, std::vector<std::string> arrows, std::vector<Index> src,
              std::vector<Index> tgt, std::vector<Index> unit, std::vector<Index> inv, const std::vector<CompEntry>& comp)
      : objects_(std::move(objects)),
        arrows_(std::move(arrows)),
        src_(std::move(src)),
        tgt_(std::move(tgt)),
        unit_(std::move(unit)),
        inv_(std::move(inv)) {
    check_size(arrows_.size(), "groupoid");
    const std::size_t n0 = objects_.size(), n1 = arrows_.size();
    if (src_.size() != n1 || tgt_.size() != n1 || inv_.size() != n1)
      throw std::invalid_argument("source, target and inverse must be given for every arrow");
    if (unit_.size() != n0) throw std::invalid_argument("a unit must be given for every object");
    for (Index a = 0; a < n1; ++a) {
      if (src_[a] >= n0 || tgt_[a] >= n0) throw std::out_of_range("arrow endpoint out of range");
      if (inv_[a] >= n1) throw std::out_of_range("inverse out of range");
    }
    for (Index x = 0; x < n0; ++x)
      if (unit_[x] >= n1) throw std::out_of_range("unit out of range");
    for (const auto& e : comp) {
      if (e.second >= n1 || e.first >= n1 || e.result >= n1) throw std::out_of_range("composition entry out of range");
      if (!comp_.emplace(pair_key(e.second, e.first), e.result).second)
        throw std::invalid_argument("composition of " + arrows_[e.second] + " and " + arrows_[e.first] + " given twice");
    }
    entries_ = comp;
    std::sort(entries_.begin(), entries_.end(), [](const CompEntry& x, const CompEntry& y) {
      return std::pair(x.second, x.first) < std::pair(y.second, y.first);
    });
    into_.assign(n0, {});
    out_.assign(n0, {});
    for (Index a = 0; a < n1; ++a) {
      into_[tgt_[a]].push_back(a);
      out_[src_[a]].push_back(a);
    }
  }

  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t arrow_count() const noexcept { return arrows_.size(); }
  const Labels& objects() const noexcept { return objects_; }
  const Labels& arrows() const noexcept { return arrows_; }

  Index s(Index a) const { return src_.at(a); }
  Index t(Index a) const { return tgt_.at(a); }
  Index unit(Index x) const { return unit_.at(x); }
  Index inv(Index a) const { return inv_.at(a); }

  /// b after a, or `none` if the table has no entry.
  Index comp(Index b, Index a) const {
    auto it = comp_.find(pair_key(b, a));
    return it == comp_.end() ? none : it->second;
  }

  /// Like comp(), but throws for non-composable or missing pairs.
  Index compose(Index b, Index a) const {
    Index r = comp(b, a);
    if (r == none) throw std::domain_error("no composite " + arrows_[b] + " o " + arrows_[a]);
    return r;
  }

  const std::vector<Index>& arrows_into(Index x) const { return into_.at(x); }
  const std::vector<Index>& arrows_out_of(Index x) const { return out_.at(x); }

  std::vector<Index> hom(Index x, Index y) const {
    std::vector<Index> out;
    for (Index a : out_.at(x))
      if (tgt_[a] == y) out.push_back(a);
    return out;
  }

  /// Composition entries sorted by (second, first).
  const std::vector<CompEntry>& comp_entries() const noexcept { return entries_; }

  const std::vector<Index>& sources() const noexcept { return src_; }
  const std::vector<Index>& targets() const noexcept { return tgt_; }
  const std::vector<Index>& units() const noexcept { return unit_; }
  const std::vector<Index>& inverses() const noexcept { return inv_; }

 private:
  Labels objects_, arrows_;
  std::vector<Index> src_, tgt_, unit_, inv_;
  std::unordered_map<std::uint64_t, Index> comp_;
  std::vector<CompEntry> entries_;
  std::vector<std::vector<Index>> into_, out_;
};

using GroupoidPtr = std::shared_ptr<const FinGroupoid>;

/// Equal labels and tables.
inline bool same_groupoid(const FinGroupoid& a, const FinGroupoid& b) {
  if (&a == &b) return true;
  if (a.objects().names() != b.objects().names() || a.arrows().names() != b.arrows().names()) return false;
  if (a.sources() != b.sources() || a.targets() != b.targets() || a.units() != b.units() || a.inverses() != b.inverses())
    return false;
  const auto& x = a.comp_entries();
  const auto& y = b.comp_entries();
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i].second != y[i].second || x[i].first != y[i].first || x[i].result != y[i].result) return false;
  return true;
}

inline bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b) { return same_groupoid(*a, *b); }

/// Builds a groupoid from arrow endpoints and a composition rule on labels;
/// units and inverses are found from the rule.
inline FinGroupoid groupoid_from_rule(std::vector<std::string> objects,
                                      const std::vector<std::tuple<std::string, std::string, std::string>>& arrows,
                                      const std::function<std::string(const std::string&, const std::string&)>& rule) {
  Labels objs(objects);
  std::vector<std::string> names;
  std::vector<Index> src, tgt;
  for (const auto& [name, s, t] : arrows) {
    names.push_back(name);
    src.push_back(objs.at(s));
    tgt.push_back(objs.at(t));
  }
  Labels arr(names);
  std::vector<CompEntry> comp;
  for (Index b = 0; b < names.size(); ++b)
    for (Index a = 0; a < names.size(); ++a)
      if (src[b] == tgt[a]) comp.push_back({b, a, arr.at(rule(names[b], names[a]))});
  std::vector<Index> unit(objects.size(), none), inv(names.size(), none);
  for (Index x = 0; x < objects.size(); ++x)
    for (Index a = 0; a < names.size() && unit[x] == none; ++a) {
      if (src[a] != x || tgt[a] != x) continue;
      bool neutral = true;
      for (const auto& e : comp)
        if ((e.second == a && e.result != e.first) || (e.first == a && e.result != e.second)) neutral = false;
      if (neutral) unit[x] = a;
    }
  for (Index x = 0; x < unit.size(); ++x)
    if (unit[x] == none) throw std::invalid_argument("no identity arrow at " + objects[x]);
  for (const auto& e : comp)
    if (e.result == unit[src[e.first]] && src[e.first] == tgt[e.second] && tgt[e.first] == src[e.second]) inv[e.first] = e.second;
  for (Index a = 0; a < inv.size(); ++a)
    if (inv[a] == none) throw std::invalid_argument("arrow " + names[a] + " has no inverse");
  return FinGroupoid(std::move(objects), std::move(names), std::move(src), std::move(tgt), std::move(unit),
                     std::move(inv), comp);
}

// ---------------------------------------------------------------------------
// Verification

namespace groupoid_checks {
inline constexpr const char* source_unit = "s o unit = id";
inline constexpr const char* target_unit = "t o unit = id";
inline constexpr const char* domain = "composition defined exactly on composable pairs";
inline constexpr const char* ends = "source and target of compositions";
inline constexpr const char* unit_law = "unit laws";
inline constexpr const char* associativity = "associativity";
inline constexpr const char* inverse_law = "inverse laws";
}  // namespace groupoid_checks

inline Report verify_groupoid(const FinGroupoid& g, std::string subject = "fin_groupoid") {
  Report report;
  report.subject = std::move(subject);
  report.derived["objects"] = g.object_count();
  report.derived["arrows"] = g.arrow_count();
  const auto& A = g.arrows();
  const auto& O = g.objects();

  std::string msg;
  for (Index x = 0; x < g.object_count() && msg.empty(); ++x)
    if (g.s(g.unit(x)) != x) msg = "s(1_" + O[x] + ") = " + O[g.s(g.unit(x))];
  report.add(groupoid_checks::source_unit, msg.empty(), msg);
  msg.clear();
  for (Index x = 0; x < g.object_count() && msg.empty(); ++x)
    if (g.t(g.unit(x)) != x) msg = "t(1_" + O[x] + ") = " + O[g.t(g.unit(x))];
  report.add(groupoid_checks::target_unit, msg.empty(), msg);

  msg.clear();
  for (Index b = 0; b < g.arrow_count() && msg.empty(); ++b)
    for (Index a = 0; a < g.arrow_count() && msg.empty(); ++a) {
      bool composable = g.s(b) == g.t(a);
      bool defined = g.comp(b, a) != none;
      if (composable && !defined) msg = "missing composite " + A[b] + " o " + A[a];
      if (!composable && defined) msg = "composite " + A[b] + " o " + A[a] + " defined although s(" + A[b] + ") != t(" + A[a] + ")";
    }
  report.add(groupoid_checks::domain, msg.empty(), msg);
  bool domain_ok = msg.empty();

  msg.clear();
  for (const auto& e : g.comp_entries()) {
    if (g.s(e.result) != g.s(e.first) || g.t(e.result) != g.t(e.second)) {
      msg = A[e.second] + " o " + A[e.first] + " = " + A[e.result] + " has the wrong endpoints";
      break;
    }
  }
  report.add(groupoid_checks::ends, msg.empty(), msg);

  msg.clear();
  for (Index a = 0; a < g.arrow_count() && msg.empty(); ++a) {
    Index l = g.comp(g.unit(g.t(a)), a), r = g.comp(a, g.unit(g.s(a)));
    if (l != a) msg = "1 o " + A[a] + " = " + (l == none ? std::string("undefined") : A[l]);
    else if (r != a) msg = A[a] + " o 1 = " + (r == none ? std::string("undefined") : A[r]);
  }
  report.add(groupoid_checks::unit_law, msg.empty(), msg);

  msg.clear();
  if (domain_ok) {
    for (Index c = 0; c < g.arrow_count() && msg.empty(); ++c)
      for (Index b : g.arrows_into(g.s(c))) {
        if (!msg.empty()) break;
        Index cb = g.comp(c, b);
        for (Index a : g.arrows_into(g.s(b))) {
          Index lhs = g.comp(cb, a), rhs = g.comp(c, g.comp(b, a));
          if (lhs != rhs) {
            msg = "triple (" + A[c] + ", " + A[b] + ", " + A[a] + "): (c o b) o a = " +
                  (lhs == none ? std::string("undefined") : A[lhs]) + " but c o (b o a) = " +
                  (rhs == none ? std::string("undefined") : A[rhs]);
            break;
          }
        }
      }
  } else {
    msg = "composition table incomplete";
  }
  report.add(groupoid_checks::associativity, msg.empty(), msg);

  msg.clear();
  for (Index a = 0; a < g.arrow_count() && msg.empty(); ++a) {
    Index i = g.inv(a);
    if (g.comp(i, a) != g.unit(g.s(a)) || g.comp(a, i) != g.unit(g.t(a))) msg = A[i] + " is not inverse to " + A[a];
  }
  report.add(groupoid_checks::inverse_law, msg.empty(), msg);
  return report;
}

// ---------------------------------------------------------------------------
// Functors and natural transformations

struct FinFunctor {
  GroupoidPtr source;
  GroupoidPtr target;
  std::vector<Index> on_objects;
  std::vector<Index> on_arrows;

  FinFunctor() = default;
  FinFunctor(GroupoidPtr src, GroupoidPtr tgt, std::vector<Index> objs, std::vector<Index> arrs)
      : source(std::move(src)), target(std::move(tgt)), on_objects(std::move(objs)), on_arrows(std::move(arrs)) {
    if (on_objects.size() != source->object_count() || on_arrows.size() != source->arrow_count())
      throw std::invalid_argument("functor must be given on every object and arrow");
    for (Index y : on_objects)
      if (y >= target->object_count()) throw std::out_of_range("functor object image out of range");
    for (Index b : on_arrows)
      if (b >= target->arrow_count()) throw std::out_of_range("functor arrow image out of range");
  }

  static FinFunctor identity(const GroupoidPtr& g) {
    std::vector<Index> o(g->object_count()), a(g->arrow_count());
    for (Index i = 0; i < o.size(); ++i) o[i] = i;
    for (Index i = 0; i < a.size(); ++i) a[i] = i;
    return FinFunctor(g, g, std::move(o), std::move(a));
  }

  Index object(Index x) const { return on_objects.at(x); }
  Index arrow(Index a) const { return on_arrows.at(a); }
};

/// k after f.
inline FinFunctor compose(const FinFunctor& k, const FinFunctor& f) {
  if (!same_groupoid(f.target, k.source)) throw std::invalid_argument("functor composition: middle groupoids differ");
  std::vector<Index> o, a;
  for (Index y : f.on_objects) o.push_back(k.object(y));
  for (Index b : f.on_arrows) a.push_back(k.arrow(b));
  return FinFunctor(f.source, k.target, std::move(o), std::move(a));
}

namespace functor_checks {
inline constexpr const char* source_square = "source square";
inline constexpr const char* target_square = "target square";
inline constexpr const char* unit_square = "unit square";
inline constexpr const char* comp_square = "composition square";
}  // namespace functor_checks

inline Report verify_functor(const FinFunctor& f, std::string subject = "fin_functor") {
  Report report;
  report.subject = std::move(subject);
  const FinGroupoid& g = *f.source;
  const FinGroupoid& h = *f.target;
  std::string msg;
  for (Index a = 0; a < g.arrow_count() && msg.empty(); ++a)
    if (h.s(f.arrow(a)) != f.object(g.s(a))) msg = "s(f(" + g.arrows()[a] + ")) != f(s(" + g.arrows()[a] + "))";
  report.add(functor_checks::source_square, msg.empty(), msg);
  msg.clear();
  for (Index a = 0; a < g.arrow_count() && msg.empty(); ++a)
    if (h.t(f.arrow(a)) != f.object(g.t(a))) msg = "t(f(" + g.arrows()[a] + ")) != f(t(" + g.arrows()[a] + "))";
  report.add(functor_checks::target_square, msg.empty(), msg);
  msg.clear();
  for (Index x = 0; x < g.object_count() && msg.empty(); ++x)
    if (f.arrow(g.unit(x)) != h.unit(f.object(x))) msg = "f(1_" + g.objects()[x] + ") is not an identity";
  report.add(functor_checks::unit_square, msg.empty(), msg);
  msg.clear();
  for (const auto& e : g.comp_entries()) {
    Index rhs = h.comp(f.arrow(e.second), f.arrow(e.first));
    if (f.arrow(e.result) != rhs) {
      msg = "f(" + g.arrows()[e.second] + " o " + g.arrows()[e.first] + ") = " + h.arrows()[f.arrow(e.result)] +
            " but f(" + g.arrows()[e.second] + ") o f(" + g.arrows()[e.first] + ") = " +
            (rhs == none ? std::string("undefined") : h.arrows()[rhs]);
      break;
    }
  }
  report.add(functor_checks::comp_square, msg.empty(), msg);
  return report;
}

inline bool is_functor(const FinFunctor& f) { return verify_functor(f).passed(); }

/// alpha: f => k with components alpha(x): f(x) -> k(x).
struct FinNatTrans {
  FinFunctor from;
  FinFunctor to;
  std::vector<Index> component;
};

inline Report verify_nat(const FinNatTrans& n, std::string subject = "fin_nat") {
  Report report;
  report.subject = std::move(subject);
  const FinGroupoid& g = *n.from.source;
  const FinGroupoid& h = *n.from.target;
  if (!same_groupoid(n.to.source, n.from.source) || !same_groupoid(n.to.target, n.from.target))
    throw std::invalid_argument("natural transformation between functors with different endpoints");
  if (n.component.size() != g.object_count()) throw std::invalid_argument("one component per object required");
  std::string msg;
  for (Index x = 0; x < g.object_count() && msg.empty(); ++x) {
    Index c = n.component[x];
    if (c >= h.arrow_count() || h.s(c) != n.from.object(x) || h.t(c) != n.to.object(x))
      msg = "component at " + g.objects()[x] + " is not an arrow f(x) -> k(x)";
  }
  report.add("component endpoints", msg.empty(), msg);
  bool ends_ok = msg.empty();
  msg.clear();
  for (Index a = 0; a < g.arrow_count() && msg.empty() && ends_ok; ++a) {
    Index lhs = h.comp(n.to.arrow(a), n.component[g.s(a)]);
    Index rhs = h.comp(n.component[g.t(a)], n.from.arrow(a));
    if (lhs != rhs) msg = "naturality square fails at " + g.arrows()[a];
  }
  report.add("naturality", msg.empty() && ends_ok, ends_ok ? msg : "components have wrong endpoints");
  return report;
}

// ---------------------------------------------------------------------------
// Enumeration

/// Every functor G -> H, in lexicographic order of the arrow assignment.
inline std::vector<FinFunctor> all_functors(const GroupoidPtr& g, const GroupoidPtr& h, std::size_t limit = 100000) {
  const FinGroupoid& G = *g;
  const FinGroupoid& H = *h;
  std::vector<FinFunctor> out;
  std::vector<Index> obj(G.object_count(), none), arr(G.arrow_count(), none);
  std::vector<std::vector<CompEntry>> touching(G.arrow_count());
  for (const auto& e : G.comp_entries())
    touching[std::max({e.second, e.first, e.result})].push_back(e);
  auto consistent = [&](Index a) {
    for (const auto& e : touching[a])
      if (arr[e.second] != none && arr[e.first] != none &&
          arr[e.result] != none && H.comp(arr[e.second], arr[e.first]) != arr[e.result])
        return false;
    return true;
  };
  std::function<void(Index)> assign_arrow = [&](Index a) {
    if (out.size() >= limit) return;
    if (a == G.arrow_count()) {
      out.emplace_back(g, h, obj, arr);
      return;
    }
    for (Index b : H.hom(obj[G.s(a)], obj[G.t(a)])) {
      if (G.unit(G.s(a)) == a && b != H.unit(obj[G.s(a)])) continue;
      arr[a] = b;
      if (consistent(a)) assign_arrow(a + 1);
      arr[a] = none;
    }
  };
  std::function<void(Index)> assign_object = [&](Index x) {
    if (x == G.object_count()) {
      assign_arrow(0);
      return;
    }
    for (Index y = 0; y < H.object_count(); ++y) {
      obj[x] = y;
      assign_object(x + 1);
    }
    obj[x] = none;
  };
  assign_object(0);
  return out;
}

/// Every natural transformation f => k.
inline std::vector<FinNatTrans> all_nats(const FinFunctor& f, const FinFunctor& k) {
  const FinGroupoid& G = *f.source;
  const FinGroupoid& H = *f.target;
  std::vector<FinNatTrans> out;
  std::vector<Index> comp(G.object_count(), none);
  std::function<void(Index)> rec = [&](Index x) {
    if (x == G.object_count()) {
      FinNatTrans n{f, k, comp};
      if (verify_nat(n).passed()) out.push_back(std::move(n));
      return;
    }
    for (Index c : H.hom(f.object(x), k.object(x))) {
      comp[x] = c;
      rec(x + 1);
    }
    comp[x] = none;
  };
  rec(0);
  return out;
}

// ---------------------------------------------------------------------------
// Equivalences and restriction

/// Fully faithful and essentially surjective, by hom-set and orbit checks.
inline Report is_essential_equivalence(const FinFunctor& f) {
  Report report;
  report.subject = "essential_equivalence";
  const FinGroupoid& G = *f.source;
  const FinGroupoid& H = *f.target;
  std::string msg;
  for (Index x = 0; x < G.object_count() && msg.empty(); ++x)
    for (Index y = 0; y < G.object_count() && msg.empty(); ++y) {
      std::vector<Index> src = G.hom(x, y);
      std::vector<Index> tgt = H.hom(f.object(x), f.object(y));
      std::vector<bool> hit(H.arrow_count(), false);
      bool injective = true;
      for (Index a : src) {
        if (hit[f.arrow(a)]) injective = false;
        hit[f.arrow(a)] = true;
      }
      if (!injective || src.size() != tgt.size())
        msg = "Hom(" + G.objects()[x] + "," + G.objects()[y] + ") has " + std::to_string(src.size()) +
              " arrows but Hom(" + H.objects()[f.object(x)] + "," + H.objects()[f.object(y)] + ") has " +
              std::to_string(tgt.size()) + (injective ? "" : " and the map is not injective");
    }
  report.add("fully faithful", msg.empty(), msg);
  msg.clear();
  std::vector<bool> reached(H.object_count(), false);
  for (Index x = 0; x < G.object_count(); ++x)
    for (Index a : H.arrows_out_of(f.object(x))) reached[H.t(a)] = true;
  for (Index y = 0; y < H.object_count() && msg.empty(); ++y)
    if (!reached[y]) msg = "object " + H.objects()[y] + " is not isomorphic to an image object";
  report.add("essentially surjective", msg.empty(), msg);
  return report;
}

struct Restriction {
  GroupoidPtr groupoid;
  FinFunctor inclusion;
  bool essential_equivalence = false;
};

/// The full subgroupoid on the objects `keep`.
inline Restriction full_subgroupoid(const GroupoidPtr& g, const std::vector<Index>& keep) {
  if (keep.empty()) throw std::invalid_argument("restriction to an empty set of objects");
  const FinGroupoid& G = *g;
  std::vector<Index> new_obj(G.object_count(), none), obj_map, arr_map;
  std::vector<std::string> onames, anames;
  for (Index x : keep) {
    if (x >= G.object_count()) throw std::out_of_range("object index out of range");
    if (new_obj[x] != none) continue;
    new_obj[x] = onames.size();
    onames.push_back(G.objects()[x]);
    obj_map.push_back(x);
  }
  std::vector<Index> new_arr(G.arrow_count(), none), src, tgt, inv, unit;
  for (Index a = 0; a < G.arrow_count(); ++a)
    if (new_obj[G.s(a)] != none && new_obj[G.t(a)] != none) {
      new_arr[a] = anames.size();
      anames.push_back(G.arrows()[a]);
      arr_map.push_back(a);
      src.push_back(new_obj[G.s(a)]);
      tgt.push_back(new_obj[G.t(a)]);
    }
  for (Index a : arr_map) inv.push_back(new_arr[G.inv(a)]);
  for (Index x : obj_map) unit.push_back(new_arr[G.unit(x)]);
  std::vector<CompEntry> comp;
  for (const auto& e : G.comp_entries())
    if (new_arr[e.second] != none && new_arr[e.first] != none)
      comp.push_back({new_arr[e.second], new_arr[e.first], new_arr[e.result]});
  auto sub = std::make_shared<const FinGroupoid>(std::move(onames), std::move(anames), std::move(src), std::move(tgt),
                                                 std::move(unit), std::move(inv), comp);
  FinFunctor inc(sub, g, std::move(obj_map), std::move(arr_map));
  bool eq = is_essential_equivalence(inc).passed();
  return {std::move(sub), std::move(inc), eq};
}

// ---------------------------------------------------------------------------
// Builders

/// Pair groupoid: one arrow "y<-x" from x to y for every pair.
inline FinGroupoid codiscrete(const std::vector<std::string>& objects) {
  std::vector<std::tuple<std::string, std::string, std::string>> arrows;
  for (const auto& x : objects)
    for (const auto& y : objects) arrows.emplace_back(y + "<-" + x, x, y);
  auto split = [](const std::string& a) {
    auto k = a.find("<-");
    return std::pair{a.substr(0, k), a.substr(k + 2)};
  };
  return groupoid_from_rule(objects, arrows, [&](const std::string& b, const std::string& a) {
    return split(b).first + "<-" + split(a).second;
  });
}

/// Only identity arrows "1_x".
inline FinGroupoid discrete(const std::vector<std::string>& objects) {
  std::vector<std::tuple<std::string, std::string, std::string>> arrows;
  for (const auto& x : objects) arrows.emplace_back("1_" + x, x, x);
  return groupoid_from_rule(objects, arrows, [](const std::string& b, const std::string&) { return b; });
}

/// Cyclic group of order n on the object "*", arrows "g^k".
inline FinGroupoid cyclic(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cyclic group of order 0");
  std::vector<std::tuple<std::string, std::string, std::string>> arrows;
  for (std::size_t k = 0; k < n; ++k) arrows.emplace_back("g^" + std::to_string(k), "*", "*");
  return groupoid_from_rule({"*"}, arrows, [n](const std::string& b, const std::string& a) {
    return "g^" + std::to_string((std::stoul(b.substr(2)) + std::stoul(a.substr(2))) % n);
  });
}

inline FinGroupoid point() { return codiscrete({"*"}); }

inline FinGroupoid product(const FinGroupoid& g, const FinGroupoid& h) {
  std::vector<std::string> objects;
  for (Index x = 0; x < g.object_count(); ++x)
    for (Index y = 0; y < h.object_count(); ++y) objects.push_back("(" + g.objects()[x] + "," + h.objects()[y] + ")");
  std::vector<std::string> arrows;
  std::vector<Index> src, tgt, inv, unit;
  const std::size_t hn0 = h.object_count(), hn1 = h.arrow_count();
  for (Index a = 0; a < g.arrow_count(); ++a)
    for (Index b = 0; b < hn1; ++b) {
      arrows.push_back("(" + g.arrows()[a] + "," + h.arrows()[b] + ")");
      src.push_back(g.s(a) * hn0 + h.s(b));
      tgt.push_back(g.t(a) * hn0 + h.t(b));
      inv.push_back(g.inv(a) * hn1 + h.inv(b));
    }
  for (Index x = 0; x < g.object_count(); ++x)
    for (Index y = 0; y < hn0; ++y) unit.push_back(g.unit(x) * hn1 + h.unit(y));
  std::vector<CompEntry> comp;
  for (const auto& e : g.comp_entries())
    for (const auto& f : h.comp_entries())
      comp.push_back({e.second * hn1 + f.second, e.first * hn1 + f.first, e.result * hn1 + f.result});
  return FinGroupoid(std::move(objects), std::move(arrows), std::move(src), std::move(tgt), std::move(unit),
                     std::move(inv), comp);
}

/// G + H with labels prefixed by the given tags.
inline FinGroupoid disjoint_union(const FinGroupoid& g, const FinGroupoid& h, const std::string& gtag = "0:",
                                  const std::string& htag = "1:") {
  std::vector<std::string> objects, arrows;
  std::vector<Index> src, tgt, inv, unit;
  const std::size_t o = g.object_count(), n = g.arrow_count();
  for (Index x = 0; x < o; ++x) objects.push_back(gtag + g.objects()[x]);
  for (Index y = 0; y < h.object_count(); ++y) objects.push_back(htag + h.objects()[y]);
  for (Index a = 0; a < n; ++a) {
    arrows.push_back(gtag + g.arrows()[a]);
    src.push_back(g.s(a));
    tgt.push_back(g.t(a));
    inv.push_back(g.inv(a));
  }
  for (Index b = 0; b < h.arrow_count(); ++b) {
    arrows.push_back(htag + h.arrows()[b]);
    src.push_back(o + h.s(b));
    tgt.push_back(o + h.t(b));
    inv.push_back(n + h.inv(b));
  }
  for (Index x = 0; x < o; ++x) unit.push_back(g.unit(x));
  for (Index y = 0; y < h.object_count(); ++y) unit.push_back(n + h.unit(y));
  std::vector<CompEntry> comp = g.comp_entries();
  for (const auto& e : h.comp_entries()) comp.push_back({n + e.second, n + e.first, n + e.result});
  return FinGroupoid(std::move(objects), std::move(arrows), std::move(src), std::move(tgt), std::move(unit),
                     std::move(inv), comp);
}

inline GroupoidPtr share(FinGroupoid g) {
  return std::make_shared<const FinGroupoid>(std::move(g));
}

}  // namespace fingpd
