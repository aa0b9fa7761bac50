#pragma once

#include "fingpd/groupoid.hpp"

#include <deque>
#include <numeric>

namespace fingpd {

struct ActEntry {
  Index arrow;
  Index element;
  Index result;
};

/// Finite G-H bibundle: gamma . p needs s(gamma) = aL(p), p . eta needs
/// aR(p) = t(eta).
class FinBibundle {
 public:
  GroupoidPtr g;
  GroupoidPtr h;

  FinBibundle() = default;
  FinBibundle(GroupoidPtr left, GroupoidPtr right, std::vector<std::string> elements, std::vector<Index> a_left,
              std::vector<Index> a_right, const std::vector<ActEntry>& left_action,
              const std::vector<ActEntry>& right_action)
      : g(std::move(left)), h(std::move(right)), elements_(std::move(elements)), a_left_(std::move(a_left)),
        a_right_(std::move(a_right)) {
    check_size(elements_.size(), "bibundle");
    const std::size_t n = elements_.size();
    if (a_left_.size() != n || a_right_.size() != n) throw std::invalid_argument("anchors must be given on every element");
    for (Index p = 0; p < n; ++p)
      if (a_left_[p] >= g->object_count() || a_right_[p] >= h->object_count()) throw std::out_of_range("anchor out of range");
    auto load = [n](const std::vector<ActEntry>& in, std::size_t arrows, std::unordered_map<std::uint64_t, Index>& table,
                    std::vector<ActEntry>& sorted, const char* side) {
      for (const auto& e : in) {
        if (e.arrow >= arrows || e.element >= n || e.result >= n) throw std::out_of_range(std::string(side) + " action entry out of range");
        if (!table.emplace(pair_key(e.arrow, e.element), e.result).second)
          throw std::invalid_argument(std::string(side) + " action entry given twice");
      }
      sorted = in;
      std::sort(sorted.begin(), sorted.end(), [](const ActEntry& x, const ActEntry& y) {
        return std::pair(x.element, x.arrow) < std::pair(y.element, y.arrow);
      });
    };
    load(left_action, g->arrow_count(), left_, left_entries_, "left");
    load(right_action, h->arrow_count(), right_, right_entries_, "right");
  }

  std::size_t size() const noexcept { return elements_.size(); }
  const Labels& elements() const noexcept { return elements_; }
  Index a_left(Index p) const { return a_left_.at(p); }
  Index a_right(Index p) const { return a_right_.at(p); }
  const std::vector<Index>& left_anchor() const noexcept { return a_left_; }
  const std::vector<Index>& right_anchor() const noexcept { return a_right_; }

  /// gamma . p, or `none`.
  Index left(Index gamma, Index p) const {
    auto it = left_.find(pair_key(gamma, p));
    return it == left_.end() ? none : it->second;
  }
  /// p . eta, or `none`.
  Index right(Index p, Index eta) const {
    auto it = right_.find(pair_key(eta, p));
    return it == right_.end() ? none : it->second;
  }

  const std::vector<ActEntry>& left_entries() const noexcept { return left_entries_; }
  const std::vector<ActEntry>& right_entries() const noexcept { return right_entries_; }

 private:
  Labels elements_;
  std::vector<Index> a_left_, a_right_;
  std::unordered_map<std::uint64_t, Index> left_, right_;
  std::vector<ActEntry> left_entries_, right_entries_;
};


// ---------------------------------------------------------------------------
// Verification

namespace bundle_checks {
inline constexpr const char* left_domain = "left action defined exactly on anchor-matched pairs";
inline constexpr const char* right_domain = "right action defined exactly on anchor-matched pairs";
inline constexpr const char* left_anchors = "left action respects anchors";
inline constexpr const char* right_anchors = "right action respects anchors";
inline constexpr const char* left_unit = "left unitality";
inline constexpr const char* right_unit = "right unitality";
inline constexpr const char* left_assoc = "left associativity";
inline constexpr const char* right_assoc = "right associativity";
inline constexpr const char* commute = "actions commute";
inline constexpr const char* left_anchor_onto = "left anchor surjective";
inline constexpr const char* principal = "right action is principal";
inline constexpr const char* right_anchor_onto = "right anchor surjective";
inline constexpr const char* left_principal = "left action is principal";
}  // namespace bundle_checks

inline Report verify_bibundle(const FinBibundle& b, std::string subject = "fin_bibundle") {
  Report report;
  report.subject = std::move(subject);
  const FinGroupoid& G = *b.g;
  const FinGroupoid& H = *b.h;
  const auto& P = b.elements();
  report.derived["elements"] = b.size();
  auto name = [&](Index p) { return p == none ? std::string("undefined") : P[p]; };

  std::string msg;
  for (Index p = 0; p < b.size() && msg.empty(); ++p)
    for (Index gm = 0; gm < G.arrow_count() && msg.empty(); ++gm) {
      bool should = G.s(gm) == b.a_left(p), is = b.left(gm, p) != none;
      if (should != is) msg = G.arrows()[gm] + " . " + P[p] + (should ? " is undefined" : " is defined off the anchor");
    }
  report.add(bundle_checks::left_domain, msg.empty(), msg);
  bool left_ok = msg.empty();
  msg.clear();
  for (Index p = 0; p < b.size() && msg.empty(); ++p)
    for (Index e = 0; e < H.arrow_count() && msg.empty(); ++e) {
      bool should = H.t(e) == b.a_right(p), is = b.right(p, e) != none;
      if (should != is) msg = P[p] + " . " + H.arrows()[e] + (should ? " is undefined" : " is defined off the anchor");
    }
  report.add(bundle_checks::right_domain, msg.empty(), msg);
  bool right_ok = msg.empty();

  msg.clear();
  for (const auto& e : b.left_entries())
    if (b.a_left(e.result) != G.t(e.arrow) || b.a_right(e.result) != b.a_right(e.element)) {
      msg = "anchors of " + G.arrows()[e.arrow] + " . " + P[e.element] + " = " + P[e.result] + " are wrong";
      break;
    }
  report.add(bundle_checks::left_anchors, msg.empty(), msg);
  msg.clear();
  for (const auto& e : b.right_entries())
    if (b.a_right(e.result) != H.s(e.arrow) || b.a_left(e.result) != b.a_left(e.element)) {
      msg = "anchors of " + P[e.element] + " . " + H.arrows()[e.arrow] + " = " + P[e.result] + " are wrong";
      break;
    }
  report.add(bundle_checks::right_anchors, msg.empty(), msg);

  msg.clear();
  for (Index p = 0; p < b.size() && msg.empty(); ++p)
    if (b.left(G.unit(b.a_left(p)), p) != p) msg = "1 . " + P[p] + " = " + name(b.left(G.unit(b.a_left(p)), p));
  report.add(bundle_checks::left_unit, msg.empty(), msg);
  msg.clear();
  for (Index p = 0; p < b.size() && msg.empty(); ++p)
    if (b.right(p, H.unit(b.a_right(p))) != p) msg = P[p] + " . 1 = " + name(b.right(p, H.unit(b.a_right(p))));
  report.add(bundle_checks::right_unit, msg.empty(), msg);

  msg.clear();
  if (left_ok) {
    for (Index p = 0; p < b.size() && msg.empty(); ++p)
      for (Index g1 : G.arrows_out_of(b.a_left(p))) {
        Index q = b.left(g1, p);
        if (q == none || !msg.empty()) break;
        for (Index g2 : G.arrows_out_of(G.t(g1))) {
          Index lhs = b.left(G.comp(g2, g1), p), rhs = b.left(g2, q);
          if (lhs != rhs) {
            msg = "(" + G.arrows()[g2] + " o " + G.arrows()[g1] + ") . " + P[p] + " = " + name(lhs) + " but " +
                  G.arrows()[g2] + " . (" + G.arrows()[g1] + " . " + P[p] + ") = " + name(rhs);
            break;
          }
        }
      }
  } else {
    msg = "left action incomplete";
  }
  report.add(bundle_checks::left_assoc, msg.empty(), msg);
  msg.clear();
  if (right_ok) {
    for (Index p = 0; p < b.size() && msg.empty(); ++p)
      for (Index e1 : H.arrows_into(b.a_right(p))) {
        Index q = b.right(p, e1);
        if (q == none || !msg.empty()) break;
        for (Index e2 : H.arrows_into(H.s(e1))) {
          Index lhs = b.right(q, e2), rhs = b.right(p, H.comp(e1, e2));
          if (lhs != rhs) {
            msg = "(" + P[p] + " . " + H.arrows()[e1] + ") . " + H.arrows()[e2] + " = " + name(lhs) + " but " + P[p] +
                  " . (" + H.arrows()[e1] + " o " + H.arrows()[e2] + ") = " + name(rhs);
            break;
          }
        }
      }
  } else {
    msg = "right action incomplete";
  }
  report.add(bundle_checks::right_assoc, msg.empty(), msg);

  msg.clear();
  if (left_ok && right_ok) {
    for (Index p = 0; p < b.size() && msg.empty(); ++p)
      for (Index gm : G.arrows_out_of(b.a_left(p))) {
        if (!msg.empty()) break;
        for (Index e : H.arrows_into(b.a_right(p))) {
          Index gp = b.left(gm, p), pe = b.right(p, e);
          Index lhs = gp == none ? none : b.right(gp, e);
          Index rhs = pe == none ? none : b.left(gm, pe);
          if (lhs != rhs || lhs == none) {
            msg = "(" + G.arrows()[gm] + " . " + P[p] + ") . " + H.arrows()[e] + " = " + name(lhs) + " but " +
                  G.arrows()[gm] + " . (" + P[p] + " . " + H.arrows()[e] + ") = " + name(rhs);
            break;
          }
        }
      }
  } else {
    msg = "actions incomplete";
  }
  report.add(bundle_checks::commute, msg.empty(), msg);

  msg.clear();
  std::vector<std::size_t> fiber(G.object_count(), 0);
  for (Index p = 0; p < b.size(); ++p) ++fiber[b.a_left(p)];
  for (Index x = 0; x < G.object_count() && msg.empty(); ++x)
    if (fiber[x] == 0) msg = "no element over " + G.objects()[x];
  report.add(bundle_checks::left_anchor_onto, msg.empty(), msg);

  // eta |-> p . eta must be a bijection from arrows into aR(p) onto the aL-fiber of p.
  msg.clear();
  for (Index p = 0; p < b.size() && msg.empty(); ++p) {
    std::vector<bool> hit(b.size(), false);
    std::size_t count = 0;
    for (Index e : H.arrows_into(b.a_right(p))) {
      Index q = b.right(p, e);
      if (q == none || b.a_left(q) != b.a_left(p)) {
        msg = P[p] + " . " + H.arrows()[e] + " leaves the left-anchor fiber";
        break;
      }
      if (hit[q]) {
        msg = "right action not free at " + P[p] + " (two arrows give " + P[q] + ")";
        break;
      }
      hit[q] = true;
      ++count;
    }
    if (msg.empty() && count != fiber[b.a_left(p)])
      msg = "right action not transitive on the fiber of " + P[p];
  }
  report.add(bundle_checks::principal, msg.empty(), msg);
  return report;
}

class BibundleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require_bibundle(const FinBibundle& b, const char* role = "bibundle") {
  Report r = verify_bibundle(b);
  if (const Check* bad = r.first_failure())
    throw BibundleError(std::string("invalid ") + role + ": " + bad->id + " (" + bad->detail + ")");
}


/// Bibundle checks plus the mirror conditions: aR surjective and the left
/// action free and transitive on aR-fibers.
inline Report is_biprincipal(const FinBibundle& b) {
  Report report = verify_bibundle(b);
  report.subject = "biprincipality";
  const FinGroupoid& G = *b.g;
  const FinGroupoid& H = *b.h;
  const auto& P = b.elements();
  std::vector<std::size_t> fiber(H.object_count(), 0);
  for (Index p = 0; p < b.size(); ++p) ++fiber[b.a_right(p)];
  std::string msg;
  for (Index y = 0; y < H.object_count() && msg.empty(); ++y)
    if (fiber[y] == 0) msg = "no element over " + H.objects()[y];
  report.add(bundle_checks::right_anchor_onto, msg.empty(), msg);
  msg.clear();
  for (Index p = 0; p < b.size() && msg.empty(); ++p) {
    std::vector<bool> hit(b.size(), false);
    std::size_t count = 0;
    for (Index gm : G.arrows_out_of(b.a_left(p))) {
      Index q = b.left(gm, p);
      if (q == none || b.a_right(q) != b.a_right(p)) {
        msg = G.arrows()[gm] + " . " + P[p] + " leaves the right-anchor fiber";
        break;
      }
      if (hit[q]) {
        msg = "left action not free at " + P[p];
        break;
      }
      hit[q] = true;
      ++count;
    }
    if (msg.empty() && count != fiber[b.a_right(p)])
      msg = "left action not transitive on the right-anchor fiber of " + P[p] + " (" + std::to_string(count) +
            " of " + std::to_string(fiber[b.a_right(p)]) + " elements reached)";
  }
  report.add(bundle_checks::left_principal, msg.empty(), msg);
  return report;
}

// ---------------------------------------------------------------------------
// <f>

/// <f> with the pairs (x, gamma) behind each element.
struct FunctorBundle {
  FinBibundle bundle;
  std::vector<std::pair<Index, Index>> pairs;
  std::unordered_map<std::uint64_t, Index> index;

  Index element(Index x, Index gamma) const {
    auto it = index.find(pair_key(x, gamma));
    if (it == index.end()) throw std::out_of_range("pair is not an element of the bundle");
    return it->second;
  }
};

/// P = {(x, gamma) : f(x) = t(gamma)}, aL = x, aR = s(gamma),
/// g . (x, gamma) = (t g, f(g) gamma), (x, gamma) . nu = (x, gamma nu).
inline FunctorBundle functor_bundle(const FinFunctor& f) {
  const FinGroupoid& G = *f.source;
  const FinGroupoid& H = *f.target;
  FunctorBundle out;
  std::vector<std::string> names;
  std::vector<Index> al, ar;
  for (Index x = 0; x < G.object_count(); ++x)
    for (Index gamma : H.arrows_into(f.object(x))) {
      out.index.emplace(pair_key(x, gamma), out.pairs.size());
      out.pairs.emplace_back(x, gamma);
      names.push_back("(" + G.objects()[x] + "," + H.arrows()[gamma] + ")");
      al.push_back(x);
      ar.push_back(H.s(gamma));
    }
  std::vector<ActEntry> left, right;
  for (Index p = 0; p < out.pairs.size(); ++p) {
    auto [x, gamma] = out.pairs[p];
    for (Index gm : G.arrows_out_of(x))
      left.push_back({gm, p, out.element(G.t(gm), H.compose(f.arrow(gm), gamma))});
    for (Index nu : H.arrows_into(H.s(gamma))) right.push_back({nu, p, out.element(x, H.compose(gamma, nu))});
  }
  out.bundle = FinBibundle(f.source, f.target, std::move(names), std::move(al), std::move(ar), left, right);
  return out;
}

inline FinBibundle bundle_of_functor(const FinFunctor& f) { return functor_bundle(f).bundle; }

/// x |-> (x, 1_{f x}).
inline std::vector<Index> canonical_section(const FunctorBundle& fb, const FinFunctor& f) {
  std::vector<Index> sigma;
  for (Index x = 0; x < f.source->object_count(); ++x)
    sigma.push_back(fb.element(x, f.target->unit(f.object(x))));
  return sigma;
}

class SectionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unique eta with p . eta = q, if any.
inline Index right_quotient(const FinBibundle& b, Index p, Index q) {
  for (Index e : b.h->arrows_into(b.a_right(p)))
    if (b.right(p, e) == q) return e;
  return none;
}

/// Unique gamma with gamma . q = p, if any.
inline Index left_quotient(const FinBibundle& b, Index p, Index q) {
  for (Index gm : b.g->arrows_out_of(b.a_left(q)))
    if (b.left(gm, q) == p) return gm;
  return none;
}

/// f(x) = aR(sigma x); f(gamma) is the unique tau with sigma(y) . tau = gamma . sigma(x).
inline FinFunctor functor_of_section(const FinBibundle& b, const std::vector<Index>& sigma) {
  const FinGroupoid& G = *b.g;
  if (sigma.size() != G.object_count()) throw SectionError("section must be given on every object");
  for (Index x = 0; x < sigma.size(); ++x)
    if (sigma[x] >= b.size() || b.a_left(sigma[x]) != x)
      throw SectionError("not a section of the left anchor at object " + G.objects()[x]);
  require_bibundle(b);
  std::vector<Index> obj, arr;
  for (Index x = 0; x < sigma.size(); ++x) obj.push_back(b.a_right(sigma[x]));
  for (Index gm = 0; gm < G.arrow_count(); ++gm) {
    Index tau = right_quotient(b, sigma[G.t(gm)], b.left(gm, sigma[G.s(gm)]));
    if (tau == none) throw std::logic_error("principality violated while solving for the induced arrow");
    arr.push_back(tau);
  }
  return FinFunctor(b.g, b.h, std::move(obj), std::move(arr));
}

// ---------------------------------------------------------------------------
// Bibundle maps

namespace map_checks {
inline constexpr const char* bijective = "bijective";
inline constexpr const char* left_anchor = "left anchor";
inline constexpr const char* right_anchor = "right anchor";
inline constexpr const char* left_equivariance = "left equivariance";
inline constexpr const char* right_equivariance = "right equivariance";
}  // namespace map_checks

inline Report verify_bibundle_map(const FinBibundle& p, const FinBibundle& q, const std::vector<Index>& d,
                                  std::string subject = "fin_bibundle_map") {
  if (!same_groupoid(p.g, q.g) || !same_groupoid(p.h, q.h))
    throw std::invalid_argument("bibundles have different source or target groupoids");
  if (d.size() != p.size()) throw std::invalid_argument("map must be given on every element");
  for (Index v : d)
    if (v >= q.size()) throw std::out_of_range("map value out of range");
  Report report;
  report.subject = std::move(subject);
  std::vector<bool> hit(q.size(), false);
  std::string msg = p.size() == q.size() ? "" : "sizes differ";
  for (Index x = 0; x < d.size() && msg.empty(); ++x) {
    if (hit[d[x]]) msg = "two elements map to " + q.elements()[d[x]];
    hit[d[x]] = true;
  }
  report.add(map_checks::bijective, msg.empty(), msg);
  msg.clear();
  for (Index x = 0; x < d.size() && msg.empty(); ++x)
    if (q.a_left(d[x]) != p.a_left(x)) msg = "left anchor changes at " + p.elements()[x];
  report.add(map_checks::left_anchor, msg.empty(), msg);
  msg.clear();
  for (Index x = 0; x < d.size() && msg.empty(); ++x)
    if (q.a_right(d[x]) != p.a_right(x)) msg = "right anchor changes at " + p.elements()[x];
  report.add(map_checks::right_anchor, msg.empty(), msg);
  msg.clear();
  for (const auto& e : p.left_entries())
    if (q.left(e.arrow, d[e.element]) != d[e.result]) {
      msg = "d(" + p.g->arrows()[e.arrow] + " . " + p.elements()[e.element] + ") != " + p.g->arrows()[e.arrow] + " . d(" +
            p.elements()[e.element] + ")";
      break;
    }
  report.add(map_checks::left_equivariance, msg.empty(), msg);
  msg.clear();
  for (const auto& e : p.right_entries())
    if (q.right(d[e.element], e.arrow) != d[e.result]) {
      msg = "d(" + p.elements()[e.element] + " . " + p.h->arrows()[e.arrow] + ") != d(" + p.elements()[e.element] +
            ") . " + p.h->arrows()[e.arrow];
      break;
    }
  report.add(map_checks::right_equivariance, msg.empty(), msg);
  return report;
}

class NotEquivariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// delta: <f> -> <k> gives alpha(x) with delta(x, 1_{f x}) = (x, 1_{k x}) . alpha(x).
inline FinNatTrans nat_of_bundle_iso(const FinFunctor& f, const FinFunctor& k, const std::vector<Index>& delta) {
  FunctorBundle bf = functor_bundle(f), bk = functor_bundle(k);
  Report r = verify_bibundle_map(bf.bundle, bk.bundle, delta);
  if (const Check* bad = r.first_failure()) throw NotEquivariantError("not a bibundle isomorphism: " + bad->id + " (" + bad->detail + ")");
  std::vector<Index> sf = canonical_section(bf, f), sk = canonical_section(bk, k);
  std::vector<Index> comp;
  for (Index x = 0; x < sf.size(); ++x) {
    Index e = right_quotient(bk.bundle, sk[x], delta[sf[x]]);
    if (e == none) throw std::logic_error("principality violated while reading off the component");
    comp.push_back(e);
  }
  return {f, k, std::move(comp)};
}

/// (x, gamma) |-> (x, alpha(x) gamma).
inline std::vector<Index> bundle_iso_of_nat(const FinNatTrans& n) {
  Report r = verify_nat(n);
  if (const Check* bad = r.first_failure()) throw std::invalid_argument("not a natural transformation: " + bad->detail);
  FunctorBundle bf = functor_bundle(n.from), bk = functor_bundle(n.to);
  std::vector<Index> d;
  for (auto [x, gamma] : bf.pairs) d.push_back(bk.element(x, n.from.target->compose(n.component[x], gamma)));
  return d;
}

// ---------------------------------------------------------------------------
// Composition

/// Q o P as orbits of {(p, q) : aR p = aL q} under (p, q) ~ (p . eta, eta^-1 . q).
struct FinComposite {
  FinBibundle bundle;
  std::vector<std::pair<Index, Index>> pairs;
  std::vector<Index> orbit;           // pair -> element
  std::vector<Index> representative;  // element -> pair
  std::unordered_map<std::uint64_t, Index> pair_index;

  Index element(Index p, Index q) const {
    auto it = pair_index.find(pair_key(p, q));
    if (it == pair_index.end()) throw std::out_of_range("not a composable pair");
    return orbit[it->second];
  }
};

inline FinComposite compose_bibundles_detail(const FinBibundle& q, const FinBibundle& p) {
  if (!same_groupoid(p.h, q.g)) throw BibundleError("middle groupoids of the two bibundles differ");
  require_bibundle(p, "right-hand bibundle");
  require_bibundle(q, "left-hand bibundle");
  const FinGroupoid& H = *p.h;
  FinComposite out;
  for (Index x = 0; x < p.size(); ++x)
    for (Index y = 0; y < q.size(); ++y)
      if (p.a_right(x) == q.a_left(y)) {
        out.pair_index.emplace(pair_key(x, y), out.pairs.size());
        out.pairs.emplace_back(x, y);
      }
  check_size(out.pairs.size(), "fiber product");
  std::vector<Index> parent(out.pairs.size());
  std::iota(parent.begin(), parent.end(), Index{0});
  std::function<Index(Index)> find = [&](Index i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
  for (Index i = 0; i < out.pairs.size(); ++i) {
    auto [x, y] = out.pairs[i];
    for (Index e : H.arrows_into(p.a_right(x))) {
      Index j = out.pair_index.at(pair_key(p.right(x, e), q.left(H.inv(e), y)));
      Index a = find(i), b = find(j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  out.orbit.assign(out.pairs.size(), none);
  std::vector<std::string> names;
  std::vector<Index> al, ar;
  for (Index i = 0; i < out.pairs.size(); ++i) {
    Index r = find(i);
    if (out.orbit[r] == none) {
      out.orbit[r] = out.representative.size();
      out.representative.push_back(r);
      auto [x, y] = out.pairs[r];
      names.push_back("[" + p.elements()[x] + "|" + q.elements()[y] + "]");
      al.push_back(p.a_left(x));
      ar.push_back(q.a_right(y));
    }
    out.orbit[i] = out.orbit[r];
  }
  std::vector<ActEntry> left, right;
  for (Index c = 0; c < out.representative.size(); ++c) {
    auto [x, y] = out.pairs[out.representative[c]];
    for (Index gm : p.g->arrows_out_of(p.a_left(x))) left.push_back({gm, c, out.element(p.left(gm, x), y)});
    for (Index k : q.h->arrows_into(q.a_right(y))) right.push_back({k, c, out.element(x, q.right(y, k))});
  }
  out.bundle = FinBibundle(p.g, q.h, std::move(names), std::move(al), std::move(ar), left, right);
  return out;
}

inline FinBibundle compose_bibundles(const FinBibundle& q, const FinBibundle& p) {
  return compose_bibundles_detail(q, p).bundle;
}

/// P^-1: an H-G bibundle on formal inverses, eta . p^-1 = (p . eta^-1)^-1 and
/// p^-1 . gamma = (gamma^-1 . p)^-1.
inline FinBibundle reverse_bibundle(const FinBibundle& b) {
  std::vector<std::string> names;
  for (Index p = 0; p < b.size(); ++p) names.push_back(b.elements()[p] + "^-1");
  std::vector<ActEntry> left, right;
  for (const auto& e : b.right_entries()) {
    left.push_back({b.h->inv(e.arrow), e.element, e.result});
  }
  for (const auto& e : b.left_entries()) {
    right.push_back({b.g->inv(e.arrow), e.element, e.result});
  }
  return FinBibundle(b.h, b.g, std::move(names), b.right_anchor(), b.left_anchor(), left, right);
}

// ---------------------------------------------------------------------------
// Isomorphism search

namespace detail {

/// Extends the partial map by (p, q) and everything forced by equivariance.
inline bool propagate(const FinBibundle& a, const FinBibundle& b, Index p, Index q, std::vector<Index>& map,
                      std::vector<bool>& used) {
  std::deque<std::pair<Index, Index>> todo{{p, q}};
  while (!todo.empty()) {
    auto [x, y] = todo.front();
    todo.pop_front();
    if (a.a_left(x) != b.a_left(y) || a.a_right(x) != b.a_right(y)) return false;
    if (map[x] != none) {
      if (map[x] != y) return false;
      continue;
    }
    if (used[y]) return false;
    map[x] = y;
    used[y] = true;
    for (Index gm : a.g->arrows_out_of(a.a_left(x))) {
      Index gx = a.left(gm, x), gy = b.left(gm, y);
      if (gx == none || gy == none) return false;
      todo.emplace_back(gx, gy);
    }
    for (Index e : a.h->arrows_into(a.a_right(x))) {
      Index xe = a.right(x, e), ye = b.right(y, e);
      if (xe == none || ye == none) return false;
      todo.emplace_back(xe, ye);
    }
  }
  return true;
}

inline void search_isos(const FinBibundle& a, const FinBibundle& b, std::vector<Index>& map, std::vector<bool>& used,
                        std::vector<std::vector<Index>>& found, std::size_t limit) {
  if (found.size() >= limit) return;
  Index p = 0;
  while (p < a.size() && map[p] != none) ++p;
  if (p == a.size()) {
    found.push_back(map);
    return;
  }
  for (Index q = 0; q < b.size() && found.size() < limit; ++q) {
    if (used[q] || a.a_left(p) != b.a_left(q) || a.a_right(p) != b.a_right(q)) continue;
    std::vector<Index> m = map;
    std::vector<bool> u = used;
    if (propagate(a, b, p, q, m, u)) search_isos(a, b, m, u, found, limit);
  }
}

}  // namespace detail

/// Equivariant anchor-preserving bijections a -> b, in lexicographic order.
inline std::vector<std::vector<Index>> all_bibundle_isomorphisms(const FinBibundle& a, const FinBibundle& b,
                                                                 std::size_t limit = static_cast<std::size_t>(-1)) {
  std::vector<std::vector<Index>> found;
  if (a.size() != b.size() || !same_groupoid(a.g, b.g) || !same_groupoid(a.h, b.h)) return found;
  std::vector<Index> map(a.size(), none);
  std::vector<bool> used(b.size(), false);
  detail::search_isos(a, b, map, used, found, limit);
  std::vector<std::vector<Index>> verified;
  for (auto& m : found)
    if (verify_bibundle_map(a, b, m).passed()) verified.push_back(std::move(m));
  return verified;
}

inline std::optional<std::vector<Index>> find_bibundle_isomorphism(const FinBibundle& a, const FinBibundle& b) {
  auto all = all_bibundle_isomorphisms(a, b, 1);
  if (all.empty()) return std::nullopt;
  return all.front();
}

// ---------------------------------------------------------------------------
// Canonical witnesses

struct FinWitness {
  FinBibundle from;
  FinBibundle to;
  std::vector<Index> map;
};

namespace detail {

/// Evaluates `rule` on every pair and checks it is constant on orbits.
template <class Rule>
std::vector<Index> descend(const FinComposite& c, Rule&& rule) {
  std::vector<Index> map(c.representative.size(), none);
  for (Index i = 0; i < c.pairs.size(); ++i) {
    Index v = rule(c.pairs[i].first, c.pairs[i].second);
    Index& slot = map[c.orbit[i]];
    if (slot != none && slot != v) throw std::logic_error("map is not constant on orbits");
    slot = v;
  }
  return map;
}

}  // namespace detail

/// <g> o <f> -> <g o f>, [(x, gamma), (y, delta)] |-> (x, g(gamma) delta).
inline FinWitness functor_composite_witness(const FinFunctor& g, const FinFunctor& f) {
  FunctorBundle bf = functor_bundle(f), bg = functor_bundle(g), bgf = functor_bundle(compose(g, f));
  FinComposite c = compose_bibundles_detail(bg.bundle, bf.bundle);
  const FinGroupoid& K = *g.target;
  auto map = detail::descend(c, [&](Index p, Index q) {
    auto [x, gamma] = bf.pairs[p];
    Index delta = bg.pairs[q].second;
    return bgf.element(x, K.compose(g.arrow(gamma), delta));
  });
  return {std::move(c.bundle), std::move(bgf.bundle), std::move(map)};
}

/// <id> o P -> P, [p, (y, delta)] |-> p . delta.
inline FinWitness left_unit_witness(const FinBibundle& p) {
  FunctorBundle unit = functor_bundle(FinFunctor::identity(p.h));
  FinComposite c = compose_bibundles_detail(unit.bundle, p);
  auto map = detail::descend(c, [&](Index x, Index q) { return p.right(x, unit.pairs[q].second); });
  return {std::move(c.bundle), p, std::move(map)};
}

/// P o <id> -> P, [(x, gamma), q] |-> gamma . q.
inline FinWitness right_unit_witness(const FinBibundle& p) {
  FunctorBundle unit = functor_bundle(FinFunctor::identity(p.g));
  FinComposite c = compose_bibundles_detail(p, unit.bundle);
  auto map = detail::descend(c, [&](Index x, Index q) { return p.left(unit.pairs[x].second, q); });
  return {std::move(c.bundle), p, std::move(map)};
}

/// R o (Q o P) -> (R o Q) o P, [[x|y]|z] |-> [x|[y|z]].
inline FinWitness associator_witness(const FinBibundle& r, const FinBibundle& q, const FinBibundle& p) {
  FinComposite qp = compose_bibundles_detail(q, p);
  FinComposite left = compose_bibundles_detail(r, qp.bundle);
  FinComposite rq = compose_bibundles_detail(r, q);
  FinComposite right = compose_bibundles_detail(rq.bundle, p);
  auto map = detail::descend(left, [&](Index c, Index z) {
    auto [x, y] = qp.pairs[qp.representative[c]];
    return right.element(x, rq.element(y, z));
  });
  return {std::move(left.bundle), std::move(right.bundle), std::move(map)};
}

}  // namespace fingpd
