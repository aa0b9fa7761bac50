#pragma once

#include <json.hpp>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace lie2 {

using Json = nlohmann::ordered_json;

/// One axiom or identity check. A failing check always carries the
/// counterexample or violated identity in `detail`.
struct Check {
  std::string id;
  bool pass = true;
  std::string detail;
};

/// Itemised outcome of a verification routine.
struct Report {
  std::string subject;
  std::vector<Check> checks;
  Json derived = Json::object();

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }

  void add(std::string id, bool pass, std::string detail = {}) {
    checks.push_back({std::move(id), pass, std::move(detail)});
  }

  const Check* find(std::string_view id) const {
    for (const auto& c : checks)
      if (c.id == id) return &c;
    return nullptr;
  }

  bool failed(std::string_view id) const {
    const Check* c = find(id);
    return c != nullptr && !c->pass;
  }

  /// First failing check, or nullptr.
  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }

  /// Appends the checks of `other`, prefixing their ids.
  void absorb(const Report& other, const std::string& prefix) {
    for (const auto& c : other.checks) checks.push_back({prefix + c.id, c.pass, c.detail});
  }
};

}  // namespace lie2
