#pragma once

#include <string>
#include <vector>

namespace supergerbe {

struct CheckResult {
  std::string identity;
  std::string where;
  bool ok = true;
  std::string detail;
};

// Ordered list of checked identities.
struct Report {
  std::string subject;
  std::vector<CheckResult> checks;

  void add(std::string identity, std::string where, bool ok, std::string detail = {}) {
    checks.push_back({std::move(identity), std::move(where), ok, std::move(detail)});
  }
  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
  const CheckResult* first_failure() const {
    for (const auto& c : checks)
      if (!c.ok) return &c;
    return nullptr;
  }
  void append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }
};

}  // namespace supergerbe
