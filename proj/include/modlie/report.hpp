#pragma once

#include <string>
#include <utility>
#include <vector>

namespace modlie {

/// One named verification outcome; `witness` explains a failure.
struct Check {
  std::string name;
  bool passed = true;
  std::string witness;
};

/// Verification results are collected, never thrown.
struct Report {
  std::vector<Check> checks;

  void add(std::string name, bool passed, std::string witness = {}) {
    checks.push_back({std::move(name), passed, std::move(witness)});
  }
  void merge(const Report& other, const std::string& prefix = {}) {
    for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.passed, c.witness});
  }
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
};

}  // namespace modlie
