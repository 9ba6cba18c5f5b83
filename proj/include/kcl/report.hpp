#pragma once

#include <string>
#include <vector>

namespace kcl {

struct PropertyCheck {
  std::string name;
  double deviation;
  double tolerance;
  bool passed;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;

  // deviation <= tolerance, recorded under name
  void add(std::string name, double deviation, double tolerance) {
    checks.push_back({std::move(name), deviation, tolerance, deviation <= tolerance});
  }
  void append(const PropertyReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
  bool passed() const noexcept {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

}  // namespace kcl
