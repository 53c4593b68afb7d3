#pragma once

#include <string>
#include <vector>

namespace qha {

struct Check {
  std::string name;
  bool ok = true;
  std::string detail;  // failing identity or witness when !ok
};

struct Report {
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool ok() const {
    for (auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
  void add(std::string name, bool ok, std::string detail = "") {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
  void merge(const Report& o) {
    checks.insert(checks.end(), o.checks.begin(), o.checks.end());
    notes.insert(notes.end(), o.notes.begin(), o.notes.end());
  }
  const Check* first_failure() const {
    for (auto& c : checks)
      if (!c.ok) return &c;
    return nullptr;
  }
};

}  // namespace qha
