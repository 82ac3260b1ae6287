#pragma once

#include <string>
#include <vector>

namespace ddforge {

struct CheckItem {
  std::string name;
  bool pass = false;
  std::string detail;
  /// A check that could not run for this (q, m), e.g. the Baer subspace
  /// check when q != m^2. Not-applicable items do not fail a report.
  bool applicable = true;
};

struct CheckReport {
  std::string title;
  std::vector<CheckItem> items;

  void add(std::string name, bool pass, std::string detail = "") {
    items.push_back({std::move(name), pass, std::move(detail), true});
  }
  void add_not_applicable(std::string name, std::string detail = "") {
    items.push_back({std::move(name), true, std::move(detail), false});
  }
  bool all_pass() const {
    for (const auto& item : items)
      if (item.applicable && !item.pass) return false;
    return true;
  }
};

}  // namespace ddforge
