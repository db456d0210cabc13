#pragma once

#include <string>
#include <deque>
#include <utility>
#include <vector>

#include "rlr/gfp.hpp"

namespace rlr {

/// Verdict of one named check, with the first violating tuple when it fails.
struct Check {
  std::string name;
  bool passed = true;
  std::string witness;
  /// True when the check covered a probe set instead of every element.
  bool partial = false;
  std::string note;
};

struct Report {
  std::string title;
  std::deque<Check> checks;  // stable references while checks are appended
  std::vector<std::pair<std::string, long long>> dimensions;
  std::vector<std::pair<std::string, std::vector<Vec>>> bases;
  std::vector<std::pair<std::string, bool>> flags;
  std::vector<std::string> notes;

  bool passed() const;
  Check& add(std::string name, bool ok = true, std::string witness = {});
  void set_dimension(const std::string& name, long long value);
  void add_basis(const std::string& name, std::vector<Vec> vectors);
  void set_flag(const std::string& name, bool value);
  /// Appends the checks of `other`, prefixing their names.
  void merge(const Report& other, const std::string& prefix);
  const Check* find(const std::string& name) const;
};

enum class ReportFormat { Text, Json };

/// Deterministic rendering; identical input gives identical bytes.
std::string emit(const Report& report, ReportFormat format);

}  // namespace rlr
