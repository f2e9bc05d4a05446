#pragma once

#include <string>
#include <vector>

namespace qwabs {

/// One cross-route or golden-value comparison.
struct CheckRow {
  std::string group;
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

/// Groups in the order they run.
const std::vector<std::string>& verification_groups();

/// Runs every group, or only `only` when non-empty. Throws
/// std::invalid_argument for an unknown group name.
std::vector<CheckRow> run_verification(const std::string& only = {}, int threads = 1);

}  // namespace qwabs
