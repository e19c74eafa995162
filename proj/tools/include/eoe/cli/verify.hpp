#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace eoe::cli {

struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Oracle checks of the transform library. Quick mode keeps every graph at
/// n <= 6; the full suite widens the grids and adds a seeded simulator check.
std::vector<CheckResult> run_verify_suite(bool quick);

}  // namespace eoe::cli
