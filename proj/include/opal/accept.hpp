#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opal/report.hpp"

namespace opal {

struct CriterionResult {
  int number;
  std::string title;
  CheckReport report;
  double seconds;
};

// Runs acceptance criteria (1..9); `only` restricts to a single criterion.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 20260809, int only = -1);

}  // namespace opal
