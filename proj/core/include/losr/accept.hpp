#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace losr::accept {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string note;
  double seconds = 0.0;
};

// The eight acceptance criteria, in order. Deterministic for a fixed seed.
std::vector<CriterionResult> run_all(std::uint64_t seed = 1);

bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace losr::accept
