#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace adelic::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct Options {
  std::uint64_t seed = 20240917;  // every random draw derives from this
  long mc_samples = 1000000;
};

// Runs the eleven acceptance criteria in order; `on_result` sees each one
// as soon as it finishes.
std::vector<CriterionResult> run_all(const Options& opts,
                                     const std::function<void(const CriterionResult&)>& on_result = {});

// "[PASS]  1 product formula ... (detail; 0.41 s)"
std::string format_line(const CriterionResult& r);

}  // namespace adelic::acceptance
