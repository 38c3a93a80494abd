#pragma once

// The end-to-end checks, one per acceptance criterion. Shared by the
// acceptance binary and `artifact verify criterion`.

#include <cstdint>
#include <string>
#include <vector>

namespace artifact {

struct CriterionOptions {
  std::uint64_t seed = 1;
  int threads = 1;
  std::string data_dir;  // holds homotopy_signs.txt; empty = the build-time data directory
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::string> details;  // deterministic summary lines
  double seconds = 0;                // wall time, kept out of the details
};

constexpr int criterion_count = 11;
const std::string& criterion_name(int id);
// Throws InputError for an unknown id.
CriterionResult run_criterion(int id, const CriterionOptions& opt);

}  // namespace artifact
