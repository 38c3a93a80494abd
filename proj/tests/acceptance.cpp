// Runs every acceptance criterion and prints one line per criterion.
// Optional arguments: seed, threads.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <thread>

#include "artifact/criteria.hpp"

int main(int argc, char** argv) {
  artifact::CriterionOptions opt;
  opt.seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
  opt.threads = argc > 2 ? std::atoi(argv[2]) : std::max(1u, std::thread::hardware_concurrency());
  int failed = 0;
  for (int id = 1; id <= artifact::criterion_count; ++id) {
    artifact::CriterionResult r;
    try {
      r = artifact::run_criterion(id, opt);
    } catch (const std::exception& e) {
      r.id = id;
      r.name = artifact::criterion_name(id);
      r.details.push_back(std::string("exception: ") + e.what());
    }
    std::printf("criterion %2d %s  %s (%.1f s)\n", id, r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds);
    if (!r.pass) {
      ++failed;
      for (const auto& d : r.details) std::printf("    %s\n", d.c_str());
    }
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", artifact::criterion_count - failed, artifact::criterion_count);
  return failed == 0 ? 0 : 1;
}
