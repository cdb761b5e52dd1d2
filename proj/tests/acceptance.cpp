#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "cdlab/experiments.hpp"

int main(int argc, char** argv) {
  cdlab::SuiteOptions options;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "-v" || arg == "--verbose")
      verbose = true;
    else if (arg.rfind("--parallel=", 0) == 0)
      options.parallel = std::max(1, std::atoi(arg.c_str() + 11));
  }
  const auto start = std::chrono::steady_clock::now();
  const auto checks = cdlab::acceptance_checks(options);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (verbose)
    for (const auto& c : checks)
      std::printf("  %s [%2d] %s: %.6g %s %.6g\n", c.pass ? "ok  " : "FAIL", c.criterion, c.name.c_str(), c.value,
                  c.relation.c_str(), c.bound);

  bool all = true;
  for (const auto& s : cdlab::summarize(checks)) {
    all = all && s.pass();
    std::printf("%s criterion %2d: %s (%d checks", s.pass() ? "PASS" : "FAIL", s.criterion, s.title.c_str(), s.checks);
    if (s.failed) std::printf(", %d failed", s.failed);
    std::printf(")\n");
    if (!s.pass())
      for (const auto& c : checks)
        if (c.criterion == s.criterion && !c.pass)
          std::printf("     failed: %s: %.17g %s %.17g\n", c.name.c_str(), c.value, c.relation.c_str(), c.bound);
  }
  std::printf("%s: %zu checks in %.1f s\n", all ? "ALL PASS" : "FAILURES", checks.size(), seconds);
  std::filesystem::remove_all(options.scratch);
  return all ? 0 : 1;
}
