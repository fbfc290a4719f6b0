// Prints one PASS/FAIL line per acceptance criterion.
#include "core/acceptance.hpp"

#include <cstring>
#include <iostream>

int main(int argc, char** argv) {
  socapm::AcceptanceOptions opt;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) opt.quick = true;
  }
  const auto results = socapm::run_acceptance(opt);
  std::cout << socapm::acceptance_table(results) << std::flush;
  for (const auto& r : results) {
    if (!r.pass) return 1;
  }
  return 0;
}
