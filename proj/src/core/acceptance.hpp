#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace socapm {

struct CriterionResult {
  int id;
  std::string title;
  bool pass;
  std::string measured;  // measured vs predicted, human readable
  std::string note;
};

struct AcceptanceOptions {
  bool quick = false;          // k = 1e5 and doubled tolerances
  std::uint64_t seed = 20240;  // random vectors of the projection suite
};

/// Runs every criterion; independent criteria run concurrently.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// One "PASS"/"FAIL" line per criterion plus a totals line.
std::string acceptance_table(const std::vector<CriterionResult>& results);
std::string acceptance_json(const std::vector<CriterionResult>& results,
                            const AcceptanceOptions& options);

}  // namespace socapm
