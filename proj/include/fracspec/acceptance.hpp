#ifndef FRACSPEC_ACCEPTANCE_HPP
#define FRACSPEC_ACCEPTANCE_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace fracspec {

struct AcceptanceOptions {
  /// Directory holding sigma_scale4_s2_golden.json.
  std::string data_dir = FRACSPEC_DATA_DIR;
  std::uint64_t seed = 20240601;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the ten repository acceptance criteria. Tolerances are fixed in the
/// implementation; a thrown exception counts as a failure of that criterion.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// One "[PASS]"/"[FAIL]" line per criterion and a summary line.
void print_acceptance(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace fracspec

#endif  // FRACSPEC_ACCEPTANCE_HPP
