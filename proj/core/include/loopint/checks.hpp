#pragma once
// Cross-validation suites: each check runs one pinned identity between
// independent pipelines (algebraic oracles, Monte Carlo, exact spectra,
// localized values) and reports a pass/fail with the measured defect and the
// tolerance it was held to.  The acceptance battery and the command-line
// tool both run these.

#include <string>
#include <vector>

#include "loopint/config.hpp"

namespace loopint {

struct CheckResult {
  std::string name;
  bool pass = false;
  double defect = 0;     // measured discrepancy (criterion-specific meaning)
  double tolerance = 0;
  std::string detail;
};

using CheckList = std::vector<CheckResult>;

// Criterion batteries.
CheckList check_clifford_suite();                        // 1: algebra + susy signs
CheckList check_decomposition_suite(const RunConfig&);   // 2: coincidence splitting
CheckList check_q_suite(const RunConfig&);               // 3: bounds, rotation, parity
CheckList check_wiener_suite(const RunConfig&);          // 4: measure laws + FK
CheckList check_compare_suite(const RunConfig&);         // 5: MC vs spectral battery
CheckList check_index_suite(const RunConfig&);           // 6: flux index, both routes
CheckList check_localization_suite(const RunConfig&);    // 7: localized values
CheckList check_spectral_flow_suite(const RunConfig&);   // 8: odd map vs tracked flow
CheckList check_refinement_suite(const RunConfig&);      // 9: partition refinement
CheckList check_variation_suite(const RunConfig&);       // 10: variation + relative map
CheckList check_zeta_toy_suite(const RunConfig&);        // 11: determinant toy sweep

bool all_pass(const CheckList& l);

}  // namespace loopint
