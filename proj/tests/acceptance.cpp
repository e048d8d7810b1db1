// Acceptance battery: runs every cross-validation suite and prints one
// PASS/FAIL line per criterion.  Exit status is the number of failed
// criteria.

#include <cstdio>

#include "loopint/checks.hpp"

using namespace loopint;

int main() {
  RunConfig cfg;
  cfg.mc_n = 100000;
  cfg.workers = 4;
  cfg.seed = 1;

  struct Criterion {
    const char* name;
    CheckList (*run)(const RunConfig&);
  };
  const Criterion table[] = {
      {"clifford-supertrace-identities", [](const RunConfig&) { return check_clifford_suite(); }},
      {"coincidence-decomposition", check_decomposition_suite},
      {"loop-functional-bounds-and-symmetry", check_q_suite},
      {"wiener-measure-laws", check_wiener_suite},
      {"monte-carlo-vs-spectral-battery", check_compare_suite},
      {"flux-index-both-routes", check_index_suite},
      {"localized-values", check_localization_suite},
      {"spectral-flow", check_spectral_flow_suite},
      {"partition-refinement", check_refinement_suite},
      {"variation-and-relative-map", check_variation_suite},
      {"determinant-toy", check_zeta_toy_suite},
  };

  int failed = 0;
  for (const auto& crit : table) {
    CheckList l = crit.run(cfg);
    bool ok = all_pass(l);
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", crit.name);
    for (const auto& c : l) {
      if (!ok || c.defect > 0.5 * c.tolerance)
        std::printf("    %-42s defect %.3e  tol %.3e  %s%s\n", c.name.c_str(), c.defect,
                    c.tolerance, c.pass ? "" : "FAILED  ", c.detail.c_str());
    }
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  std::printf("%d/11 criteria passed\n", 11 - failed);
  return failed;
}
