#pragma once
// Run configuration shared by the command-line tool and the check suites.
// Parsed from JSON with a strict schema: unknown keys are rejected so typos
// fail loudly instead of silently running defaults.

#include <optional>
#include <string>

#include "loopint/geometry.hpp"

namespace loopint {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  // backend
  int dim = 2;
  Mat lattice;             // defaults to identity
  IVec spin;               // defaults to zero
  // bundle / gauge data
  std::vector<int> fluxes = {1};        // flux battery
  std::vector<int> windings = {1};      // gauge-map battery
  // evaluation parameters
  std::vector<double> T = {1.0};
  long mc_n = 100000;
  int grid = 64;
  uint64_t seed = 1;
  int workers = 1;
  double clip = 1e12;
  int cutoff = 24;
  int refine_fine = 256;
  std::vector<int> refine_partitions = {16, 32, 64, 128};
  std::string out_dir;
  bool verbose = false;
};

// Parse from a JSON string; throws ConfigError (schema violation).
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);
// Resolved config serialized back to JSON (embedded in every report).
std::string config_to_json(const RunConfig& c);

}  // namespace loopint
