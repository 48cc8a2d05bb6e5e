#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bp/belief.hpp"
#include "bp/instance.hpp"
#include "bp/sim.hpp"

namespace bp {

// Everything a simulate/sweep run depends on, read from one JSON document so
// the file fully determines the output. Required keys: `instance` (path or
// inline instance object), `mu_true`, `algorithm`, `T` or `T_list`, `seed`
// or `seeds`, `phi`, `gamma0` ("uniform" or a weight list), `lazy`,
// `persuasive_tol`. Optional: `store_kernels`, `timing`, `output` (file
// path, "-" = stdout; default "-").
struct ExperimentConfig {
  PersuasionInstance instance;
  Belief mu_true;
  std::string algorithm;
  std::vector<int> T_list;
  std::vector<std::uint64_t> seeds;
  SimConfig sim;
  std::string output = "-";
};

// Validation is collected: one exception naming every offending key.
// Relative instance paths resolve against base_dir.
ExperimentConfig parse_experiment_config(const std::string& json_text, const std::string& base_dir);
ExperimentConfig load_experiment_config(const std::string& path);

}  // namespace bp
