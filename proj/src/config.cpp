#include "bp/config.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "bp/errors.hpp"
#include "bp/io.hpp"

namespace bp {

using nlohmann::json;

ExperimentConfig parse_experiment_config(const std::string& json_text,
                                         const std::string& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config parse error: ") + e.what());
  }

  std::vector<std::string> errors;
  auto complain = [&errors](const std::string& msg) { errors.push_back(msg); };

  std::optional<PersuasionInstance> instance;
  if (!j.contains("instance")) {
    complain("missing key 'instance'");
  } else if (j["instance"].is_string()) {
    std::filesystem::path p = j["instance"].get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    try {
      instance = load_instance(p.string());
    } catch (const std::exception& e) {
      complain(std::string("'instance': ") + e.what());
    }
  } else if (j["instance"].is_object()) {
    try {
      instance = parse_instance(j["instance"].dump());
    } catch (const std::exception& e) {
      complain(std::string("'instance': ") + e.what());
    }
  } else {
    complain("'instance' must be a path or an instance object");
  }

  std::optional<Belief> mu_true;
  if (!j.contains("mu_true") || !j["mu_true"].is_array()) {
    complain("missing or non-list key 'mu_true'");
  } else {
    Vec w(j["mu_true"].size());
    bool ok = true;
    for (std::size_t i = 0; i < j["mu_true"].size(); ++i) {
      if (!j["mu_true"][i].is_number()) ok = false;
      else w[i] = j["mu_true"][i].get<double>();
    }
    if (!ok) complain("'mu_true' entries must be numbers");
    else {
      try {
        mu_true = Belief(w);
      } catch (const std::exception& e) {
        complain(std::string("'mu_true': ") + e.what());
      }
    }
  }

  ExperimentConfig cfg{instance ? std::move(*instance)
                                : PersuasionInstance({"w0", "w1"}, {"a0", "a1"}, Mat::Zero(2, 2),
                                                     Mat::Zero(2, 2), 0.5),
                       mu_true ? std::move(*mu_true) : Belief::uniform(2),
                       "", {}, {}, {}, "-"};

  if (!j.contains("algorithm") || !j["algorithm"].is_string())
    complain("missing or non-string key 'algorithm'");
  else {
    cfg.algorithm = j["algorithm"].get<std::string>();
    if (cfg.algorithm != "rai" && cfg.algorithm != "full" && cfg.algorithm != "clairvoyant")
      complain("'algorithm' must be one of rai|full|clairvoyant");
  }

  const bool has_T = j.contains("T"), has_list = j.contains("T_list");
  if (has_T == has_list) {
    complain("exactly one of 'T' or 'T_list' is required");
  } else if (has_T) {
    if (!j["T"].is_number_integer() || j["T"].get<long long>() < 0)
      complain("'T' must be a nonnegative integer");
    else cfg.T_list.push_back(j["T"].get<int>());
  } else {
    if (!j["T_list"].is_array() || j["T_list"].empty()) complain("'T_list' must be a non-empty list");
    else
      for (const auto& e : j["T_list"]) {
        if (!e.is_number_integer() || e.get<long long>() < 0) {
          complain("'T_list' entries must be nonnegative integers");
          break;
        }
        cfg.T_list.push_back(e.get<int>());
      }
  }

  const bool has_seed = j.contains("seed"), has_seeds = j.contains("seeds");
  if (has_seed == has_seeds) {
    complain("exactly one of 'seed' or 'seeds' is required");
  } else if (has_seed) {
    if (!j["seed"].is_number_integer()) complain("'seed' must be an integer");
    else cfg.seeds.push_back(j["seed"].get<std::uint64_t>());
  } else {
    if (!j["seeds"].is_array() || j["seeds"].empty()) complain("'seeds' must be a non-empty list");
    else
      for (const auto& e : j["seeds"]) {
        if (!e.is_number_integer()) {
          complain("'seeds' entries must be integers");
          break;
        }
        cfg.seeds.push_back(e.get<std::uint64_t>());
      }
  }

  if (!j.contains("phi") || !j["phi"].is_number() || !(j["phi"].get<double>() > 0.0))
    complain("missing or non-positive key 'phi'");
  else cfg.sim.phi = j["phi"].get<double>();

  if (!j.contains("gamma0")) {
    complain("missing key 'gamma0' (\"uniform\" or a weight list)");
  } else if (j["gamma0"].is_string()) {
    if (j["gamma0"].get<std::string>() != "uniform")
      complain("'gamma0' string form must be \"uniform\"");
  } else if (j["gamma0"].is_array()) {
    Vec w(j["gamma0"].size());
    bool ok = true;
    for (std::size_t i = 0; i < j["gamma0"].size(); ++i) {
      if (!j["gamma0"][i].is_number()) ok = false;
      else w[i] = j["gamma0"][i].get<double>();
    }
    if (!ok) complain("'gamma0' entries must be numbers");
    else cfg.sim.gamma0 = std::move(w);
  } else {
    complain("'gamma0' must be \"uniform\" or a weight list");
  }

  if (!j.contains("lazy") || !j["lazy"].is_boolean()) complain("missing or non-boolean key 'lazy'");
  else cfg.sim.lazy = j["lazy"].get<bool>();

  if (!j.contains("persuasive_tol") || !j["persuasive_tol"].is_number())
    complain("missing or non-numeric key 'persuasive_tol'");
  else cfg.sim.persuasive_tol = j["persuasive_tol"].get<double>();

  if (j.contains("store_kernels")) {
    if (!j["store_kernels"].is_boolean()) complain("'store_kernels' must be a boolean");
    else cfg.sim.store_kernels = j["store_kernels"].get<bool>();
  }
  if (j.contains("timing")) {
    if (!j["timing"].is_boolean()) complain("'timing' must be a boolean");
    else cfg.sim.timing = j["timing"].get<bool>();
  }
  if (j.contains("output")) {
    if (!j["output"].is_string()) complain("'output' must be a string");
    else cfg.output = j["output"].get<std::string>();
  }

  if (!errors.empty()) {
    std::string msg = "config invalid:";
    for (const std::string& e : errors) msg += "\n  - " + e;
    throw ValidationError(msg);
  }
  if (instance && mu_true && cfg.mu_true.size() != cfg.instance.num_states())
    throw ValidationError("config invalid:\n  - 'mu_true' length differs from the instance's state count");
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str(), std::filesystem::path(path).parent_path().string());
}

}  // namespace bp
