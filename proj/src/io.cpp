#include "bp/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bp/errors.hpp"

namespace bp {

using nlohmann::json;

namespace {

Mat parse_matrix(const json& j, size_t rows, size_t cols, const char* key) {
  if (!j.is_array() || j.size() != rows)
    throw ValidationError(std::string(key) + ": expected " + std::to_string(rows) + " rows");
  Mat m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != cols)
      throw ValidationError(std::string(key) + ": row " + std::to_string(r) +
                            " must have " + std::to_string(cols) + " entries");
    for (size_t c = 0; c < cols; ++c) {
      if (!row[c].is_number())
        throw ValidationError(std::string(key) + ": non-numeric entry at (" +
                              std::to_string(r) + "," + std::to_string(c) + ")");
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

std::vector<std::string> parse_labels(const json& j, const char* key) {
  if (!j.is_array() || j.empty())
    throw ValidationError(std::string(key) + ": expected a non-empty list");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ValidationError(std::string(key) + ": labels must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

PersuasionInstance parse_instance(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("instance parse error: ") + e.what());
  }
  for (const char* key : {"states", "actions", "receiver_utility", "sender_utility", "prior_floor"})
    if (!j.contains(key)) throw ValidationError(std::string("instance: missing key '") + key + "'");
  auto states = parse_labels(j["states"], "states");
  auto actions = parse_labels(j["actions"], "actions");
  Mat u = parse_matrix(j["receiver_utility"], states.size(), actions.size(), "receiver_utility");
  Mat v = parse_matrix(j["sender_utility"], states.size(), actions.size(), "sender_utility");
  if (!j["prior_floor"].is_number()) throw ValidationError("prior_floor: must be a number");
  return PersuasionInstance(std::move(states), std::move(actions), std::move(u), std::move(v),
                            j["prior_floor"].get<double>());
}

PersuasionInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string serialize_instance(const PersuasionInstance& inst) {
  json j;
  j["states"] = inst.states();
  j["actions"] = inst.actions();
  auto dump_matrix = [&](const Mat& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  j["receiver_utility"] = dump_matrix(inst.receiver_utility());
  j["sender_utility"] = dump_matrix(inst.sender_utility());
  j["prior_floor"] = inst.prior_floor();
  return j.dump(2) + "\n";
}

void save_instance(const PersuasionInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write instance file: " + path);
  out << serialize_instance(inst);
}

SignalingMechanism parse_mechanism(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("mechanism parse error: ") + e.what());
  }
  for (const char* key : {"signals", "kernel", "decode"})
    if (!j.contains(key)) throw ValidationError(std::string("mechanism: missing key '") + key + "'");
  auto signals = parse_labels(j["signals"], "signals");
  const json& jd = j["decode"];
  if (!jd.is_array() || jd.size() != signals.size())
    throw ValidationError("decode: expected one action index per signal");
  std::vector<int> decode;
  for (const auto& e : jd) {
    if (!e.is_number_integer()) throw ValidationError("decode: entries must be integers");
    decode.push_back(e.get<int>());
  }
  const json& jk = j["kernel"];
  if (!jk.is_array() || jk.empty()) throw ValidationError("kernel: expected a non-empty matrix");
  Mat kernel = parse_matrix(jk, jk.size(), signals.size(), "kernel");
  return SignalingMechanism(std::move(signals), std::move(kernel), std::move(decode));
}

SignalingMechanism load_mechanism(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open mechanism file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_mechanism(buf.str());
}

std::string serialize_mechanism(const SignalingMechanism& mech) {
  json j;
  j["signals"] = mech.signals();
  json rows = json::array();
  for (int w = 0; w < mech.num_states(); ++w) {
    json row = json::array();
    for (int s = 0; s < mech.num_signals(); ++s) row.push_back(mech.prob(w, s));
    rows.push_back(std::move(row));
  }
  j["kernel"] = std::move(rows);
  j["decode"] = mech.decode_map();
  return j.dump(2) + "\n";
}

void save_mechanism(const SignalingMechanism& mech, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write mechanism file: " + path);
  out << serialize_mechanism(mech);
}

}  // namespace bp
