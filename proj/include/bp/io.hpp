#pragma once

#include <string>

#include "bp/instance.hpp"
#include "bp/mechanism.hpp"

namespace bp {

// Instance files are JSON documents with keys `states` (list of labels),
// `actions` (list of labels), `receiver_utility` (row-major matrix, rows =
// states), `sender_utility` (same shape) and `prior_floor` (number).
// Numbers are written with shortest round-trip precision, so a save/load
// cycle reproduces every entry bit-exactly.
PersuasionInstance load_instance(const std::string& path);
PersuasionInstance parse_instance(const std::string& json_text);
std::string serialize_instance(const PersuasionInstance& inst);
void save_instance(const PersuasionInstance& inst, const std::string& path);

// Mechanism files: `signals` (labels), `kernel` (row-major, rows = states),
// `decode` (signal index -> action index).
SignalingMechanism load_mechanism(const std::string& path);
SignalingMechanism parse_mechanism(const std::string& json_text);
std::string serialize_mechanism(const SignalingMechanism& mech);
void save_mechanism(const SignalingMechanism& mech, const std::string& path);

}  // namespace bp
