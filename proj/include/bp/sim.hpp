#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bp/belief.hpp"
#include "bp/instance.hpp"
#include "bp/mechanism.hpp"

namespace bp {

struct SimConfig {
  double phi = 20.0;
  bool lazy = false;           // reuse mechanisms while gamma drifts < eps/4
  bool store_kernels = false;  // keep per-round kernels (large; needed for the
                               // decomposition check)
  // Measure per-cell wall time. Off by default: timing values vary between
  // runs, so leaving this off keeps sweep CSVs byte-identical.
  bool timing = false;
  double persuasive_tol = 1e-7;    // slack tolerance for the online audit
  std::optional<Vec> gamma0;       // learner's starting estimate; default uniform
};

struct RoundRecord {
  int t;
  int state;
  int signal;
  int action;
  double value;            // realized sender value v(state, action)
  bool persuasive;         // obedience held at mu_true for this round's mechanism
  double epsilon;          // ball radius at commitment (0 for baselines)
  double gamma_distance;   // ||gamma_t - mu_true||_1 at commitment
  std::uint64_t mechanism_hash;
};

struct SimulationTrace {
  std::uint64_t instance_hash = 0;
  std::string algorithm;
  std::uint64_t seed = 0;
  int T = 0;
  double phi = 0.0;
  bool lazy = false;
  Vec gamma0;
  std::vector<RoundRecord> rounds;
  std::vector<Mat> kernels;  // per-round, only when store_kernels was set
};

// Plays `algorithm` ("rai" | "full" | "clairvoyant") for T rounds against
// states drawn i.i.d. from mu_true. State draws and recommendation draws use
// separate generator streams of the same seed, so traces replay identically
// under any thread count. Each round's mechanism is committed before that
// round's state is consumed. Solver failures are rethrown with the round
// index attached.
SimulationTrace run(const PersuasionInstance& inst, const Belief& mu_true,
                    const std::string& algorithm, int T, std::uint64_t seed,
                    const SimConfig& config);

// OPT(mu_true) * T minus the realized value total.
double regret(const SimulationTrace& trace, double opt_value);

struct AuditSummary {
  std::vector<int> violation_rounds;
  bool any_violation = false;
  double weak_violation_fraction = 0.0;
};
AuditSummary audit(const SimulationTrace& trace);

// The learning algorithm's regret against mu_true splits exactly into three
// sums, each computable from the logged trace:
//   estimation   sum of OPT(mu_true) - OPT(gamma_t)
//   robustness   sum of OPT(gamma_t) - robust value over the ball at gamma_t
//   sampling     sum of V(gamma_t, sigma_t) - V(mu_true, sigma_t)
// and lhs = OPT(mu_true)*T - sum of V(mu_true, sigma_t) should equal their
// total. Requires a trace recorded with store_kernels.
struct DecompositionReport {
  double lhs = 0.0;
  double estimation = 0.0;
  double robustness = 0.0;
  double sampling = 0.0;
  double residual = 0.0;  // lhs - (estimation + robustness + sampling)
};
DecompositionReport decomposition_check(const PersuasionInstance& inst, const Belief& mu_true,
                                        const SimulationTrace& trace);

struct SweepCell {
  std::string run_id;
  std::string algorithm;
  int T = 0;
  std::uint64_t seed = 0;
  double phi = 0.0;
  double regret = 0.0;
  bool any_violation = false;
  double weak_violation_fraction = 0.0;
  double opt_value = 0.0;
  double wall_time_ms = 0.0;
  bool failed = false;
  std::string error;
};

// One run() per (T, seed) pair, fanned out over `jobs` workers. Results come
// back in (T-major, then seed) order regardless of scheduling; a failing
// cell is recorded and the sweep continues.
std::vector<SweepCell> sweep(const PersuasionInstance& inst, const Belief& mu_true,
                             const std::string& algorithm, const std::vector<int>& T_list,
                             const std::vector<std::uint64_t>& seeds, const SimConfig& config,
                             int jobs = 1);

// Exact column set of the sweep interface; failed cells are skipped. Doubles
// print in shortest round-trip form.
void write_csv(std::ostream& out, const std::vector<SweepCell>& cells);

std::uint64_t hash_instance(const PersuasionInstance& inst);
std::uint64_t hash_mechanism(const SignalingMechanism& mech);

}  // namespace bp
