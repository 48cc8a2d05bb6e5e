#include "bp/sim.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cstring>
#include <thread>
#include <utility>

#include "bp/errors.hpp"
#include "bp/io.hpp"
#include "bp/learning.hpp"
#include "bp/persuasion.hpp"
#include "bp/prior_set.hpp"
#include "bp/rng.hpp"
#include "bp/robust.hpp"

namespace bp {
namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = kFnvOffset) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
  return h;
}

std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace

std::uint64_t hash_instance(const PersuasionInstance& inst) {
  const std::string s = serialize_instance(inst);
  return fnv1a(s.data(), s.size());
}

std::uint64_t hash_mechanism(const SignalingMechanism& mech) {
  std::uint64_t h = kFnvOffset;
  const Mat& k = mech.kernel();
  for (int w = 0; w < k.rows(); ++w) {
    for (int s = 0; s < k.cols(); ++s) {
      const double x = k(w, s);
      h = fnv1a(&x, sizeof(x), h);
    }
  }
  for (int d : mech.decode_map()) h = fnv1a(&d, sizeof(d), h);
  return h;
}

SimulationTrace run(const PersuasionInstance& inst, const Belief& mu_true,
                    const std::string& algorithm, int T, std::uint64_t seed,
                    const SimConfig& config) {
  if (mu_true.size() != inst.num_states()) throw ValidationError("run: prior size mismatch");
  if (!inst.in_prior_knowledge_set(mu_true))
    throw ValidationError("run: mu_true falls outside the prior knowledge set");
  if (T < 0) throw ValidationError("run: negative horizon");
  if (algorithm != "rai" && algorithm != "full" && algorithm != "clairvoyant")
    throw ValidationError("run: unknown algorithm \"" + algorithm + "\"");

  const int n = inst.num_states();
  SimulationTrace trace;
  trace.instance_hash = hash_instance(inst);
  trace.algorithm = algorithm;
  trace.seed = seed;
  trace.T = T;
  trace.phi = config.phi;
  trace.lazy = config.lazy;
  trace.rounds.reserve(T);

  Philox state_rng(seed, kStateStream);
  Philox mech_rng(seed, kMechanismStream);

  RaiConfig rai_config{std::max(T, 1), config.phi, config.lazy, config.gamma0};
  LearnerState learner = initial_learner_state(inst, rai_config);
  trace.gamma0 = learner.gamma.weights();

  // Baseline mechanisms never change, so commit and audit them once.
  struct Fixed {
    SignalingMechanism mechanism;
    bool persuasive;
    std::uint64_t hash;
  };
  std::optional<Fixed> fixed;
  if (algorithm == "full") {
    SignalingMechanism m = full_information_mechanism(inst).coalesce(inst);
    const bool ok = is_persuasive(inst, mu_true, m, config.persuasive_tol).persuasive;
    const std::uint64_t h = hash_mechanism(m);
    fixed = Fixed{std::move(m), ok, h};
  } else if (algorithm == "clairvoyant") {
    SignalingMechanism m = solve_opt(inst, mu_true).mechanism;
    const bool ok = is_persuasive(inst, mu_true, m, config.persuasive_tol).persuasive;
    const std::uint64_t h = hash_mechanism(m);
    fixed = Fixed{std::move(m), ok, h};
  }

  Vec counts = Vec::Zero(n);  // baselines track gamma for the trace only
  for (int t = 0; t < T; ++t) {
    RoundRecord rec{};
    rec.t = t;

    // Commitment point: everything the mechanism depends on is fixed here.
    const Belief gamma = algorithm == "rai"
                             ? learner.gamma
                             : (t == 0 ? Belief(trace.gamma0) : Belief(counts / t));
    rec.epsilon = algorithm == "rai" ? learner.epsilon : 0.0;
    rec.gamma_distance = l1_distance(gamma, mu_true);

    const int w = state_rng.sample(mu_true.weights());
    rec.state = w;

    if (algorithm == "rai") {
      try {
        rec.action = rai_step(inst, learner, w, mech_rng, rai_config);
      } catch (const std::exception& e) {
        throw SolverError("run: round " + std::to_string(t) + ": " + e.what());
      }
      const SignalingMechanism& m = *learner.last_mechanism;
      rec.persuasive = is_persuasive(inst, mu_true, m, config.persuasive_tol).persuasive;
      rec.mechanism_hash = hash_mechanism(m);
      if (config.store_kernels) trace.kernels.push_back(m.kernel());
    } else if (algorithm == "full") {
      rec.action = full_information_step(inst, w);
      rec.persuasive = fixed->persuasive;
      rec.mechanism_hash = fixed->hash;
      if (config.store_kernels) trace.kernels.push_back(fixed->mechanism.kernel());
    } else {
      rec.action = clairvoyant_step(fixed->mechanism, w, mech_rng);
      rec.persuasive = fixed->persuasive;
      rec.mechanism_hash = fixed->hash;
      if (config.store_kernels) trace.kernels.push_back(fixed->mechanism.kernel());
    }
    rec.signal = rec.action;  // all mechanisms here are straightforward
    rec.value = inst.v(w, rec.action);
    counts[w] += 1.0;
    trace.rounds.push_back(rec);
  }
  return trace;
}

double regret(const SimulationTrace& trace, double opt_value) {
  double total = 0.0;
  for (const RoundRecord& r : trace.rounds) total += r.value;
  return opt_value * static_cast<double>(trace.rounds.size()) - total;
}

AuditSummary audit(const SimulationTrace& trace) {
  AuditSummary out;
  for (const RoundRecord& r : trace.rounds)
    if (!r.persuasive) out.violation_rounds.push_back(r.t);
  out.any_violation = !out.violation_rounds.empty();
  out.weak_violation_fraction =
      trace.rounds.empty()
          ? 0.0
          : static_cast<double>(out.violation_rounds.size()) / trace.rounds.size();
  return out;
}

DecompositionReport decomposition_check(const PersuasionInstance& inst, const Belief& mu_true,
                                        const SimulationTrace& trace) {
  if (trace.algorithm != "rai")
    throw ValidationError("decomposition_check: needs a rai trace");
  if (trace.kernels.size() != trace.rounds.size())
    throw ValidationError("decomposition_check: trace was recorded without kernels");

  const int n = inst.num_states();
  const double opt_star = solve_opt(inst, mu_true).value;

  DecompositionReport rep;
  Vec counts = Vec::Zero(n);
  for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
    const Belief gamma = t == 0 ? Belief(trace.gamma0) : Belief(counts / static_cast<double>(t));
    const SignalingMechanism sigma =
        SignalingMechanism::straightforward(inst, trace.kernels[t]);

    const double opt_gamma = solve_opt(inst, gamma).value;
    const double robust_value =
        robust_opt(inst, gamma, CandidatePriorSet(gamma, trace.rounds[t].epsilon)).value;
    const double v_gamma = value(inst, gamma, sigma);
    const double v_star = value(inst, mu_true, sigma);

    rep.lhs += opt_star - v_star;
    rep.estimation += opt_star - opt_gamma;
    rep.robustness += opt_gamma - robust_value;
    rep.sampling += v_gamma - v_star;
    counts[trace.rounds[t].state] += 1.0;
  }
  rep.residual = rep.lhs - (rep.estimation + rep.robustness + rep.sampling);
  return rep;
}

std::vector<SweepCell> sweep(const PersuasionInstance& inst, const Belief& mu_true,
                             const std::string& algorithm, const std::vector<int>& T_list,
                             const std::vector<std::uint64_t>& seeds, const SimConfig& config,
                             int jobs) {
  if (jobs < 1) throw ValidationError("sweep: jobs must be >= 1");
  const double opt_value = solve_opt(inst, mu_true).value;

  struct Cell {
    int T;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (int T : T_list)
    for (std::uint64_t seed : seeds) cells.push_back({T, seed});
  std::vector<SweepCell> results(cells.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const auto [T, seed] = cells[i];
      SweepCell& out = results[i];
      out.run_id = algorithm + "-T" + std::to_string(T) + "-s" + std::to_string(seed);
      out.algorithm = algorithm;
      out.T = T;
      out.seed = seed;
      out.phi = config.phi;
      out.opt_value = opt_value;
      const auto start = std::chrono::steady_clock::now();
      try {
        const SimulationTrace trace = run(inst, mu_true, algorithm, T, seed, config);
        const AuditSummary a = audit(trace);
        out.regret = regret(trace, opt_value);
        out.any_violation = a.any_violation;
        out.weak_violation_fraction = a.weak_violation_fraction;
      } catch (const std::exception& e) {
        out.failed = true;
        out.error = e.what();
      }
      if (config.timing) {
        out.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  return results;
}

void write_csv(std::ostream& out, const std::vector<SweepCell>& cells) {
  out << "run_id,algorithm,T,seed,phi,regret,any_violation,weak_violation_fraction,"
         "opt_value,wall_time_ms\n";
  for (const SweepCell& c : cells) {
    if (c.failed) continue;
    out << c.run_id << ',' << c.algorithm << ',' << c.T << ',' << c.seed << ','
        << format_double(c.phi) << ',' << format_double(c.regret) << ','
        << (c.any_violation ? 1 : 0) << ',' << format_double(c.weak_violation_fraction) << ','
        << format_double(c.opt_value) << ',' << format_double(c.wall_time_ms) << '\n';
  }
}

}  // namespace bp
