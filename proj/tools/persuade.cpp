#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bp/config.hpp"
#include "bp/errors.hpp"
#include "bp/instances.hpp"
#include "bp/io.hpp"
#include "bp/learning.hpp"
#include "bp/persuasion.hpp"
#include "bp/prior_set.hpp"
#include "bp/robust.hpp"
#include "bp/sim.hpp"

namespace {

using namespace bp;

Belief parse_prior_csv(const std::string& text, const char* flag) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double x = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      vals.push_back(x);
    } catch (const std::exception&) {
      throw ValidationError(std::string(flag) + ": entry '" + item + "' is not a number");
    }
  }
  if (vals.size() < 2) throw ValidationError(std::string(flag) + ": expected at least 2 weights");
  Vec w(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) w[i] = vals[i];
  try {
    return Belief(w);
  } catch (const std::exception& e) {
    throw ValidationError(std::string(flag) + ": " + e.what());
  }
}

void print_kernel(const PersuasionInstance& inst, const SignalingMechanism& mech) {
  for (int w = 0; w < mech.num_states(); ++w) {
    std::printf("%s:", inst.states()[w].c_str());
    for (int s = 0; s < mech.num_signals(); ++s)
      std::printf(" %s=%.6f", mech.signals()[s].c_str(), mech.prob(w, s));
    std::printf("\n");
  }
}

void maybe_save_mechanism(const SignalingMechanism& mech, const std::string& path) {
  if (!path.empty()) save_mechanism(mech, path);
}

double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t k = xs.size() / 2;
  return xs.size() % 2 ? xs[k] : 0.5 * (xs[k - 1] + xs[k]);
}

void emit_csv_and_summary(const std::vector<SweepCell>& cells, const std::string& output) {
  if (output == "-" || output.empty()) {
    write_csv(std::cout, cells);
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw ValidationError("cannot write output file: " + output);
    write_csv(out, cells);
  }
  int failures = 0, violations = 0, ok_cells = 0;
  std::vector<double> regrets;
  for (const SweepCell& c : cells) {
    if (c.failed) {
      ++failures;
      std::cerr << "cell " << c.run_id << " failed: " << c.error << "\n";
      continue;
    }
    ++ok_cells;
    regrets.push_back(c.regret);
    violations += c.any_violation ? 1 : 0;
  }
  std::fprintf(stderr, "summary: cells=%d median_regret=%.6f violation_rate=%.6f failures=%d\n",
               ok_cells, median(regrets),
               ok_cells ? static_cast<double>(violations) / ok_cells : 0.0, failures);
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Optimal and robust Bayesian persuasion with an unknown prior"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  std::string gen_kind, gen_out;
  double gen_D = 0.01, gen_p0 = 0.1, gen_dfloor = 0.02;
  std::uint64_t gen_seed = 1;
  int gen_states = 3, gen_actions = 3, gen_attempts = 500;
  gen->add_option("--kind", gen_kind, "lower-bound | random | two-state")
      ->required()
      ->check(CLI::IsMember({"lower-bound", "random", "two-state"}));
  gen->add_option("--D", gen_D, "regularity parameter (lower-bound kind)");
  gen->add_option("--p0", gen_p0, "prior floor");
  gen->add_option("--seed", gen_seed, "generator seed (random kind)");
  gen->add_option("--states", gen_states, "state count (random kind)");
  gen->add_option("--actions", gen_actions, "action count (random kind)");
  gen->add_option("--d-floor", gen_dfloor, "minimum certified D (random kind)");
  gen->add_option("--max-attempts", gen_attempts, "rejection-sampling cap (random kind)");
  gen->add_option("-o,--output", gen_out, "output path (default stdout)");
  gen->callback([&]() {
    std::string text;
    if (gen_kind == "lower-bound") {
      auto [inst, mu] = build_instance_I0(gen_D, gen_p0);
      text = serialize_instance(inst);
      std::fprintf(stderr, "worst-case prior: %.6f", mu[0]);
      for (int i = 1; i < mu.size(); ++i) std::fprintf(stderr, ",%.6f", mu[i]);
      std::fprintf(stderr, "\n");
    } else if (gen_kind == "two-state") {
      auto [inst, mu] = build_two_state_example();
      text = serialize_instance(inst);
      std::fprintf(stderr, "reference prior: %.6f,%.6f\n", mu[0], mu[1]);
    } else {
      text = serialize_instance(random_regular_instance(gen_seed, gen_states, gen_actions,
                                                        gen_p0, gen_dfloor, gen_attempts));
    }
    if (gen_out.empty()) std::cout << text;
    else {
      std::ofstream out(gen_out, std::ios::binary);
      if (!out) throw ValidationError("cannot write output file: " + gen_out);
      out << text;
    }
  });

  // solve
  auto* solve = app.add_subcommand("solve", "Sender-optimal persuasive mechanism at a prior");
  std::string solve_path, solve_prior, solve_out;
  solve->add_option("instance", solve_path, "instance file")->required();
  solve->add_option("--prior", solve_prior, "comma-separated weights")->required();
  solve->add_option("-o,--output", solve_out, "write the mechanism as JSON");
  solve->callback([&]() {
    const PersuasionInstance inst = load_instance(solve_path);
    const Belief mu = parse_prior_csv(solve_prior, "--prior");
    const OptResult res = solve_opt(inst, mu);
    std::printf("opt=%.6f\n", res.value);
    print_kernel(inst, res.mechanism);
    maybe_save_mechanism(res.mechanism, solve_out);
  });

  // robust
  auto* robust = app.add_subcommand("robust", "Optimal mechanism persuasive on an l1-ball");
  std::string rob_path, rob_center, rob_objective, rob_out;
  double rob_radius = 0.0;
  bool rob_dual = false;
  robust->add_option("instance", rob_path, "instance file")->required();
  robust->add_option("--center", rob_center, "ball center weights")->required();
  robust->add_option("--radius", rob_radius, "l1 radius")->required()
      ->check(CLI::NonNegativeNumber);
  robust->add_option("--objective", rob_objective, "scoring prior (default: the center)");
  robust->add_flag("--dual", rob_dual, "use the dual reformulation instead of vertices");
  robust->add_option("-o,--output", rob_out, "write the mechanism as JSON");
  robust->callback([&]() {
    const PersuasionInstance inst = load_instance(rob_path);
    const Belief center = parse_prior_csv(rob_center, "--center");
    const Belief objective =
        rob_objective.empty() ? center : parse_prior_csv(rob_objective, "--objective");
    const CandidatePriorSet set(center, rob_radius);
    const OptResult res =
        rob_dual ? robust_opt_dual(inst, objective, set) : robust_opt(inst, objective, set);
    std::printf("robust_opt=%.6f\n", res.value);
    print_kernel(inst, res.mechanism);
    maybe_save_mechanism(res.mechanism, rob_out);
  });

  // gap
  auto* gapcmd = app.add_subcommand("gap", "Cost of robustness at a prior");
  std::string gap_path, gap_prior;
  double gap_radius = 0.0;
  gapcmd->add_option("instance", gap_path, "instance file")->required();
  gapcmd->add_option("--prior", gap_prior, "ball center and scoring prior")->required();
  gapcmd->add_option("--radius", gap_radius, "l1 radius")->required()
      ->check(CLI::NonNegativeNumber);
  gapcmd->callback([&]() {
    const PersuasionInstance inst = load_instance(gap_path);
    const Belief mu = parse_prior_csv(gap_prior, "--prior");
    const CandidatePriorSet set(mu, gap_radius);
    const double opt = solve_opt(inst, mu).value;
    const double rob = robust_opt(inst, mu, set).value;
    std::printf("opt=%.6f\nrobust=%.6f\ngap=%.6f\n", opt, rob, std::max(0.0, opt - rob));
  });

  // construct
  auto* cons = app.add_subcommand("construct", "Explicit robust mechanism from a certificate");
  std::string cons_path, cons_prior, cons_out;
  double cons_eps = 0.0;
  cons->add_option("instance", cons_path, "instance file")->required();
  cons->add_option("--prior", cons_prior, "prior to optimize at")->required();
  cons->add_option("--eps", cons_eps, "l1 robustness radius")->required()
      ->check(CLI::NonNegativeNumber);
  cons->add_option("-o,--output", cons_out, "write the mechanism as JSON");
  cons->callback([&]() {
    const PersuasionInstance inst = load_instance(cons_path);
    const Belief mu = parse_prior_csv(cons_prior, "--prior");
    const RegularityCertificate cert = estimate_regularity(inst);
    const RobustConstruction rc = construct_robust_mechanism(inst, mu, cons_eps, cert);
    const double v = value(inst, mu, rc.mechanism);
    const double p0 = inst.prior_floor();
    std::printf("D=%.6f\nrho_bar=%.6f\ndelta=%.6f\nfallback=%s\n", cert.D, rc.rho_bar, rc.delta,
                rc.full_information_fallback ? "true" : "false");
    std::printf("opt=%.6f\nvalue=%.6f\nloss_bound=%.6f\n", rc.opt_value, v,
                4.0 * cons_eps / (p0 * p0 * cert.D));
    print_kernel(inst, rc.mechanism);
    maybe_save_mechanism(rc.mechanism, cons_out);
  });

  // lowerbound
  auto* lb = app.add_subcommand("lowerbound", "Cost-of-robustness demonstration instance");
  double lb_D = 0.01, lb_p0 = 0.1, lb_eps = 0.005;
  lb->add_option("--D", lb_D, "regularity parameter")->required();
  lb->add_option("--p0", lb_p0, "prior floor")->required();
  lb->add_option("--eps", lb_eps, "perturbation radius, must lie in (0, D)")->required();
  lb->callback([&]() {
    auto [inst, mu_star] = build_instance_I0(lb_D, lb_p0);
    auto [mu_up, mu_down] = build_lower_bound_priors(mu_star, lb_eps);
    const SignalingMechanism sigma_hat = closed_form_I0_sigma_hat(lb_D, lb_p0, lb_eps);

    const double opt = solve_opt(inst, mu_star).value;
    const std::vector<Belief> priors{mu_star, mu_up, mu_down};
    const double rob = robust_opt(inst, mu_star, priors).value;
    const double raw_gap = opt - rob;
    const double bound_raw = lb_eps / (8.0 * lb_D * lb_p0);
    const double bound = std::min(1.0, bound_raw);
    const double closed_value = value(inst, mu_star, sigma_hat);

    std::printf("opt=%.6f\nrobust=%.6f\ngap=%.6f\n", opt, rob, raw_gap);
    std::printf("bound_raw=%.6f\nbound=%.6f\n", bound_raw, bound);
    if (bound_raw > 1.0)
      std::printf("note: eps/(8*D*p0) exceeds 1 and is clamped; any gap <= 1 by opt <= 1\n");
    std::printf("closed_form(w1,a1)=%.6f\nclosed_form(w1,a2)=%.6f\nclosed_form_value=%.6f\n",
                sigma_hat.prob(1, 1), sigma_hat.prob(1, 2), closed_value);
    std::printf("closed_form_agreement=%.2e\n", std::abs(closed_value - rob));
    std::printf("cost_of_robustness: %s\n", raw_gap >= bound - 1e-9 ? "PASS" : "FAIL");
  });

  // simulate / sweep
  for (const bool is_sweep : {false, true}) {
    auto* cmd = is_sweep
                    ? app.add_subcommand("sweep", "Run a (T, seed) grid and emit the CSV")
                    : app.add_subcommand("simulate", "Run one simulation cell and emit the CSV");
    auto cfg_path = std::make_shared<std::string>();
    auto jobs = std::make_shared<int>(1);
    cmd->add_option("--config", *cfg_path, "experiment config JSON")->required();
    cmd->add_option("--jobs", *jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->callback([cfg_path, jobs, is_sweep]() {
      const ExperimentConfig cfg = load_experiment_config(*cfg_path);
      if (!is_sweep && (cfg.T_list.size() != 1 || cfg.seeds.size() != 1))
        throw ValidationError("simulate: config must define exactly one 'T' and one 'seed'");
      const std::vector<SweepCell> cells =
          sweep(cfg.instance, cfg.mu_true, cfg.algorithm, cfg.T_list, cfg.seeds, cfg.sim, *jobs);
      emit_csv_and_summary(cells, cfg.output);
    });
  }

  // audit
  auto* aud = app.add_subcommand("audit", "Check a mechanism's obedience slacks at a prior");
  std::string aud_path, aud_prior, aud_mech;
  double aud_tol = 1e-7;
  aud->add_option("instance", aud_path, "instance file")->required();
  aud->add_option("--prior", aud_prior, "prior weights")->required();
  aud->add_option("--mechanism", aud_mech, "mechanism JSON file")->required();
  aud->add_option("--tol", aud_tol, "slack tolerance");
  aud->callback([&]() {
    const PersuasionInstance inst = load_instance(aud_path);
    const Belief mu = parse_prior_csv(aud_prior, "--prior");
    const SignalingMechanism mech = load_mechanism(aud_mech);
    const PersuasionAudit a = is_persuasive(inst, mu, mech, aud_tol);
    std::printf("persuasive=%s\nworst_slack=%.6e\n", a.persuasive ? "true" : "false",
                a.worst_slack);
    if (a.worst_signal >= 0)
      std::printf("worst_signal=%s\nworst_alternative=%s\n",
                  mech.signals()[a.worst_signal].c_str(),
                  inst.actions()[a.worst_alternative].c_str());
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
