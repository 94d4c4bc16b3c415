// Copyright 2026 The nsbandit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nsbandit/lowerbound.hpp"
#include "nsbandit/policies.hpp"
#include "nsbandit/runner.hpp"
#include "nsbandit/theory.hpp"

namespace {

using namespace nsbandit;

std::string default_out_dir() {
  const char* env = std::getenv("NSBANDIT_OUT");
  return env != nullptr ? env : "out";
}

struct SimulateOptions {
  std::string config_path;
  std::string preset;
  long horizon = 10000;
  int replications = 100;
  uint64_t seed = 1;
  bool seed_given = false;
  std::string out_dir;
};

int cmd_simulate(const SimulateOptions& opt) {
  runner::ExperimentConfig config;
  if (!opt.config_path.empty()) {
    config = runner::load_config(opt.config_path);
  } else if (!opt.preset.empty()) {
    config = runner::preset_config(opt.preset, opt.horizon, opt.replications, opt.seed);
  } else {
    std::cerr << "simulate: either --config or --preset is required\n";
    return 1;
  }
  if (!opt.out_dir.empty())
    config.out_dir = opt.out_dir;
  else if (config.out_dir == "out")
    config.out_dir = default_out_dir();
  if (opt.seed_given) config.seed = opt.seed;

  const auto summaries = runner::run_experiment(config);
  for (const auto& s : summaries) {
    std::cout << s.policy << ": final regret " << runner::format_double(s.mean_regret.back())
              << " +/- " << runner::format_double(s.stderr_regret.back()) << " ("
              << s.replications << " replications)\n";
  }
  std::cout << "wrote " << config.out_dir << "/per_round.csv and summary.csv\n";
  return 0;
}

struct BoundsOptions {
  std::string family = "ducb";
  double gamma = 0.99;
  long tau = 100;
  double xi = 0.6;
  double reward_bound = 1.0;
  long horizon = 10000;
  int arms = 3;
  long breakpoints = 2;
  double gap = 0.2;
};

int cmd_bounds(const BoundsOptions& opt) {
  if (opt.family == "ducb") {
    theory::DucbBoundParams params{opt.gamma, opt.xi, opt.reward_bound,
                                   opt.horizon, opt.arms, opt.breakpoints, opt.gap};
    const auto report = theory::ducb_regret_bound(params);
    std::cout << "A(gamma)  = " << runner::format_double(report.a) << '\n'
              << "D(gamma)  = " << runner::format_double(report.d)
              << (report.d_clamped ? "  (clamped to >= 0)" : "") << '\n'
              << "B(gamma)  = " << runner::format_double(report.b_factor) << '\n'
              << "C(gamma)  = " << runner::format_double(report.c_factor) << '\n'
              << "bound     = " << runner::format_double(report.rhs)
              << (report.vacuous ? "  (vacuous: exceeds horizon)" : "") << '\n';
  } else if (opt.family == "swucb") {
    theory::SwucbBoundParams params{opt.tau, opt.xi, opt.reward_bound,
                                    opt.horizon, opt.breakpoints, opt.gap};
    const auto report = theory::swucb_regret_bound(params);
    std::cout << "C(tau)    = " << runner::format_double(report.c_factor) << '\n'
              << "bound     = " << runner::format_double(report.rhs)
              << (report.vacuous ? "  (vacuous: exceeds horizon)" : "") << '\n';
  } else {
    std::cerr << "bounds: family must be ducb or swucb\n";
    return 1;
  }
  return 0;
}

struct ConcentrationOptions {
  std::vector<double> gammas{0.9, 0.99, 1.0};
  std::vector<double> deltas{0.5, 1.0, 1.5};
  long rounds = 500;
  long replications = 100000;
  double eta = 0.3;
  double mean = 0.5;
  double reward_bound = 1.0;
  double threshold = 0.5;
  bool supremum = false;
  uint64_t seed = 1;
  std::string out_path;
};

int cmd_concentration(const ConcentrationOptions& opt) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!opt.out_path.empty()) {
    file.open(opt.out_path, std::ios::binary);
    if (!file) {
      std::cerr << "concentration: cannot write " << opt.out_path << '\n';
      return 1;
    }
    out = &file;
  }
  *out << "mode,rule,gamma,delta,replications,empirical,bound,stderr,satisfied\n";
  bool all_ok = true;
  for (const auto rule : {theory::SelectionRule::kAlways,
                          theory::SelectionRule::kMeanBelowThreshold}) {
    theory::StreamSpec spec;
    spec.success_probability = opt.mean;
    spec.reward_bound = opt.reward_bound;
    spec.rounds = opt.rounds;
    spec.rule = rule;
    spec.threshold = opt.threshold;
    const std::string rule_name =
        rule == theory::SelectionRule::kAlways ? "always" : "threshold";
    for (double gamma : opt.gammas) {
      const RngStream root = derive_stream(opt.seed, 0, "concentration-" + rule_name);
      for (double delta : opt.deltas) {
        const auto result =
            opt.supremum
                ? theory::sup_exceedance_estimate(spec, gamma, delta, opt.eta,
                                                  opt.replications, root)
                : theory::exceedance_estimate(spec, gamma, delta, opt.eta, opt.replications,
                                              root);
        const bool ok = result.empirical <= result.bound + 3.0 * result.standard_error;
        all_ok = all_ok && ok;
        *out << (opt.supremum ? "sup" : "fixed") << ',' << rule_name << ','
             << runner::format_double(gamma) << ',' << runner::format_double(delta) << ','
             << result.replications << ',' << runner::format_double(result.empirical) << ','
             << runner::format_double(result.bound) << ','
             << runner::format_double(result.standard_error) << ',' << (ok ? 1 : 0) << '\n';
      }
    }
  }
  return all_ok ? 0 : 2;
}

struct LowerBoundOptions {
  std::vector<double> means{0.5, 0.3};
  double nu = 0.7;
  long horizon = 10000;
  long period = 1000;
  bool auto_period = false;
  int replications = 50;
  std::string policy = "ucb1";
  double xi = 0.5;
  double gamma = 0.99;
  long tau = 100;
  uint64_t seed = 1;
  std::string out_dir;
  std::vector<long> scan;
};

lowerbound::PolicyFactory make_factory(const LowerBoundOptions& opt) {
  return [opt](const Environment& env) -> std::unique_ptr<Policy> {
    runner::PolicySpec spec;
    spec.kind = opt.policy;
    spec.label = opt.policy;
    spec.xi = opt.xi;
    spec.discount = opt.gamma;
    spec.window = opt.tau;
    if (opt.policy == "exp3s") {
      spec.mix = runner::exp3s_mix(env.arm_count(), env.horizon(), 2);
      spec.share = 1.0 / static_cast<double>(env.horizon());
    }
    return runner::build_policy(spec, env);
  };
}

int cmd_lowerbound(const LowerBoundOptions& opt) {
  lowerbound::LowerBoundConfig config;
  config.base_means = opt.means;
  config.modified_mean = opt.nu;
  config.horizon = opt.horizon;
  config.period = opt.period;
  config.replications = opt.replications;
  config.auto_period = opt.auto_period;

  const auto factory = make_factory(opt);
  const std::string out_dir = opt.out_dir.empty() ? default_out_dir() : opt.out_dir;
  std::filesystem::create_directories(out_dir);

  const auto report = lowerbound::mixture_regret(factory, config, opt.seed);
  {
    std::ofstream out(std::filesystem::path(out_dir) / "lowerbound_summary.csv",
                      std::ios::binary);
    out << "policy,T,periods,period,replications,base_regret,base_stderr,mixture_regret,"
           "mixture_stderr,base_pulls_last_arm,alpha,c_mu,bound,minimax_threshold,"
           "precondition_stated,precondition_derivation,randomized,clairvoyant\n";
    out << report.policy << ',' << opt.horizon << ',' << report.periods << ',' << report.period
        << ',' << report.replications << ',' << runner::format_double(report.base_regret) << ','
        << runner::format_double(report.base_regret_stderr) << ','
        << runner::format_double(report.mixture_regret) << ','
        << runner::format_double(report.mixture_regret_stderr) << ','
        << runner::format_double(report.base_pulls_last_arm) << ','
        << runner::format_double(report.alpha) << ',' << runner::format_double(report.c_mu) << ','
        << runner::format_double(report.bound) << ','
        << runner::format_double(report.minimax_threshold) << ','
        << (report.precondition_stated ? 1 : 0) << ','
        << (report.precondition_derivation ? 1 : 0) << ',' << (report.randomized ? 1 : 0) << ','
        << (report.clairvoyant ? 1 : 0) << '\n';
  }
  {
    // one row per episode; j = 0 is the unmodified base environment
    std::ofstream out(std::filesystem::path(out_dir) / "lowerbound_runs.csv", std::ios::binary);
    out << "policy,T,j,replication,regret\n";
    for (size_t rep = 0; rep < report.base_episode_regret.size(); ++rep)
      out << report.policy << ',' << opt.horizon << ",0," << rep << ','
          << runner::format_double(report.base_episode_regret[rep]) << '\n';
    for (size_t j = 0; j < report.block_episode_regret.size(); ++j)
      for (size_t rep = 0; rep < report.block_episode_regret[j].size(); ++rep)
        out << report.policy << ',' << opt.horizon << ',' << (j + 1) << ',' << rep << ','
            << runner::format_double(report.block_episode_regret[j][rep]) << '\n';
  }
  std::cout << "mixture regret " << runner::format_double(report.mixture_regret)
            << ", base regret " << runner::format_double(report.base_regret)
            << ", sqrt(C(mu)T) = " << runner::format_double(report.minimax_threshold) << '\n';

  if (!opt.scan.empty()) {
    const auto rows = lowerbound::mixture_scan(factory, config, opt.scan, opt.seed);
    std::ofstream out(std::filesystem::path(out_dir) / "lowerbound_scan.csv", std::ios::binary);
    out << "policy,T,mixture_regret,scaled\n";
    for (const auto& row : rows)
      out << report.policy << ',' << row.horizon << ','
          << runner::format_double(row.mixture_regret) << ','
          << runner::format_double(row.scaled) << '\n';
  }
  std::cout << "wrote " << out_dir << "/lowerbound_summary.csv\n";
  return 0;
}

struct TuneOptions {
  long horizon = 10000;
  long breakpoints = 0;
  double density = 0.0;
  double reward_bound = 1.0;
};

int cmd_tune(const TuneOptions& opt) {
  if (opt.breakpoints > 0) {
    std::cout << "gamma = "
              << runner::format_double(
                     runner::tune_gamma(opt.horizon, opt.breakpoints, opt.reward_bound))
              << '\n'
              << "tau   = " << runner::tune_tau(opt.horizon, opt.breakpoints, opt.reward_bound)
              << '\n';
  } else if (opt.density > 0.0) {
    std::cout << "gamma = "
              << runner::format_double(runner::tune_gamma_density(opt.density, opt.reward_bound))
              << '\n'
              << "tau   = " << runner::tune_tau_density(opt.density, opt.reward_bound) << '\n';
  } else {
    std::cerr << "tune: supply --breakpoints or --density\n";
    return 1;
  }
  std::cout << "preset gamma = " << runner::format_double(runner::fig1_discount(opt.horizon))
            << '\n'
            << "preset tau   = " << runner::fig1_window(opt.horizon) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-stationary bandit simulation lab"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "run a configured experiment, write CSVs");
  simulate->add_option("--config", sim.config_path, "JSON config path");
  simulate->add_option("--preset", sim.preset, "preset name: fig1-left or fig1-right");
  simulate->add_option("--t", sim.horizon, "horizon override for presets");
  simulate->add_option("--replications", sim.replications, "replications for presets");
  simulate->add_option("--seed", sim.seed, "base seed");
  simulate->add_option("--out", sim.out_dir, "output directory");

  BoundsOptions bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "evaluate the regret-bound formulas");
  bounds_cmd->add_option("--family", bounds.family, "ducb or swucb")->required();
  bounds_cmd->add_option("--gamma", bounds.gamma, "discount factor (ducb)");
  bounds_cmd->add_option("--tau", bounds.tau, "window size (swucb)");
  bounds_cmd->add_option("--xi", bounds.xi, "padding constant, must be > 1/2");
  bounds_cmd->add_option("--b", bounds.reward_bound, "reward upper bound");
  bounds_cmd->add_option("--t", bounds.horizon, "horizon");
  bounds_cmd->add_option("--arms", bounds.arms, "arm count");
  bounds_cmd->add_option("--breakpoints", bounds.breakpoints, "number of abrupt changes");
  bounds_cmd->add_option("--gap", bounds.gap, "minimum suboptimality gap");

  ConcentrationOptions conc;
  auto* conc_cmd = app.add_subcommand("concentration", "Monte Carlo deviation-bound grid");
  conc_cmd->add_option("--gamma", conc.gammas, "discount grid");
  conc_cmd->add_option("--delta", conc.deltas, "deviation level grid");
  conc_cmd->add_option("--t", conc.rounds, "rounds per path");
  conc_cmd->add_option("--replications", conc.replications, "Monte Carlo replications");
  conc_cmd->add_option("--eta", conc.eta, "grid parameter for the bound");
  conc_cmd->add_option("--mean", conc.mean, "Bernoulli success probability");
  conc_cmd->add_option("--b", conc.reward_bound, "reward upper bound");
  conc_cmd->add_option("--threshold", conc.threshold, "threshold for the previsible rule");
  conc_cmd->add_flag("--sup", conc.supremum, "check the running supremum instead of fixed t");
  conc_cmd->add_option("--seed", conc.seed, "base seed");
  conc_cmd->add_option("--out", conc.out_path, "CSV output path (stdout when omitted)");

  LowerBoundOptions lb;
  auto* lb_cmd = app.add_subcommand("lowerbound", "mixture-environment regret lab");
  lb_cmd->add_option("--mu", lb.means, "base means, best arm first");
  lb_cmd->add_option("--nu", lb.nu, "modified mean of the last arm");
  lb_cmd->add_option("--t", lb.horizon, "horizon");
  lb_cmd->add_option("--period", lb.period, "block length");
  lb_cmd->add_flag("--auto-period", lb.auto_period, "derive the block length from a pilot run");
  lb_cmd->add_option("--replications", lb.replications, "replications per environment");
  lb_cmd->add_option("--policy", lb.policy, "ucb1 | ducb | swucb | exp3s | oracle");
  lb_cmd->add_option("--xi", lb.xi, "padding constant");
  lb_cmd->add_option("--gamma", lb.gamma, "discount (ducb)");
  lb_cmd->add_option("--tau", lb.tau, "window (swucb)");
  lb_cmd->add_option("--seed", lb.seed, "base seed");
  lb_cmd->add_option("--out", lb.out_dir, "output directory");
  lb_cmd->add_option("--scan", lb.scan, "extra horizons for the scaled-regret scan");

  TuneOptions tune;
  auto* tune_cmd = app.add_subcommand("tune", "print tuned discount and window");
  tune_cmd->add_option("--t", tune.horizon, "horizon");
  tune_cmd->add_option("--breakpoints", tune.breakpoints, "known breakpoint count");
  tune_cmd->add_option("--density", tune.density, "breakpoint density in (0,1)");
  tune_cmd->add_option("--b", tune.reward_bound, "reward upper bound");

  CLI11_PARSE(app, argc, argv);
  sim.seed_given = simulate->count("--seed") > 0;

  try {
    if (simulate->parsed()) return cmd_simulate(sim);
    if (bounds_cmd->parsed()) return cmd_bounds(bounds);
    if (conc_cmd->parsed()) return cmd_concentration(conc);
    if (lb_cmd->parsed()) return cmd_lowerbound(lb);
    if (tune_cmd->parsed()) return cmd_tune(tune);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
