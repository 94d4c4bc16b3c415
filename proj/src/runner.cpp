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

#include "nsbandit/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "json.hpp"
#include "nsbandit/policies.hpp"

namespace nsbandit::runner {

using nlohmann::json;

// -- tuning ---------------------------------------------------------------------

double tune_gamma(long horizon, long breakpoints, double reward_bound) {
  if (horizon < 1 || breakpoints < 1 || !(reward_bound > 0))
    throw std::domain_error("tune_gamma: need horizon >= 1, breakpoints >= 1, B > 0");
  const double gamma = 1.0 - std::sqrt(static_cast<double>(breakpoints) /
                                       static_cast<double>(horizon)) /
                                 (4.0 * reward_bound);
  if (!(gamma > 0.0) || !(gamma < 1.0))
    throw std::domain_error("tune_gamma: result outside (0,1)");
  return gamma;
}

double tune_gamma_density(double rate, double reward_bound) {
  if (!(rate > 0.0) || rate > 1.0 || !(reward_bound > 0))
    throw std::domain_error("tune_gamma_density: need rate in (0,1], B > 0");
  const double gamma = 1.0 - std::sqrt(rate) / (4.0 * reward_bound);
  if (!(gamma > 0.0)) throw std::domain_error("tune_gamma_density: result outside (0,1)");
  return gamma;
}

long tune_tau(long horizon, long breakpoints, double reward_bound) {
  if (horizon < 1 || breakpoints < 1 || !(reward_bound > 0))
    throw std::domain_error("tune_tau: need horizon >= 1, breakpoints >= 1, B > 0");
  const double t = static_cast<double>(horizon);
  const double tau = 2.0 * reward_bound *
                     std::sqrt(t * std::log(t) / static_cast<double>(breakpoints));
  return std::max(2L, static_cast<long>(std::llround(tau)));
}

long tune_tau_density(double rate, double reward_bound) {
  if (!(rate > 0.0) || rate > 1.0 || !(reward_bound > 0))
    throw std::domain_error("tune_tau_density: need rate in (0,1], B > 0");
  const double tau = 2.0 * reward_bound * std::sqrt(-std::log(rate) / rate);
  return std::max(2L, static_cast<long>(std::llround(tau)));
}

double doubling_gamma(long t, double beta, double reward_bound) {
  if (t < 1 || beta < 0.0 || beta >= 1.0 || !(reward_bound > 0))
    throw std::domain_error("doubling_gamma: need t >= 1, beta in [0,1), B > 0");
  const long k = static_cast<long>(std::floor(std::log2(static_cast<double>(t))));
  const double block = std::pow(2.0, static_cast<double>(k));
  return 1.0 - std::pow(block, (beta - 1.0) / 2.0) / (4.0 * reward_bound);
}

double fig1_discount(long horizon) {
  return 1.0 - 1.0 / (4.0 * std::sqrt(static_cast<double>(horizon)));
}

long fig1_window(long horizon) {
  const double t = static_cast<double>(horizon);
  return std::max(2L, static_cast<long>(std::llround(4.0 * std::sqrt(t * std::log(t)))));
}

double exp3s_mix(int arm_count, long horizon, long breakpoints) {
  const double k = static_cast<double>(arm_count);
  const double t = static_cast<double>(horizon);
  const double load = k * (static_cast<double>(breakpoints) * std::log(k * t) + std::numbers::e);
  return std::min(1.0, std::sqrt(load / ((std::numbers::e - 1.0) * t)));
}

// -- configuration ----------------------------------------------------------------

namespace {

std::vector<PolicySpec> preset_policies(const std::string& name, long horizon) {
  const int arms = (name == "fig1-right") ? 2 : 3;
  const long breakpoints = 2;
  PolicySpec ucb1{.kind = "ucb1", .label = "ucb1", .xi = 0.5};
  PolicySpec exp3s{.kind = "exp3s",
                   .label = "exp3s",
                   .mix = exp3s_mix(arms, horizon, breakpoints),
                   .share = 1.0 / static_cast<double>(horizon)};
  PolicySpec ducb{.kind = "ducb", .label = "ducb", .xi = 0.5, .discount = fig1_discount(horizon)};
  PolicySpec swucb{.kind = "swucb", .label = "swucb", .xi = 0.5, .window = fig1_window(horizon)};
  PolicySpec oracle{.kind = "oracle", .label = "oracle"};
  return {ucb1, exp3s, ducb, swucb, oracle};
}

PolicySpec parse_policy(const json& node) {
  PolicySpec spec;
  spec.kind = node.at("kind").get<std::string>();
  spec.label = node.value("label", spec.kind);
  spec.xi = node.value("xi", 0.5);
  spec.discount = node.value("gamma", 1.0);
  spec.window = node.value("tau", 0L);
  spec.mix = node.value("mix", 0.0);
  spec.share = node.value("share", 0.0);
  return spec;
}

ScenarioSpec parse_scenario(const json& node) {
  ScenarioSpec scenario;
  if (node.is_string()) {
    scenario.preset = node.get<std::string>();
    return scenario;
  }
  const std::string type = node.at("type").get<std::string>();
  if (type == "periodic") {
    scenario.periodic = true;
    scenario.cycles = node.value("cycles", 1.0);
  } else if (type == "piecewise") {
    for (const auto& arm : node.at("arms")) {
      std::vector<MeanSegment> schedule;
      for (const auto& seg : arm)
        schedule.push_back({seg.at(0).get<long>(), seg.at(1).get<double>()});
      scenario.arm_segments.push_back(std::move(schedule));
    }
  } else {
    throw std::runtime_error("config: unknown scenario type '" + type + "'");
  }
  return scenario;
}

}  // namespace

ExperimentConfig preset_config(const std::string& name, long horizon, int replications,
                               uint64_t seed) {
  if (name != "fig1-left" && name != "fig1-right")
    throw std::runtime_error("unknown preset '" + name + "'");
  ExperimentConfig config;
  config.scenario.preset = name;
  config.horizon = horizon;
  config.replications = replications;
  config.seed = seed;
  config.frequency_arm = 1;
  config.policies = preset_policies(name, horizon);
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::runtime_error("config parse error: " + std::string(e.what()));
  }
  try {
    ExperimentConfig config;
    config.horizon = doc.value("T", 10000L);
    config.replications = doc.value("replications", 100);
    config.seed = doc.value("seed", uint64_t{1});
    config.out_dir = doc.value("out_dir", std::string("out"));
    config.frequency_arm = doc.value("frequency_arm", 1);
    config.scenario = parse_scenario(doc.at("scenario"));

    if (doc.contains("policies")) {
      for (const auto& node : doc.at("policies")) config.policies.push_back(parse_policy(node));
    } else if (!config.scenario.preset.empty()) {
      config.policies = preset_policies(config.scenario.preset, config.horizon);
    }
    if (config.policies.empty()) throw std::runtime_error("config: at least one policy required");
    return config;
  } catch (const json::exception& e) {
    throw std::runtime_error("config error: " + std::string(e.what()));
  }
}

std::unique_ptr<Environment> build_environment(const ExperimentConfig& config) {
  const ScenarioSpec& s = config.scenario;
  if (s.preset == "fig1-left")
    return std::make_unique<PiecewiseConstantBernoulli>(fig1_left_environment(config.horizon));
  if (s.preset == "fig1-right")
    return std::make_unique<PeriodicBernoulli>(fig1_right_environment(config.horizon, s.cycles));
  if (!s.preset.empty()) throw std::runtime_error("unknown preset '" + s.preset + "'");
  if (s.periodic) return std::make_unique<PeriodicBernoulli>(config.horizon, s.cycles);
  if (s.arm_segments.empty()) throw std::runtime_error("config: empty scenario");
  return std::make_unique<PiecewiseConstantBernoulli>(config.horizon, s.arm_segments);
}

std::unique_ptr<Policy> build_policy(const PolicySpec& spec, const Environment& env) {
  if (spec.kind == "ucb1") return std::make_unique<Ucb1Policy>(spec.xi, spec.label);
  if (spec.kind == "ducb") return std::make_unique<DucbPolicy>(spec.discount, spec.xi, spec.label);
  if (spec.kind == "swucb") return std::make_unique<SwucbPolicy>(spec.window, spec.xi, spec.label);
  if (spec.kind == "exp3s") return std::make_unique<Exp3sPolicy>(spec.mix, spec.share, spec.label);
  if (spec.kind == "oracle") return std::make_unique<OraclePolicy>(env, spec.label);
  throw std::runtime_error("unknown policy kind '" + spec.kind + "'");
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::vector<AggregateSummary> run_experiment(const ExperimentConfig& config) {
  const std::unique_ptr<Environment> env = build_environment(config);

  EpisodeConfig ec;
  ec.arm_count = env->arm_count();
  ec.horizon = config.horizon;
  ec.reward_bound = env->reward_bound();
  ec.seed = config.seed;
  ec.replications = config.replications;

  std::vector<AggregateSummary> summaries;
  summaries.reserve(config.policies.size());
  for (const PolicySpec& spec : config.policies) {
    auto policy = build_policy(spec, *env);
    std::vector<EpisodeTrace> traces;
    traces.reserve(static_cast<size_t>(config.replications));
    for (int rep = 0; rep < config.replications; ++rep) {
      RngStream rng = derive_stream(config.seed, static_cast<uint64_t>(rep), spec.label);
      traces.push_back(run_episode(ec, *env, *policy, rng, rep));
    }
    summaries.push_back(aggregate(traces, env->arm_count(), config.frequency_arm));
  }

  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);

  {
    std::ofstream out(fs::path(config.out_dir) / "per_round.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write per_round.csv");
    out << "t,policy,mean_regret,stderr_regret,freq_arm\n";
    for (const AggregateSummary& s : summaries) {
      for (long t = 1; t <= s.horizon; ++t) {
        const size_t k = static_cast<size_t>(t - 1);
        out << t << ',' << s.policy << ',' << format_double(s.mean_regret[k]) << ','
            << format_double(s.stderr_regret[k]) << ',' << format_double(s.arm_frequency[k])
            << '\n';
      }
    }
  }
  {
    std::ofstream out(fs::path(config.out_dir) / "summary.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write summary.csv");
    out << "policy,T,final_mean_regret,final_stderr";
    for (int i = 1; i <= env->arm_count(); ++i) out << ",bad_plays_arm" << i;
    out << '\n';
    for (const AggregateSummary& s : summaries) {
      out << s.policy << ',' << s.horizon << ',' << format_double(s.mean_regret.back()) << ','
          << format_double(s.stderr_regret.back());
      for (double b : s.mean_bad_plays) out << ',' << format_double(b);
      out << '\n';
    }
  }
  return summaries;
}

}  // namespace nsbandit::runner
