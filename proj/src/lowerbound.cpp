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

#include "nsbandit/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nsbandit/accounting.hpp"

namespace nsbandit::lowerbound {

namespace {

struct SampleStats {
  double mean = 0;
  double stderr_mean = 0;
};

SampleStats summarize(const std::vector<double>& values) {
  SampleStats stats;
  const double n = static_cast<double>(values.size());
  for (double v : values) stats.mean += v;
  stats.mean /= n;
  if (values.size() > 1) {
    double ss = 0;
    for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
    stats.stderr_mean = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return stats;
}

EpisodeConfig episode_config(const LowerBoundConfig& config, uint64_t seed) {
  EpisodeConfig ec;
  ec.arm_count = config.arm_count();
  ec.horizon = config.horizon;
  ec.reward_bound = 1.0;
  ec.seed = seed;
  ec.replications = config.replications;
  return ec;
}

}  // namespace

double kl_bernoulli(double p, double q) {
  if (p < 0.0 || p > 1.0 || q < 0.0 || q > 1.0)
    throw std::domain_error("kl_bernoulli: arguments must lie in [0,1]");
  if (q == 0.0 || q == 1.0) {
    if (p == q) return 0.0;
    throw std::domain_error("kl_bernoulli: infinite divergence (degenerate q, p != q)");
  }
  double kl = 0.0;
  if (p > 0.0) kl += p * std::log(p / q);
  if (p < 1.0) kl += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  return kl;
}

void LowerBoundConfig::validate() const {
  if (base_means.size() < 2) throw std::invalid_argument("need at least two arms");
  for (double mu : base_means)
    if (mu < 0.0 || mu > 1.0) throw std::invalid_argument("base means must lie in [0,1]");
  for (size_t i = 1; i < base_means.size(); ++i) {
    if (!(base_means[0] > base_means[i]))
      throw std::invalid_argument("arm 1 must strictly dominate every other arm");
  }
  if (!(modified_mean > base_means[0]) || modified_mean > 1.0)
    throw std::invalid_argument("modified mean must satisfy mu(1) < nu <= 1");
  if (period < 1 || horizon < period) throw std::invalid_argument("need 1 <= period <= horizon");
  if (replications < 1) throw std::invalid_argument("replications must be >= 1");
}

PiecewiseConstantBernoulli base_env(const LowerBoundConfig& config) {
  config.validate();
  std::vector<std::vector<MeanSegment>> schedule;
  schedule.reserve(config.base_means.size());
  for (double mu : config.base_means) schedule.push_back({{1, mu}});
  return PiecewiseConstantBernoulli(config.horizon, std::move(schedule));
}

PiecewiseConstantBernoulli modified_env(const LowerBoundConfig& config, int j) {
  config.validate();
  if (j < 1 || j > config.period_count())
    throw std::out_of_range("modified_env: block index out of range");
  std::vector<std::vector<MeanSegment>> schedule;
  schedule.reserve(config.base_means.size());
  for (size_t i = 0; i + 1 < config.base_means.size(); ++i)
    schedule.push_back({{1, config.base_means[i]}});

  const double base = config.base_means.back();
  const long start = static_cast<long>(j - 1) * config.period + 1;
  const long end = static_cast<long>(j) * config.period;  // inclusive
  std::vector<MeanSegment> last;
  if (start == 1) {
    last.push_back({1, config.modified_mean});
  } else {
    last.push_back({1, base});
    last.push_back({start, config.modified_mean});
  }
  if (end < config.horizon) last.push_back({end + 1, base});
  schedule.push_back(std::move(last));
  return PiecewiseConstantBernoulli(config.horizon, std::move(schedule));
}

MixtureRegretReport mixture_regret(const PolicyFactory& make_policy,
                                   const LowerBoundConfig& config, uint64_t seed) {
  LowerBoundConfig cfg = config;
  cfg.validate();

  const int arms = cfg.arm_count();
  const double mu_top = cfg.base_means.front();
  const double mu_last = cfg.base_means.back();
  const double alpha = kl_bernoulli(mu_last, cfg.modified_mean);

  const auto run_batch = [&](const Environment& env, const std::string& tag, int replications,
                             std::vector<double>& regrets, double* last_arm_pulls) {
    auto policy = make_policy(env);
    const EpisodeConfig ec = episode_config(cfg, seed);
    for (int rep = 0; rep < replications; ++rep) {
      RngStream rng = derive_stream(seed, static_cast<uint64_t>(rep), tag);
      const EpisodeTrace trace = run_episode(ec, env, *policy, rng, rep);
      regrets.push_back(regret_series(trace).back());
      if (last_arm_pulls != nullptr) {
        long pulls = 0;
        for (const auto& rec : trace.records)
          if (rec.arm == arms) ++pulls;
        *last_arm_pulls += static_cast<double>(pulls);
      }
    }
  };

  // Pilot estimate of E[N_T(K)] drives the optimizing block length.
  const PiecewiseConstantBernoulli base = base_env(cfg);
  if (cfg.auto_period) {
    const int pilot_replications = std::min(cfg.replications, 10);
    std::vector<double> pilot_regrets;
    double pilot_pulls = 0;
    run_batch(base, "lb-pilot", pilot_replications, pilot_regrets, &pilot_pulls);
    pilot_pulls /= static_cast<double>(pilot_replications);
    if (pilot_pulls > 0 && alpha > 0) {
      const double tau = 16.0 * static_cast<double>(cfg.horizon) / (9.0 * alpha * pilot_pulls);
      cfg.period = std::clamp(static_cast<long>(std::llround(tau)), 1L, cfg.horizon);
    }
  }

  MixtureRegretReport report;
  report.periods = cfg.period_count();
  report.period = cfg.period;
  report.replications = cfg.replications;
  report.alpha = alpha;
  const double delta_gap = cfg.modified_mean - mu_top;
  report.c_mu = 32.0 * delta_gap * (mu_top - mu_last) / (27.0 * alpha);
  report.minimax_threshold = std::sqrt(report.c_mu * static_cast<double>(cfg.horizon));

  run_batch(base, "lb-base", cfg.replications, report.base_episode_regret,
            &report.base_pulls_last_arm);
  report.base_pulls_last_arm /= static_cast<double>(cfg.replications);
  {
    auto policy = make_policy(base);
    report.policy = policy->name();
    report.randomized = policy->randomized();
    report.clairvoyant = policy->clairvoyant();
  }
  const SampleStats base_stats = summarize(report.base_episode_regret);
  report.base_regret = base_stats.mean;
  report.base_regret_stderr = base_stats.stderr_mean;

  double mixture_sum = 0.0;
  double mixture_var = 0.0;
  for (int j = 1; j <= report.periods; ++j) {
    const PiecewiseConstantBernoulli env = modified_env(cfg, j);
    std::vector<double> regrets;
    run_batch(env, "lb-block-" + std::to_string(j), cfg.replications, regrets, nullptr);
    const SampleStats stats = summarize(regrets);
    report.per_period_regret.push_back(stats.mean);
    report.block_episode_regret.push_back(std::move(regrets));
    mixture_sum += stats.mean;
    mixture_var += stats.stderr_mean * stats.stderr_mean;
  }
  const double m = static_cast<double>(report.periods);
  report.mixture_regret = mixture_sum / m;
  report.mixture_regret_stderr = std::sqrt(mixture_var) / m;

  report.bound = report.base_regret > 0
                     ? report.c_mu * static_cast<double>(cfg.horizon) / report.base_regret
                     : std::numeric_limits<double>::infinity();

  const double pulls_mean = report.base_pulls_last_arm;
  const double horizon = static_cast<double>(cfg.horizon);
  report.precondition_stated =
      64.0 / (9.0 * alpha) <= pulls_mean && pulls_mean <= horizon / (4.0 * alpha);
  report.precondition_derivation =
      16.0 / (9.0 * alpha) <= pulls_mean && pulls_mean <= horizon / alpha;
  return report;
}

std::vector<MixtureScanRow> mixture_scan(const PolicyFactory& make_policy,
                                         const LowerBoundConfig& config,
                                         std::span<const long> horizons, uint64_t seed) {
  config.validate();
  const int blocks = config.period_count();
  std::vector<MixtureScanRow> rows;
  rows.reserve(horizons.size());
  for (long horizon : horizons) {
    LowerBoundConfig cfg = config;
    cfg.horizon = horizon;
    cfg.period = std::max(1L, horizon / blocks);
    const MixtureRegretReport report = mixture_regret(make_policy, cfg, seed);
    MixtureScanRow row;
    row.horizon = horizon;
    row.mixture_regret = report.mixture_regret;
    row.scaled = report.mixture_regret * std::log(static_cast<double>(horizon)) /
                 static_cast<double>(horizon);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace nsbandit::lowerbound
