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

#include "nsbandit/accounting.hpp"

#include <cmath>
#include <stdexcept>

namespace nsbandit {

std::vector<double> regret_series(const EpisodeTrace& trace) {
  std::vector<double> series;
  series.reserve(trace.records.size());
  double acc = 0.0;
  for (const auto& rec : trace.records) {
    acc += rec.oracle_mean - rec.arm_mean;
    series.push_back(acc);
  }
  return series;
}

std::vector<double> realized_regret_series(const EpisodeTrace& trace) {
  std::vector<double> series;
  series.reserve(trace.records.size());
  double acc = 0.0;
  for (const auto& rec : trace.records) {
    acc += rec.oracle_mean - rec.reward;
    series.push_back(acc);
  }
  return series;
}

std::vector<long> bad_play_counts(const EpisodeTrace& trace, int arm_count) {
  std::vector<long> counts(static_cast<size_t>(arm_count), 0);
  for (const auto& rec : trace.records) {
    if (rec.arm != rec.oracle_arm) counts[static_cast<size_t>(rec.arm - 1)] += 1;
  }
  return counts;
}

AggregateSummary aggregate(std::span<const EpisodeTrace> traces, int arm_count,
                           ArmId frequency_arm) {
  if (traces.empty()) throw std::invalid_argument("aggregate: no traces");
  const size_t horizon = traces.front().records.size();
  const std::string& policy = traces.front().policy;
  for (const auto& trace : traces) {
    if (trace.records.size() != horizon)
      throw std::invalid_argument("aggregate: traces have inconsistent horizons");
    if (trace.policy != policy)
      throw std::invalid_argument("aggregate: traces come from different policies");
  }

  const size_t n = traces.size();
  AggregateSummary out;
  out.policy = policy;
  out.replications = static_cast<int>(n);
  out.horizon = static_cast<long>(horizon);
  out.frequency_arm = frequency_arm;
  out.mean_regret.assign(horizon, 0.0);
  out.stderr_regret.assign(horizon, 0.0);
  out.arm_frequency.assign(horizon, 0.0);
  out.mean_bad_plays.assign(static_cast<size_t>(arm_count), 0.0);

  std::vector<std::vector<double>> regrets;
  regrets.reserve(n);
  for (const auto& trace : traces) {
    regrets.push_back(regret_series(trace));
    long pulls = 0;
    for (size_t t = 0; t < horizon; ++t) {
      if (trace.records[t].arm == frequency_arm) ++pulls;
      out.arm_frequency[t] += static_cast<double>(pulls) / static_cast<double>(t + 1);
    }
    const auto bad = bad_play_counts(trace, arm_count);
    for (size_t i = 0; i < bad.size(); ++i) out.mean_bad_plays[i] += static_cast<double>(bad[i]);
  }

  for (size_t t = 0; t < horizon; ++t) {
    double sum = 0.0;
    for (const auto& series : regrets) sum += series[t];
    const double mean = sum / static_cast<double>(n);
    out.mean_regret[t] = mean;
    if (n > 1) {
      double ss = 0.0;
      for (const auto& series : regrets) ss += (series[t] - mean) * (series[t] - mean);
      out.stderr_regret[t] = std::sqrt(ss / static_cast<double>(n - 1)) /
                             std::sqrt(static_cast<double>(n));
    }
    out.arm_frequency[t] /= static_cast<double>(n);
  }
  for (double& b : out.mean_bad_plays) b /= static_cast<double>(n);
  return out;
}

}  // namespace nsbandit
