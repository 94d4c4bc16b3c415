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

#include "nsbandit/theory.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace nsbandit::theory {

namespace {

double clamped_log(double x) { return std::max(std::log(x), 0.0); }

double ceiling_factor(double log_value, double eta) {
  return std::max(1.0, std::ceil(log_value / std::log1p(eta)));
}

void check_gamma_xi(double gamma, double xi) {
  if (!(gamma > 0.0) || !(gamma < 1.0))
    throw std::domain_error("discount must lie in (0,1) for the bound");
  if (!(xi > 0.5)) throw std::domain_error("xi must be > 1/2 for the bound");
}

// eps_t as a function of the strictly earlier draws only.
struct SelectionState {
  double sum = 0.0;
  long count = 0;

  bool select(const StreamSpec& spec) const {
    switch (spec.rule) {
      case SelectionRule::kAlways:
        return true;
      case SelectionRule::kMeanBelowThreshold:
        return count == 0 || sum / static_cast<double>(count) < spec.threshold;
    }
    return true;
  }

  void record(double x) {
    sum += x;
    ++count;
  }
};

}  // namespace

double discounted_total(double gamma, long t) {
  if (t < 0) throw std::domain_error("discounted_total: negative round count");
  if (gamma == 1.0) return static_cast<double>(t);
  // 1 - gamma^t via expm1 keeps accuracy for gamma near 1.
  return -std::expm1(static_cast<double>(t) * std::log(gamma)) / (1.0 - gamma);
}

double default_eta(double xi) {
  if (!(xi > 0.5)) throw std::domain_error("default_eta: xi must be > 1/2");
  return 4.0 * std::sqrt(1.0 - 1.0 / (2.0 * xi));
}

// -- regret bounds ------------------------------------------------------------

double ducb_A(const DucbBoundParams& p) {
  check_gamma_xi(p.discount, p.xi);
  if (!(p.gap > 0.0)) throw std::domain_error("ducb_A: gap must be > 0");
  const double n_horizon = discounted_total(p.discount, p.horizon);
  return 16.0 * p.reward_bound * p.reward_bound * p.xi * clamped_log(n_horizon) /
         (p.gap * p.gap);
}

double ducb_D(const DucbBoundParams& p) {
  check_gamma_xi(p.discount, p.xi);
  const double n_init = discounted_total(p.discount, p.arm_count);
  const double inner = (1.0 - p.discount) * p.xi * std::log(n_init);
  if (!(inner > 0.0))
    throw std::domain_error("ducb_D: log argument not positive (arm_count too small?)");
  return std::log(inner) / std::log(p.discount);
}

DucbBoundReport ducb_regret_bound(const DucbBoundParams& p) {
  DucbBoundReport report;
  report.a = ducb_A(p);
  const double raw_d = ducb_D(p);

  const double gamma = p.discount;
  const double one_minus = 1.0 - gamma;
  const double log_inv = -std::log(one_minus);  // log(1/(1-gamma))
  const double eta = default_eta(p.xi);
  const double gamma_pow = std::pow(gamma, 1.0 / one_minus);  // gamma^(1/(1-gamma))
  const double t_scaled = static_cast<double>(p.horizon) * one_minus;

  const double first = 16.0 * p.reward_bound * p.reward_bound * p.xi /
                       (gamma_pow * p.gap * p.gap) * std::ceil(t_scaled) / t_scaled;
  const double second =
      2.0 * std::ceil(log_inv / std::log1p(eta)) / (log_inv * (1.0 - gamma_pow));
  report.b_factor = first + second;

  const double n_init = discounted_total(gamma, p.arm_count);
  const double inner = (1.0 - gamma) * p.xi * std::log(n_init);
  double c = (gamma - 1.0) / (std::log(one_minus) * std::log(gamma)) * std::log(inner);
  double d = raw_d;
  if (d < 0.0 || c < 0.0) {
    report.d_clamped = true;
    d = std::max(d, 0.0);
    c = std::max(c, 0.0);
  }
  report.d = d;
  report.c_factor = c;

  report.rhs = report.b_factor * t_scaled * log_inv +
               report.c_factor * static_cast<double>(p.breakpoints) / one_minus * log_inv;
  report.vacuous = report.rhs > static_cast<double>(p.horizon);
  return report;
}

SwucbBoundReport swucb_regret_bound(const SwucbBoundParams& p) {
  if (p.window < 2) throw std::domain_error("swucb bound: window must be >= 2");
  if (!(p.xi > 0.5)) throw std::domain_error("swucb bound: xi must be > 1/2");
  if (!(p.gap > 0.0)) throw std::domain_error("swucb bound: gap must be > 0");

  const double tau = static_cast<double>(p.window);
  const double horizon = static_cast<double>(p.horizon);
  const double log_tau = std::log(tau);
  const double eta = default_eta(p.xi);
  const double blocks = horizon / tau;

  SwucbBoundReport report;
  report.c_factor = 4.0 * p.reward_bound * p.reward_bound * p.xi / (p.gap * p.gap) *
                        std::ceil(blocks) / blocks +
                    2.0 / log_tau * std::ceil(log_tau / std::log1p(eta));
  report.rhs = report.c_factor * horizon * log_tau / tau +
               tau * static_cast<double>(p.breakpoints) + log_tau * log_tau;
  report.vacuous = report.rhs > horizon;
  return report;
}

// -- deviation bounds ---------------------------------------------------------

double deviation_bound(double delta, double eta, double reward_bound, double n) {
  if (!(delta > 0.0) || !(eta > 0.0) || !(n >= 1.0))
    throw std::domain_error("deviation_bound: need delta > 0, eta > 0, n >= 1");
  const double b2 = reward_bound * reward_bound;
  return ceiling_factor(std::log(n), eta) *
         std::exp(-(2.0 * delta * delta / b2) * (1.0 - eta * eta / 16.0));
}

double deviation_bound_sharp(double delta, double eta, double reward_bound, double n) {
  if (!(delta > 0.0) || !(eta > 0.0) || !(n >= 1.0))
    throw std::domain_error("deviation_bound_sharp: need delta > 0, eta > 0, n >= 1");
  const double quarter = std::pow(1.0 + eta, 0.25);
  const double denom = (quarter + 1.0 / quarter) * (quarter + 1.0 / quarter);
  const double b2 = reward_bound * reward_bound;
  return ceiling_factor(std::log(n), eta) * std::exp(-8.0 * delta * delta / (b2 * denom));
}

double maximal_bound(double delta, double eta, double reward_bound, double gamma, long horizon) {
  if (!(delta > 0.0) || !(eta > 0.0) || horizon < 1)
    throw std::domain_error("maximal_bound: need delta > 0, eta > 0, horizon >= 1");
  if (!(gamma > 0.0) || gamma > 1.0) throw std::domain_error("maximal_bound: gamma in (0,1]");
  double log_value;
  if (gamma == 1.0) {
    log_value = std::log(static_cast<double>(horizon));
  } else {
    log_value = -2.0 * static_cast<double>(horizon) * std::log(gamma) +
                std::log(discounted_total(gamma * gamma, horizon));
  }
  const double b2 = reward_bound * reward_bound;
  return ceiling_factor(log_value, eta) *
         std::exp(-(2.0 * delta * delta / b2) * (1.0 - eta * eta / 16.0));
}

double windowed_deviation_bound(double delta, double eta, double reward_bound, long t,
                                long window) {
  if (t < 1 || window < 1) throw std::domain_error("windowed_deviation_bound: t, window >= 1");
  return deviation_bound(delta, eta, reward_bound,
                         static_cast<double>(std::min(t, window)));
}

// -- Monte Carlo verification ---------------------------------------------------

namespace {

ExceedanceResult estimate_impl(const StreamSpec& spec, double gamma, double delta, double eta,
                               long replications, const RngStream& root, bool supremum) {
  if (replications < 1) throw std::domain_error("need replications >= 1");
  if (!(gamma > 0.0) || gamma > 1.0) throw std::domain_error("gamma must lie in (0,1]");
  const double mean = spec.success_probability * spec.reward_bound;

  long exceed = 0;
  for (long rep = 0; rep < replications; ++rep) {
    RngStream rng = root.substream(static_cast<uint64_t>(rep));
    SelectionState past;
    double r = 0.0, expected = 0.0, normalizer = 0.0;
    bool hit = false;
    for (long s = 1; s <= spec.rounds; ++s) {
      const double eps = past.select(spec) ? 1.0 : 0.0;
      const double x = rng.bernoulli(spec.success_probability) ? spec.reward_bound : 0.0;
      r = gamma * r + x * eps;
      expected = gamma * expected + mean * eps;
      normalizer = gamma * gamma * normalizer + eps;
      past.record(x);
      if (supremum && normalizer > 0.0 && (r - expected) / std::sqrt(normalizer) > delta)
        hit = true;
    }
    if (!supremum)
      hit = normalizer > 0.0 && (r - expected) / std::sqrt(normalizer) > delta;
    if (hit) ++exceed;
  }

  ExceedanceResult result;
  result.replications = replications;
  result.empirical = static_cast<double>(exceed) / static_cast<double>(replications);
  result.standard_error =
      std::sqrt(result.empirical * (1.0 - result.empirical) / static_cast<double>(replications));
  result.bound = supremum
                     ? maximal_bound(delta, eta, spec.reward_bound, gamma, spec.rounds)
                     : deviation_bound(delta, eta, spec.reward_bound,
                                       discounted_total(gamma, spec.rounds));
  return result;
}

}  // namespace

ExceedanceResult exceedance_estimate(const StreamSpec& spec, double gamma, double delta,
                                     double eta, long replications, const RngStream& root) {
  return estimate_impl(spec, gamma, delta, eta, replications, root, /*supremum=*/false);
}

ExceedanceResult sup_exceedance_estimate(const StreamSpec& spec, double gamma, double delta,
                                         double eta, long replications, const RngStream& root) {
  return estimate_impl(spec, gamma, delta, eta, replications, root, /*supremum=*/true);
}

// -- counting bounds ------------------------------------------------------------

CountingCheck windowed_count_bound_check(std::span<const ArmId> plays, long tau, double m, ArmId arm,
                                   int arm_count) {
  if (tau < 1 || !(m > 0)) throw std::domain_error("windowed_count_bound_check: tau >= 1, m > 0");
  const long horizon = static_cast<long>(plays.size());
  CountingCheck check;
  long window_count = 0;
  for (long t = 1; t <= horizon; ++t) {
    if (plays[static_cast<size_t>(t - 1)] == arm) ++window_count;
    if (t - tau >= 1 && plays[static_cast<size_t>(t - tau - 1)] == arm) --window_count;
    if (plays[static_cast<size_t>(t - 1)] == arm && static_cast<double>(window_count) < m)
      ++check.lhs;
  }
  check.rhs = std::ceil(static_cast<double>(horizon) / static_cast<double>(tau)) * m;
  check.rhs_with_arm_factor = static_cast<double>(arm_count) * check.rhs;
  check.holds = static_cast<double>(check.lhs) <= check.rhs;
  return check;
}

CountingCheck discounted_count_bound_check(std::span<const ArmId> plays, double gamma, long tau,
                                       double threshold, ArmId arm, int arm_count) {
  if (!(gamma > 0.0) || !(gamma < 1.0))
    throw std::domain_error("discounted_count_bound_check: gamma in (0,1)");
  if (tau < 1 || !(threshold > 0))
    throw std::domain_error("discounted_count_bound_check: tau >= 1, threshold > 0");
  const long horizon = static_cast<long>(plays.size());
  CountingCheck check;
  double discounted = 0.0;
  for (long t = 1; t <= horizon; ++t) {
    const bool played = plays[static_cast<size_t>(t - 1)] == arm;
    discounted = gamma * discounted + (played ? 1.0 : 0.0);
    if (played && discounted < threshold) ++check.lhs;
  }
  check.rhs = std::ceil(static_cast<double>(horizon) / static_cast<double>(tau)) * threshold *
              std::pow(gamma, static_cast<double>(-tau));
  check.rhs_with_arm_factor = static_cast<double>(arm_count) * check.rhs;
  check.holds = static_cast<double>(check.lhs) <= check.rhs;
  return check;
}

}  // namespace nsbandit::theory
