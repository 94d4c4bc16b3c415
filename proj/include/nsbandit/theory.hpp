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

#pragma once

#include <span>
#include <vector>

#include "nsbandit/core.hpp"
#include "nsbandit/rng.hpp"

namespace nsbandit::theory {

// n_t(gamma) = sum_{s=1..t} gamma^(t-s): (1-gamma^t)/(1-gamma) for gamma < 1,
// t for gamma = 1.
double discounted_total(double gamma, long t);

// Grid parameter eta = 4*sqrt(1 - 1/(2*xi)); requires xi > 1/2.
double default_eta(double xi);

// ---------------------------------------------------------------------------
// Regret-bound evaluators for the discounted and sliding-window index
// policies. All logs are natural; log arguments below 1 clamp the log to 0.
// ---------------------------------------------------------------------------

struct DucbBoundParams {
  double discount = 0.99;   // gamma in (0,1)
  double xi = 0.6;          // must be > 1/2
  double reward_bound = 1;  // B
  long horizon = 10000;     // T
  int arm_count = 2;        // K
  long breakpoints = 0;     // number of abrupt changes before T
  double gap = 0.1;         // minimum suboptimality gap of the audited arm
};

// A(gamma) = 16*B^2*xi*log(n_T(gamma)) / gap^2. Throws std::domain_error for
// gap <= 0 or invalid (gamma, xi).
double ducb_A(const DucbBoundParams& params);

// D(gamma) = log((1-gamma)*xi*log(n_K(gamma))) / log(gamma); the number of
// rounds after a change during which discounted estimates may stay poor.
// Throws std::domain_error when the outer log argument is not positive.
double ducb_D(const DucbBoundParams& params);

struct DucbBoundReport {
  double a = 0;            // A(gamma)
  double d = 0;            // D(gamma), clamped to >= 0 when the raw value is negative
  double b_factor = 0;     // B(gamma)
  double c_factor = 0;     // C(gamma), clamped with d
  double rhs = 0;          // bound on E[bad plays of the arm] over T rounds
  bool vacuous = false;    // rhs > T
  bool d_clamped = false;  // raw D(gamma)/C(gamma) were negative
};

// Full bound: rhs = B(gamma)*T*(1-gamma)*log(1/(1-gamma))
//                 + C(gamma)*(breakpoints/(1-gamma))*log(1/(1-gamma)).
DucbBoundReport ducb_regret_bound(const DucbBoundParams& params);

struct SwucbBoundParams {
  long window = 100;        // tau >= 2
  double xi = 0.6;          // must be > 1/2
  double reward_bound = 1;  // B
  long horizon = 10000;     // T
  long breakpoints = 0;
  double gap = 0.1;
};

struct SwucbBoundReport {
  double c_factor = 0;  // C(tau)
  double rhs = 0;       // C(tau)*T*log(tau)/tau + tau*breakpoints + log(tau)^2
  bool vacuous = false;
};

SwucbBoundReport swucb_regret_bound(const SwucbBoundParams& params);

// ---------------------------------------------------------------------------
// Self-normalized deviation bounds. The deviation statistic for a discounted
// sum R_t(gamma) of selected bounded variables is
//   (R_t(gamma) - E R_t(gamma)) / sqrt(N_t(gamma^2)).
// ---------------------------------------------------------------------------

// ceil(log(n)/log(1+eta)) * exp(-(2*delta^2/B^2)*(1-eta^2/16)), with the
// ceiling factor clamped to >= 1 so degenerate arguments still yield a valid
// probability bound.
double deviation_bound(double delta, double eta, double reward_bound, double n);

// Sharper variant: same ceiling factor times
// exp(-8*delta^2 / (B^2*((1+eta)^(1/4) + (1+eta)^(-1/4))^2)).
double deviation_bound_sharp(double delta, double eta, double reward_bound, double n);

// Uniform-in-time version: ceiling factor uses log(gamma^(-2T)*n_T(gamma^2)),
// which reduces to log(T) at gamma = 1.
double maximal_bound(double delta, double eta, double reward_bound, double gamma, long horizon);

// Windowed version: ceiling factor uses log(min(t, window)).
double windowed_deviation_bound(double delta, double eta, double reward_bound, long t,
                                long window);

// ---------------------------------------------------------------------------
// Monte Carlo verification of the deviation bounds. The selection sequence is
// previsible by construction: each eps_t is a deterministic function of the
// strictly earlier draws.
// ---------------------------------------------------------------------------

enum class SelectionRule {
  kAlways,              // eps_t = 1
  kMeanBelowThreshold,  // eps_t = 1 iff running mean of past draws < threshold
};

struct StreamSpec {
  double success_probability = 0.5;  // P(X = B); expectation is p*B
  double reward_bound = 1.0;         // B
  long rounds = 500;                 // t for the fixed-time event, T for the supremum
  SelectionRule rule = SelectionRule::kAlways;
  double threshold = 0.5;
};

struct ExceedanceResult {
  double empirical = 0;       // Monte Carlo frequency of the deviation event
  double bound = 0;           // matching theoretical bound
  double standard_error = 0;  // binomial standard error of `empirical`
  long replications = 0;
};

// Frequency of {(R_t - E R_t)/sqrt(N_t(gamma^2)) > delta} at t = spec.rounds,
// over `replications` independent paths derived from `root`. Two calls with
// the same root stream replay identical paths.
ExceedanceResult exceedance_estimate(const StreamSpec& spec, double gamma, double delta,
                                     double eta, long replications, const RngStream& root);

// Same, for the running supremum of the statistic over t = 1..spec.rounds,
// paired with maximal_bound.
ExceedanceResult sup_exceedance_estimate(const StreamSpec& spec, double gamma, double delta,
                                         double eta, long replications, const RngStream& root);

// ---------------------------------------------------------------------------
// Counting bounds on how often an arm can be played while its recent play
// count (windowed or discounted) is still small.
// ---------------------------------------------------------------------------

struct CountingCheck {
  long lhs = 0;                    // direct scan of the play sequence
  double rhs = 0;                  // ceil(T/tau)*m (or *A*gamma^-tau) without the arm-count factor
  double rhs_with_arm_factor = 0;  // the same times K
  bool holds = false;              // lhs <= rhs
};

// Counts rounds t with plays[t] == arm and fewer than `m` plays of the arm in
// the trailing window (t-tau, t]. `plays` holds 1-based arm ids for rounds
// 1..T in order.
CountingCheck windowed_count_bound_check(std::span<const ArmId> plays, long tau, double m, ArmId arm,
                                   int arm_count);

// Discounted variant: counts rounds t with plays[t] == arm and discounted play
// count N_t(gamma, arm) < threshold; rhs = ceil(T/tau)*threshold*gamma^(-tau).
CountingCheck discounted_count_bound_check(std::span<const ArmId> plays, double gamma, long tau,
                                       double threshold, ArmId arm, int arm_count);

}  // namespace nsbandit::theory
