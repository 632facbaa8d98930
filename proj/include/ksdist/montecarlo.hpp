// Copyright 2026 The ksdist Authors.
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

#ifndef KSDIST_MONTECARLO_HPP_
#define KSDIST_MONTECARLO_HPP_

// Seeded simulation of KS deviation statistics, compared against the tail
// bounds. Every trial draws from its own generator, seeded from
// (seed, trial index), so results do not depend on the worker count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ksdist/bounds.hpp"
#include "ksdist/distributions.hpp"
#include "ksdist/inference.hpp"

namespace ksdist {

struct SimConfig {
  ContinuousDist f;
  ContinuousDist g;
  std::size_t n = 0;
  std::size_t m = 0;  // 0 selects one-sample mode
  std::size_t trials = 0;
  // Thresholds in the scaled convention: sqrt(n) for one sample and
  // sqrt(nm/(n+m)) for two samples (sqrt(n/2) when n == m).
  std::vector<double> z_grid;
  std::uint64_t seed = 0;
  // 0 means std::thread::hardware_concurrency().
  unsigned workers = 0;
};

// Throws DomainError describing the first violated invariant.
void validate(const SimConfig& cfg);

struct FamilyCell {
  double bound = 0.0;  // clipped
  bool valid = false;
  std::optional<bool> pass;  // empty where not valid, or for trials == 1
};

struct SimRow {
  double z = 0.0;
  std::size_t exceedances = 0;
  double empirical = 0.0;
  double se = 0.0;  // sqrt(p(1-p)/trials)
  std::vector<FamilyCell> cells;  // parallel to SimReport::families
};

struct SimReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t trials = 0;
  double d_true = 0.0;
  std::vector<BoundFamily> families;
  std::vector<SimRow> rows;

  bool all_pass() const;
  // One entry per failing cell, naming family, z and margin.
  std::vector<std::string> failures() const;
};

// Slack in binomial standard errors granted to the empirical frequency.
inline constexpr double kSigmaSlack = 3.0;

// Frequency of sqrt(n) |d(F_n, g) - d(f, g)| > z. Families: prop1, and dkwm
// when f == g.
SimReport run_one_sample(const SimConfig& cfg);

// Frequency of sqrt(N) |d(F_n, G_m) - d(f, g)| > z with N = nm/(n+m).
// Families: alpha1, alpha2 (plus wd when f == g and n >= 4) for n == m;
// prop2a, prop2b evaluated at z / sqrt(N) otherwise.
SimReport run_two_sample(const SimConfig& cfg);

// Dispatches on cfg.m.
SimReport run_simulation(const SimConfig& cfg);

std::string to_csv(const SimReport& report);

struct CoverageResult {
  double coverage = 0.0;
  double threshold = 0.0;  // (1 - delta) - 3 sqrt(delta (1 - delta) / trials)
  bool pass = false;
};

// Fraction of trials whose interval for `method` contains d(f, g). prop1
// needs cfg.m == 0; the two-sample methods need cfg.m >= 1. cfg.z_grid is
// not used.
CoverageResult coverage_check(const SimConfig& cfg, double delta, CiMethod method);

struct LimitCheck {
  double sup_distance = 0.0;  // max over z_grid of |ECDF(z) - L(z)|
  double worst_z = 0.0;
};

// Compares the empirical distribution of sqrt(n) d(F_n, f) over `trials`
// samples from f against the Kolmogorov limit L on z_grid (all > 0).
LimitCheck kolmogorov_limit_check(const ContinuousDist& f, std::size_t n, std::size_t trials,
                                  const std::vector<double>& z_grid, std::uint64_t seed,
                                  unsigned workers = 0);

// Seed for stream `stream` of trial `trial`, derived by SplitMix64 mixing.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial, std::uint64_t stream);

}  // namespace ksdist

#endif  // KSDIST_MONTECARLO_HPP_
