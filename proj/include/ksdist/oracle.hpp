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

#ifndef KSDIST_ORACLE_HPP_
#define KSDIST_ORACLE_HPP_

// Numerical evaluation of the envelope integrals behind the two-sample
// bounds. These are independent of the closed forms in bounds.hpp and are
// used to check them.

#include <cstddef>
#include <vector>

#include "ksdist/quadrature.hpp"

namespace ksdist {

// Integral of mu1(n, x) mu1(m, y) over {x, y >= 0, x + y <= z}, for
// 0 < z <= 1. The integrand vanishes unless x >= sqrt(log2/(2n)) and
// y >= sqrt(log2/(2m)), so only that corner triangle is integrated.
double integral_omega1(std::size_t n, std::size_t m, double z, const QuadratureConfig& cfg = {});

// Integral of mu2(n, x) mu2(m, y) over
//   {x, y >= 0, x + y <= z, x <= z - sqrt(log2/(2m)), y <= z - sqrt(log2/(2n))},
// for sqrt(log(2)/2)(n^{-1/2} + m^{-1/2}) <= z <= 1.
double alpha3_numeric(std::size_t n, std::size_t m, double z, const QuadratureConfig& cfg = {});

// The one-sided DKWM inequality additionally needs z >= 1.0841 k^{-2/3} for
// each sample size k. True when that holds for both n and m.
bool one_sided_condition_holds(std::size_t n, std::size_t m, double z);

struct VerifyCell {
  std::size_t n = 0;
  std::size_t m = 0;
  double z = 0.0;  // unscaled
  // 1 - integral_omega1 against the general first bound.
  double omega1_complement = 0.0;
  double prop2a_raw = 0.0;
  double gap_2a = 0.0;  // prop2a_raw - omega1_complement; >= -slack passes
  // min(1, 2 - 2 alpha3) against the general second bound.
  double alpha3 = 0.0;
  double alpha3_bound = 0.0;
  double prop2b_raw = 0.0;
  double gap_2b = 0.0;
  bool pass_2a = false;
  bool pass_2b = false;
  bool one_sided_condition = false;
};

inline constexpr double kVerifySlack = 1e-6;

// Runs both checks for one (n, m, z). Propagates ConvergenceError.
VerifyCell verify_cell(std::size_t n, std::size_t m, double z, const QuadratureConfig& cfg = {});

struct GridPoint {
  std::size_t n = 0;
  std::size_t m = 0;
  double z = 0.0;
};

// n, m in {25, 50, 100, 200}; for each pair ten z values
// z0 (1 + k/4), k = 0..9, where z0 is the validity edge.
std::vector<GridPoint> default_verify_grid();

}  // namespace ksdist

#endif  // KSDIST_ORACLE_HPP_
