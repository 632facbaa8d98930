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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ksdist/bounds.hpp"
#include "ksdist/errors.hpp"

namespace ksdist {
namespace {

constexpr double kTermTolerance = 1e-15;
constexpr int kMaxTerms = 1000000;

void require_positive(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw DomainError("kolmogorov_L: z must be positive and finite");
  }
}

// 2 sum_{v>=1} (-1)^{v-1} exp(-2 v^2 z^2)
double alternating_tail(double z) {
  double sum = 0.0;
  for (int v = 1; v < kMaxTerms; ++v) {
    const double term = std::exp(-2.0 * v * v * z * z);
    sum += (v % 2 == 1) ? term : -term;
    if (term < kTermTolerance) break;
  }
  return 2.0 * sum;
}

}  // namespace

double kolmogorov_L_alternating(double z) {
  require_positive(z);
  return 1.0 - alternating_tail(z);
}

double kolmogorov_L_theta(double z) {
  require_positive(z);
  const double prefactor = std::sqrt(2.0 * std::numbers::pi) / z;
  const double scale = std::numbers::pi * std::numbers::pi / (8.0 * z * z);
  double sum = 0.0;
  for (int v = 1; v < kMaxTerms; ++v) {
    const double k = 2.0 * v - 1.0;
    const double term = prefactor * std::exp(-k * k * scale);
    sum += term;
    if (term < kTermTolerance) break;
  }
  return sum;
}

double kolmogorov_L(double z) {
  require_positive(z);
  const double value = z < 1.0 ? kolmogorov_L_theta(z) : kolmogorov_L_alternating(z);
  return std::clamp(value, 0.0, 1.0);
}

double kolmogorov_survival(double z) {
  if (std::isnan(z) || z < 0.0) {
    throw DomainError("kolmogorov_survival: z must be nonnegative");
  }
  if (z == 0.0) return 1.0;
  const double value = z < 1.0 ? 1.0 - kolmogorov_L_theta(z) : alternating_tail(z);
  return std::clamp(value, 0.0, 1.0);
}

namespace {

void require_distance(double d) {
  if (!(d >= 0.0 && d <= 1.0)) {
    throw DomainError("KS distance must lie in [0, 1]");
  }
}

}  // namespace

double kolmogorov_p_one_sample(std::size_t n, double d) {
  if (n == 0) throw DomainError("kolmogorov_p_one_sample: n must be >= 1");
  require_distance(d);
  return kolmogorov_survival(std::sqrt(static_cast<double>(n)) * d);
}

double smirnov_p_two_sample(std::size_t n, std::size_t m, double d) {
  if (n == 0 || m == 0) {
    throw DomainError("smirnov_p_two_sample: n and m must be >= 1");
  }
  require_distance(d);
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  return kolmogorov_survival(std::sqrt(nd * md / (nd + md)) * d);
}

}  // namespace ksdist
