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

#ifndef KSDIST_INFERENCE_HPP_
#define KSDIST_INFERENCE_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "ksdist/bounds.hpp"
#include "ksdist/distributions.hpp"
#include "ksdist/ecdf.hpp"

namespace ksdist {

// A tail bound as a function of z on [valid_from, inf), assumed
// nonincreasing there.
class TailFunction {
 public:
  using Evaluator = std::function<TailBoundResult(double)>;
  using ClosedInverse = std::function<double(double)>;

  TailFunction(Evaluator eval, double valid_from, ZConvention convention,
               ClosedInverse inverse = {});

  // Bound family at fixed sample sizes. dkwm and prop1 carry their closed
  // form inverse sqrt(ln(2/delta)/2).
  static TailFunction for_family(BoundFamily family, std::size_t n = 1, std::size_t m = 1);

  // min(a(z), b(z)). Valid where both are; a and b must share a convention.
  static TailFunction pointwise_min(const TailFunction& a, const TailFunction& b);

  TailBoundResult operator()(double z) const { return eval_(z); }
  double valid_from() const { return valid_from_; }
  ZConvention convention() const { return convention_; }
  const ClosedInverse& closed_inverse() const { return inverse_; }

 private:
  Evaluator eval_;
  double valid_from_;
  ZConvention convention_;
  ClosedInverse inverse_;
};

// Smallest z >= bound.valid_from() with bound(z).raw <= delta, to within
// 1e-10 in z (bisection) or exactly (closed form). delta must lie in (0, 1].
// Throws UnreachableError when the bound never drops to delta, and
// std::logic_error if the bound is found to increase.
double invert_tail(const TailFunction& bound, double delta);

enum class CiMethod { prop1, prop2a, prop2b, best_of_2a_2b };

std::string_view to_string(CiMethod method);
std::optional<CiMethod> parse_ci_method(std::string_view name);

struct ConfidenceInterval {
  double center = 0.0;
  double half_width = 0.0;
  double lo = 0.0;  // max(0, center - half_width)
  double hi = 0.0;  // min(1, center + half_width)
  double level = 0.0;
  CiMethod method = CiMethod::prop1;

  bool contains(double d) const { return lo <= d && d <= hi; }
};

// Interval for d(F, G) from d_obs = d(F_n, G) with G known. Half width
// sqrt(ln(2/delta)/(2n)); coverage >= 1 - delta for every n.
ConfidenceInterval one_sample_ci(double d_obs, std::size_t n, double delta);

// Interval for d(F, G) from d_obs = d(F_n, G_m). For n == m the equal-size
// bounds are inverted in the sqrt(n/2) scaling; otherwise the general
// bounds are inverted directly. method must not be prop1.
ConfidenceInterval two_sample_ci(double d_obs, std::size_t n, std::size_t m, double delta,
                                 CiMethod method = CiMethod::best_of_2a_2b);

struct OneSampleReport {
  std::size_t n = 0;
  KsOneSampleStats stats;
  double p_asymptotic = 0.0;  // 1 - L(sqrt(n) d)
  double p_dkwm_bound = 0.0;  // min(1, 2 exp(-2 n d^2))
  ConfidenceInterval ci;
};

OneSampleReport one_sample_report(const Sample& sample, const ContinuousDist& g, double delta);

struct WeiDudleyPBound {
  double constant = 0.0;
  double p_bound = 0.0;  // min(1, C exp(-n d^2))
};

struct TwoSampleReport {
  std::size_t n = 0;
  std::size_t m = 0;
  double d = 0.0;
  double p_asymptotic = 0.0;  // 1 - L(sqrt(nm/(n+m)) d)
  std::optional<WeiDudleyPBound> wei_dudley;
  std::string wei_dudley_omitted;  // reason, when wei_dudley is empty
  ConfidenceInterval ci_prop2a;
  ConfidenceInterval ci_prop2b;
  ConfidenceInterval ci_best;
};

TwoSampleReport two_sample_report(const Sample& x, const Sample& y, double delta);

}  // namespace ksdist

#endif  // KSDIST_INFERENCE_HPP_
