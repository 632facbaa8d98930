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

#ifndef KSDIST_BOUNDS_HPP_
#define KSDIST_BOUNDS_HPP_

// Tail bounds on the deviation of empirical KS distances, together with the
// asymptotic Kolmogorov distribution and the special functions they need.
//
// Two z conventions are in use and are kept apart by type:
//
//   ScaledZ    the deviation multiplied by sqrt(n) (one sample) or
//              sqrt(n/2) (two samples of equal size n);
//   UnscaledZ  the raw deviation |d(F_n,G_m) - d(F,G)|, used by the general
//              two-sample bounds for n != m.
//
// Every bound returns its value as written (raw, which may exceed 1) and the
// probability it implies (clipped). Bounds are evaluated outside their
// validity range as well; the `valid` flag says whether the inequality holds
// there.

#include <cstddef>
#include <optional>
#include <string_view>

namespace ksdist {

struct ScaledZ {
  double value = 0.0;
};

struct UnscaledZ {
  double value = 0.0;
};

struct TailBoundResult {
  double raw = 0.0;
  double clipped = 0.0;  // min(1, raw)
  bool valid = false;    // z lies in the range where the inequality is proven
  bool useful = false;   // clipped < 1
};

// std::erf / std::erfc, exposed here so callers and tests share one entry
// point.
double erf(double x);
double erfc(double x);

// Limiting distribution of sqrt(n) d(F_n, F):
//   L(z) = 1 - 2 sum_{v>=1} (-1)^{v-1} exp(-2 v^2 z^2)
//        = sqrt(2 pi)/z sum_{v>=1} exp(-(2v-1)^2 pi^2 / (8 z^2)).
// kolmogorov_L picks the theta form below z = 1 and the alternating form
// above. Both forms are exposed for cross-checking. Throws DomainError for
// z <= 0.
double kolmogorov_L(double z);
double kolmogorov_L_alternating(double z);
double kolmogorov_L_theta(double z);

// 1 - L(z) computed without cancellation in the upper tail. Returns 1 for
// z == 0; throws DomainError for z < 0.
double kolmogorov_survival(double z);

// Asymptotic p-values. Both are large-sample approximations only.
double kolmogorov_p_one_sample(std::size_t n, double d);
double smirnov_p_two_sample(std::size_t n, std::size_t m, double d);

// Prob[sqrt(n) d(F_n,F) > z] <= 2 exp(-2 z^2); holds for every z and n.
TailBoundResult dkwm_tail(ScaledZ z);

// Prob[sqrt(n) |d(F_n,G) - d(F,G)| > z] <= 2 exp(-2 z^2). Same value as
// dkwm_tail, for arbitrary F and G.
TailBoundResult prop1_tail(ScaledZ z);

// Constant of the equal-size two-sample bound C exp(-2 z^2): 2.16863 for
// n >= 4, 2 for n >= 458. Throws UnsupportedError for n < 4.
double wei_dudley_constant(std::size_t n);

// Prob[sqrt(n/2) d(F_n,G_n) > z] <= C exp(-2 z^2) when F == G. Requires
// n == m >= 4, otherwise throws UnsupportedError.
TailBoundResult wei_dudley_tail(std::size_t n, std::size_t m, ScaledZ z);

// Envelope densities. mu1 integrates to the two-sided DKWM bound and is zero
// below sqrt(log 2 / (2n)); mu2 integrates to the one-sided bound.
double mu1(std::size_t n, double x);
double mu2(std::size_t n, double x);

// sqrt(log 2 / (2n)): where 2 exp(-2 n x^2) crosses 1.
double dkwm_cutoff(std::size_t n);

// Lower edge of the validity range of the general two-sample bounds,
// sqrt(log(2)/2) (n^{-1/2} + m^{-1/2}).
double two_sample_validity_edge(std::size_t n, std::size_t m);

// General two-sample bounds on Prob[|d(F_n,G_m) - d(F,G)| > z], any n, m.
// Throw DomainError when n or m is zero.
TailBoundResult prop2a_tail_general(std::size_t n, std::size_t m, UnscaledZ z);
TailBoundResult prop2b_tail_general(std::size_t n, std::size_t m, UnscaledZ z);

// Equal-size forms of the two bounds above in the sqrt(n/2) scaling. Valid
// for z >= sqrt(log 2).
TailBoundResult alpha1(ScaledZ z);
TailBoundResult alpha2(ScaledZ z);

enum class BoundFamily { dkwm, wei_dudley, prop1, prop2a, alpha1, prop2b, alpha2 };

enum class ZConvention { scaled, unscaled };

ZConvention z_convention(BoundFamily family);
std::string_view to_string(BoundFamily family);
std::optional<BoundFamily> parse_bound_family(std::string_view name);

// Argument bundle for family-generic evaluation. z is read in the family's
// own convention; n and m are ignored by families that do not use them.
struct TailQuery {
  double z = 0.0;
  std::size_t n = 1;
  std::size_t m = 1;
};

TailBoundResult evaluate_bound(BoundFamily family, const TailQuery& query);

// Smallest z (in the family's convention) at which the family is valid.
double validity_start(BoundFamily family, std::size_t n, std::size_t m);

}  // namespace ksdist

#endif  // KSDIST_BOUNDS_HPP_
