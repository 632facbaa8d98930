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

#include "ksdist/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "ksdist/errors.hpp"

namespace ksdist {
namespace {

const double kLog2 = std::log(2.0);
const double kSqrtLog2 = std::sqrt(kLog2);

TailBoundResult make_result(double raw, bool valid) {
  TailBoundResult result;
  result.raw = raw;
  result.clipped = std::min(1.0, raw);
  result.valid = valid;
  result.useful = result.clipped < 1.0;
  return result;
}

void require_nonnegative(double z, const char* what) {
  if (std::isnan(z) || z < 0.0) {
    throw DomainError(std::string(what) + ": z must be nonnegative");
  }
}

void require_sizes(std::size_t n, std::size_t m, const char* what) {
  if (n == 0 || m == 0) {
    throw DomainError(std::string(what) + ": sample sizes must be >= 1");
  }
}

// One half of the general two-sample bounds; the full bound adds the same
// expression with n and m exchanged. `lead` is n/(m+n) 2^{1-m/n} for the
// first bound and (1 + n/(m+n)) 2^{-m/n} for the second; `erf_weight` is
// sqrt(32 pi) or sqrt(8 pi) respectively.
double two_sample_half(double n, double m, double z, double log_lead,
                       double erf_weight) {
  const double total = n + m;
  // Exponents are combined in log space; 2^{-m/n} and the exponential can
  // individually under/overflow when m >> n.
  const double exponent = log_lead - 2.0 * m * z * (z - std::sqrt(std::log(4.0) / n));
  const double first = std::exp(exponent);
  const double erf_arg =
      std::sqrt(2.0 * m * m * z * z / total) - std::sqrt(total * kLog2 / n);
  const double second = erf_weight * z * m * n / std::pow(total, 1.5) *
                        std::exp(-2.0 * m * n * z * z / total) * ksdist::erf(erf_arg);
  return first + second;
}

double prop2a_half(double n, double m, double z) {
  const double log_lead = std::log(n / (m + n)) + (1.0 - m / n) * kLog2;
  return two_sample_half(n, m, z, log_lead, std::sqrt(32.0 * std::numbers::pi));
}

double prop2b_half(double n, double m, double z) {
  const double log_lead = std::log(1.0 + n / (m + n)) - (m / n) * kLog2;
  return two_sample_half(n, m, z, log_lead, std::sqrt(8.0 * std::numbers::pi));
}

}  // namespace

double erf(double x) { return std::erf(x); }

double erfc(double x) { return std::erfc(x); }

TailBoundResult dkwm_tail(ScaledZ z) {
  require_nonnegative(z.value, "dkwm_tail");
  return make_result(2.0 * std::exp(-2.0 * z.value * z.value), true);
}

TailBoundResult prop1_tail(ScaledZ z) { return dkwm_tail(z); }

double wei_dudley_constant(std::size_t n) {
  if (n < 4) {
    throw UnsupportedError("Wei-Dudley constant is only available for n >= 4");
  }
  return n >= 458 ? 2.0 : 2.16863;
}

TailBoundResult wei_dudley_tail(std::size_t n, std::size_t m, ScaledZ z) {
  if (n != m) {
    throw UnsupportedError("Wei-Dudley bound requires equal sample sizes");
  }
  require_nonnegative(z.value, "wei_dudley_tail");
  const double c = wei_dudley_constant(n);
  return make_result(c * std::exp(-2.0 * z.value * z.value), true);
}

double dkwm_cutoff(std::size_t n) {
  if (n == 0) throw DomainError("dkwm_cutoff: n must be >= 1");
  return std::sqrt(kLog2 / (2.0 * static_cast<double>(n)));
}

double mu1(std::size_t n, double x) {
  if (std::isnan(x) || x < 0.0) throw DomainError("mu1: x must be nonnegative");
  if (x < dkwm_cutoff(n)) return 0.0;
  const double nd = static_cast<double>(n);
  return 8.0 * nd * x * std::exp(-2.0 * nd * x * x);
}

double mu2(std::size_t n, double x) {
  if (std::isnan(x) || x < 0.0) throw DomainError("mu2: x must be nonnegative");
  if (n == 0) throw DomainError("mu2: n must be >= 1");
  const double nd = static_cast<double>(n);
  return 4.0 * nd * x * std::exp(-2.0 * nd * x * x);
}

double two_sample_validity_edge(std::size_t n, std::size_t m) {
  require_sizes(n, m, "two_sample_validity_edge");
  return std::sqrt(kLog2 / 2.0) *
         (1.0 / std::sqrt(static_cast<double>(n)) + 1.0 / std::sqrt(static_cast<double>(m)));
}

TailBoundResult prop2a_tail_general(std::size_t n, std::size_t m, UnscaledZ z) {
  require_sizes(n, m, "prop2a_tail_general");
  require_nonnegative(z.value, "prop2a_tail_general");
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const double raw = prop2a_half(nd, md, z.value) + prop2a_half(md, nd, z.value);
  return make_result(raw, z.value >= two_sample_validity_edge(n, m));
}

TailBoundResult prop2b_tail_general(std::size_t n, std::size_t m, UnscaledZ z) {
  require_sizes(n, m, "prop2b_tail_general");
  require_nonnegative(z.value, "prop2b_tail_general");
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const double inner = prop2b_half(nd, md, z.value) + prop2b_half(md, nd, z.value);
  return make_result(std::min(1.0, inner), z.value >= two_sample_validity_edge(n, m));
}

TailBoundResult alpha1(ScaledZ z) {
  require_nonnegative(z.value, "alpha1");
  const double s = z.value;
  const double raw = std::exp(-4.0 * s * (s - kSqrtLog2)) +
                     std::sqrt(32.0 * std::numbers::pi) * s * std::exp(-2.0 * s * s) *
                         ksdist::erf(std::sqrt(2.0) * (s - kSqrtLog2));
  return make_result(raw, s >= kSqrtLog2);
}

TailBoundResult alpha2(ScaledZ z) {
  require_nonnegative(z.value, "alpha2");
  const double s = z.value;
  const double inner = 1.5 * std::exp(-4.0 * s * (s - kSqrtLog2)) +
                       std::sqrt(8.0 * std::numbers::pi) * s * std::exp(-2.0 * s * s) *
                           ksdist::erf(std::sqrt(2.0) * (s - kSqrtLog2));
  return make_result(std::min(1.0, inner), s >= kSqrtLog2);
}

ZConvention z_convention(BoundFamily family) {
  switch (family) {
    case BoundFamily::prop2a:
    case BoundFamily::prop2b:
      return ZConvention::unscaled;
    default:
      return ZConvention::scaled;
  }
}

namespace {

struct FamilyName {
  BoundFamily family;
  std::string_view name;
};

constexpr std::array<FamilyName, 7> kFamilyNames{{
    {BoundFamily::dkwm, "dkwm"},
    {BoundFamily::wei_dudley, "wd"},
    {BoundFamily::prop1, "prop1"},
    {BoundFamily::prop2a, "prop2a"},
    {BoundFamily::alpha1, "alpha1"},
    {BoundFamily::prop2b, "prop2b"},
    {BoundFamily::alpha2, "alpha2"},
}};

}  // namespace

std::string_view to_string(BoundFamily family) {
  for (const auto& entry : kFamilyNames) {
    if (entry.family == family) return entry.name;
  }
  return "unknown";
}

std::optional<BoundFamily> parse_bound_family(std::string_view name) {
  for (const auto& entry : kFamilyNames) {
    if (entry.name == name) return entry.family;
  }
  return std::nullopt;
}

TailBoundResult evaluate_bound(BoundFamily family, const TailQuery& query) {
  switch (family) {
    case BoundFamily::dkwm:
      return dkwm_tail(ScaledZ{query.z});
    case BoundFamily::prop1:
      return prop1_tail(ScaledZ{query.z});
    case BoundFamily::wei_dudley:
      return wei_dudley_tail(query.n, query.m, ScaledZ{query.z});
    case BoundFamily::alpha1:
      return alpha1(ScaledZ{query.z});
    case BoundFamily::alpha2:
      return alpha2(ScaledZ{query.z});
    case BoundFamily::prop2a:
      return prop2a_tail_general(query.n, query.m, UnscaledZ{query.z});
    case BoundFamily::prop2b:
      return prop2b_tail_general(query.n, query.m, UnscaledZ{query.z});
  }
  throw DomainError("evaluate_bound: unknown family");
}

double validity_start(BoundFamily family, std::size_t n, std::size_t m) {
  switch (family) {
    case BoundFamily::dkwm:
    case BoundFamily::prop1:
    case BoundFamily::wei_dudley:
      return 0.0;
    case BoundFamily::alpha1:
    case BoundFamily::alpha2:
      return kSqrtLog2;
    case BoundFamily::prop2a:
    case BoundFamily::prop2b:
      return two_sample_validity_edge(n, m);
  }
  return 0.0;
}

}  // namespace ksdist
