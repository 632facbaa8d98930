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

#include "ksdist/inference.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "ksdist/errors.hpp"

namespace ksdist {
namespace {

// Beyond this every bound in the catalogue has underflowed to zero.
constexpr double kSearchLimit = 64.0;
// Rounding noise allowed before a bound is declared non-monotone.
constexpr double kMonotoneSlack = 1e-12;

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
}

void require_distance(double d) {
  if (!(d >= 0.0 && d <= 1.0)) throw DomainError("observed distance must lie in [0, 1]");
}

ConfidenceInterval make_ci(double center, double half_width, double delta, CiMethod method) {
  ConfidenceInterval ci;
  ci.center = center;
  ci.half_width = half_width;
  ci.lo = std::max(0.0, center - half_width);
  ci.hi = std::min(1.0, center + half_width);
  ci.level = 1.0 - delta;
  ci.method = method;
  return ci;
}

double dkwm_inverse(double delta) { return std::sqrt(std::log(2.0 / delta) / 2.0); }

}  // namespace

TailFunction::TailFunction(Evaluator eval, double valid_from, ZConvention convention,
                           ClosedInverse inverse)
    : eval_(std::move(eval)),
      valid_from_(valid_from),
      convention_(convention),
      inverse_(std::move(inverse)) {}

TailFunction TailFunction::for_family(BoundFamily family, std::size_t n, std::size_t m) {
  // Surface size errors (e.g. Wei-Dudley with n < 4) at construction.
  const double start = validity_start(family, n, m);
  (void)evaluate_bound(family, TailQuery{start, n, m});
  ClosedInverse inverse;
  if (family == BoundFamily::dkwm || family == BoundFamily::prop1) inverse = dkwm_inverse;
  return TailFunction(
      [family, n, m](double z) { return evaluate_bound(family, TailQuery{z, n, m}); }, start,
      z_convention(family), std::move(inverse));
}

TailFunction TailFunction::pointwise_min(const TailFunction& a, const TailFunction& b) {
  if (a.convention() != b.convention()) {
    throw DomainError("pointwise_min: bounds use different z conventions");
  }
  return TailFunction(
      [a, b](double z) {
        const TailBoundResult ra = a(z);
        const TailBoundResult rb = b(z);
        TailBoundResult r = ra.raw <= rb.raw ? ra : rb;
        r.valid = ra.valid && rb.valid;
        return r;
      },
      std::max(a.valid_from(), b.valid_from()), a.convention());
}

double invert_tail(const TailFunction& bound, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("invert_tail: delta must lie in (0, 1]");
  if (bound.closed_inverse()) {
    return std::max(bound.valid_from(), bound.closed_inverse()(delta));
  }

  double lo = bound.valid_from();
  double f_lo = bound(lo).raw;
  if (f_lo <= delta) return lo;

  double step = 0.5;
  double hi = lo + step;
  double f_hi = bound(hi).raw;
  while (f_hi > delta) {
    if (f_hi > f_lo + kMonotoneSlack) throw std::logic_error("invert_tail: bound is not nonincreasing");
    if (hi >= kSearchLimit) {
      std::ostringstream os;
      os << "delta " << delta << " is unreachable: bound stays above " << f_hi
         << " on [" << bound.valid_from() << ", " << hi << "]";
      throw UnreachableError(os.str());
    }
    lo = hi;
    f_lo = f_hi;
    step *= 2.0;
    hi = std::min(kSearchLimit, lo + step);
    f_hi = bound(hi).raw;
  }

  while (hi - lo > 1e-14 * (1.0 + hi)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = bound(mid).raw;
    if (f_mid > f_lo + kMonotoneSlack || f_mid < f_hi - kMonotoneSlack) {
      throw std::logic_error("invert_tail: bound is not nonincreasing");
    }
    if (f_mid <= delta) {
      hi = mid;
      f_hi = f_mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
  }
  return hi;
}

std::string_view to_string(CiMethod method) {
  switch (method) {
    case CiMethod::prop1:
      return "prop1";
    case CiMethod::prop2a:
      return "prop2a";
    case CiMethod::prop2b:
      return "prop2b";
    case CiMethod::best_of_2a_2b:
      return "best_of_2a_2b";
  }
  return "unknown";
}

std::optional<CiMethod> parse_ci_method(std::string_view name) {
  for (CiMethod method :
       {CiMethod::prop1, CiMethod::prop2a, CiMethod::prop2b, CiMethod::best_of_2a_2b}) {
    if (to_string(method) == name) return method;
  }
  if (name == "best") return CiMethod::best_of_2a_2b;
  return std::nullopt;
}

ConfidenceInterval one_sample_ci(double d_obs, std::size_t n, double delta) {
  if (n == 0) throw DomainError("one_sample_ci: n must be >= 1");
  require_distance(d_obs);
  require_delta(delta);
  const double half_width = dkwm_inverse(delta) / std::sqrt(static_cast<double>(n));
  return make_ci(d_obs, half_width, delta, CiMethod::prop1);
}

ConfidenceInterval two_sample_ci(double d_obs, std::size_t n, std::size_t m, double delta,
                                 CiMethod method) {
  if (n == 0 || m == 0) throw DomainError("two_sample_ci: n and m must be >= 1");
  require_distance(d_obs);
  require_delta(delta);
  if (method == CiMethod::prop1) throw DomainError("two_sample_ci: prop1 is a one-sample method");

  const bool equal = n == m;
  const BoundFamily first = equal ? BoundFamily::alpha1 : BoundFamily::prop2a;
  const BoundFamily second = equal ? BoundFamily::alpha2 : BoundFamily::prop2b;

  const auto bound = [&] {
    switch (method) {
      case CiMethod::prop2a:
        return TailFunction::for_family(first, n, m);
      case CiMethod::prop2b:
        return TailFunction::for_family(second, n, m);
      default:
        return TailFunction::pointwise_min(TailFunction::for_family(first, n, m),
                                           TailFunction::for_family(second, n, m));
    }
  }();

  const double z = invert_tail(bound, delta);
  const double half_width = equal ? z * std::sqrt(2.0 / static_cast<double>(n)) : z;
  return make_ci(d_obs, half_width, delta, method);
}

OneSampleReport one_sample_report(const Sample& sample, const ContinuousDist& g, double delta) {
  OneSampleReport report;
  report.n = sample.size();
  report.stats = ks_one_sample(sample, g);
  report.p_asymptotic = kolmogorov_p_one_sample(report.n, report.stats.d);
  report.p_dkwm_bound =
      dkwm_tail(ScaledZ{std::sqrt(static_cast<double>(report.n)) * report.stats.d}).clipped;
  report.ci = one_sample_ci(report.stats.d, report.n, delta);
  return report;
}

TwoSampleReport two_sample_report(const Sample& x, const Sample& y, double delta) {
  TwoSampleReport report;
  report.n = x.size();
  report.m = y.size();
  report.d = ks_two_sample(x, y);
  report.p_asymptotic = smirnov_p_two_sample(report.n, report.m, report.d);
  if (report.n != report.m) {
    report.wei_dudley_omitted = "requires equal sample sizes";
  } else if (report.n < 4) {
    report.wei_dudley_omitted = "constant only available for n >= 4";
  } else {
    const double scaled = std::sqrt(static_cast<double>(report.n) / 2.0) * report.d;
    report.wei_dudley = WeiDudleyPBound{
        wei_dudley_constant(report.n),
        wei_dudley_tail(report.n, report.m, ScaledZ{scaled}).clipped,
    };
  }
  report.ci_prop2a = two_sample_ci(report.d, report.n, report.m, delta, CiMethod::prop2a);
  report.ci_prop2b = two_sample_ci(report.d, report.n, report.m, delta, CiMethod::prop2b);
  report.ci_best = two_sample_ci(report.d, report.n, report.m, delta, CiMethod::best_of_2a_2b);
  return report;
}

}  // namespace ksdist
