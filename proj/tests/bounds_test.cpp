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

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "ksdist/bounds.hpp"
#include "ksdist/errors.hpp"

namespace ksdist {
namespace {

const double kSqrtLog2 = std::sqrt(std::log(2.0));

// erf(x) = 2/sqrt(pi) sum_k (-1)^k x^{2k+1} / (k! (2k+1)). Alternating with
// decreasing terms for |x| <= 1, so the truncation error is below the first
// omitted term.
double erf_maclaurin(double x, double* remainder) {
  long double sum = 0.0L;
  long double power = x;  // x^{2k+1} / k!
  for (int k = 0;; ++k) {
    const long double term = power / (2 * k + 1);
    if (std::fabs(static_cast<double>(term)) < 1e-22) {
      *remainder = static_cast<double>(std::fabs(term) * 2.0L / std::sqrt(std::numbers::pi_v<long double>));
      break;
    }
    sum += (k % 2 == 0) ? term : -term;
    power *= static_cast<long double>(x) * x / (k + 1);
  }
  return static_cast<double>(2.0L / std::sqrt(std::numbers::pi_v<long double>) * sum);
}

// erf(x) = 2/sqrt(pi) e^{-x^2} sum_k 2^k x^{2k+1} / (1*3*...*(2k+1)).
// All terms are positive, so there is no cancellation at large x. Once the
// term ratio r = 2x^2/(2k+3) drops below 1/2 the tail is at most term.
long double erf_positive_series(long double x) {
  long double term = x;
  long double sum = 0.0L;
  for (int k = 0; k < 10000; ++k) {
    sum += term;
    const long double ratio = 2.0L * x * x / (2 * k + 3);
    term *= ratio;
    if (ratio < 0.5L && term < 1e-22L * sum) break;
  }
  return 2.0L / std::sqrt(std::numbers::pi_v<long double>) * std::exp(-x * x) * sum;
}

double erf_oracle(double x) {
  const long double value = erf_positive_series(std::fabs(static_cast<long double>(x)));
  return static_cast<double>(x < 0 ? -value : value);
}

// Composite Simpson on [a, b] with `panels` (even) subintervals.
template <class F>
double simpson(F f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

TEST(Erf, Basics) {
  EXPECT_EQ(ksdist::erf(0.0), 0.0);
  for (double x : {6.0, 7.5, 12.0}) EXPECT_NEAR(ksdist::erf(x), 1.0, 1e-12);
  EXPECT_NEAR(ksdist::erfc(0.5), 1.0 - ksdist::erf(0.5), 1e-15);
}

TEST(Erf, MaclaurinAtOne) {
  double remainder = 0.0;
  const double reference = erf_maclaurin(1.0, &remainder);
  ASSERT_LT(remainder, 1e-15);
  EXPECT_NEAR(ksdist::erf(1.0), reference, 1e-12);
}

TEST(Erf, AgreesWithSeriesOracleAndIsOddAndMonotone) {
  double previous = -1.0;
  for (int i = 0; i <= 1200; ++i) {
    const double x = -6.0 + 12.0 * i / 1200.0;
    const double value = ksdist::erf(x);
    EXPECT_NEAR(value, erf_oracle(x), 1e-12) << "x=" << x;
    EXPECT_EQ(ksdist::erf(-x), -value);
    EXPECT_GE(value, previous);
    previous = value;
  }
}

TEST(Dkwm, Examples) {
  const TailBoundResult at_zero = dkwm_tail(ScaledZ{0.0});
  EXPECT_EQ(at_zero.raw, 2.0);
  EXPECT_EQ(at_zero.clipped, 1.0);
  EXPECT_FALSE(at_zero.useful);
  EXPECT_TRUE(at_zero.valid);

  EXPECT_DOUBLE_EQ(dkwm_tail(ScaledZ{std::sqrt(std::log(2.0) / 2.0)}).raw, 1.0);
  const TailBoundResult at_one = dkwm_tail(ScaledZ{1.0});
  EXPECT_DOUBLE_EQ(at_one.raw, 2.0 * std::exp(-2.0));
  EXPECT_TRUE(at_one.useful);
  EXPECT_THROW(dkwm_tail(ScaledZ{-0.1}), DomainError);
}

TEST(Prop1, MatchesDkwm) {
  EXPECT_EQ(prop1_tail(ScaledZ{0.0}).clipped, 1.0);
  EXPECT_DOUBLE_EQ(prop1_tail(ScaledZ{std::sqrt(std::log(2.0) / 2.0)}).raw, 1.0);
  EXPECT_DOUBLE_EQ(prop1_tail(ScaledZ{1.5}).raw, 2.0 * std::exp(-4.5));
}

TEST(WeiDudley, Constants) {
  EXPECT_DOUBLE_EQ(wei_dudley_tail(4, 4, ScaledZ{1.0}).raw, 2.16863 * std::exp(-2.0));
  EXPECT_DOUBLE_EQ(wei_dudley_tail(457, 457, ScaledZ{1.0}).raw, 2.16863 * std::exp(-2.0));
  EXPECT_DOUBLE_EQ(wei_dudley_tail(458, 458, ScaledZ{1.0}).raw, 2.0 * std::exp(-2.0));
  EXPECT_THROW(wei_dudley_tail(3, 3, ScaledZ{1.0}), UnsupportedError);
  EXPECT_THROW(wei_dudley_tail(10, 12, ScaledZ{1.0}), UnsupportedError);
}

TEST(WeiDudley, UsefulRange) {
  const double edge = std::sqrt(std::log(2.16863) / 2.0);
  EXPECT_FALSE(wei_dudley_tail(10, 10, ScaledZ{edge - 1e-6}).useful);
  EXPECT_TRUE(wei_dudley_tail(10, 10, ScaledZ{edge + 1e-6}).useful);
}

TEST(Mu1, Examples) {
  EXPECT_EQ(mu1(8, 0.1), 0.0);
  EXPECT_DOUBLE_EQ(mu1(2, 0.7), 11.2 * std::exp(-1.96));
  EXPECT_THROW(mu1(2, -1.0), DomainError);
}

TEST(Mu1, IntegralRestatesDkwm) {
  for (std::size_t n : {1u, 10u, 100u}) {
    const double cut = dkwm_cutoff(n);
    for (double z : {0.05, 0.2, 0.5, 0.9}) {
      const double numeric =
          z <= cut ? 0.0 : simpson([n](double x) { return mu1(n, x); }, cut, z, 20000);
      const double closed = std::max(0.0, 1.0 - 2.0 * std::exp(-2.0 * n * z * z));
      EXPECT_NEAR(numeric, closed, 1e-9) << "n=" << n << " z=" << z;
    }
  }
  const double numeric = simpson([](double x) { return mu1(10, x); }, dkwm_cutoff(10), 0.5, 20000);
  EXPECT_NEAR(numeric, 1.0 - 2.0 * std::exp(-5.0), 1e-9);
}

TEST(Mu2, Examples) {
  EXPECT_EQ(mu2(5, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(mu2(1, 0.5), 2.0 * std::exp(-0.5));
  for (std::size_t n : {1u, 7u, 200u}) {
    // Beyond 12/sqrt(n) the density is below e^{-288}.
    const double upper = 12.0 / std::sqrt(static_cast<double>(n));
    EXPECT_NEAR(simpson([n](double x) { return mu2(n, x); }, 0.0, upper, 20000), 1.0, 1e-9);
  }
}

TEST(Prop2a, Examples) {
  const double z = kSqrtLog2 * std::sqrt(2.0 / 50.0);
  EXPECT_NEAR(prop2a_tail_general(50, 50, UnscaledZ{z}).raw, 1.0, 1e-12);
  // 1 - integral over omega1 by scipy dblquad at epsabs 1e-13.
  EXPECT_NEAR(prop2a_tail_general(100, 200, UnscaledZ{0.2}).raw, 0.0688546741653554, 1e-6);
  const TailBoundResult below = prop2a_tail_general(100, 200, UnscaledZ{0.05});
  EXPECT_FALSE(below.valid);
  EXPECT_GT(below.raw, 0.0);
  EXPECT_TRUE(prop2a_tail_general(100, 200, UnscaledZ{0.2}).valid);
  EXPECT_THROW(prop2a_tail_general(0, 5, UnscaledZ{0.2}), DomainError);
}

TEST(Prop2a, EqualsOneAtValidityEdge) {
  for (std::size_t n : {1u, 4u, 25u, 1000u}) {
    for (std::size_t m : {1u, 3u, 200u}) {
      const double edge = two_sample_validity_edge(n, m);
      const TailBoundResult r = prop2a_tail_general(n, m, UnscaledZ{edge});
      EXPECT_NEAR(r.raw, 1.0, 1e-12) << n << "," << m;
      EXPECT_TRUE(r.valid);
    }
  }
}

TEST(Alpha1, Examples) {
  EXPECT_EQ(alpha1(ScaledZ{kSqrtLog2}).raw, 1.0);
  EXPECT_TRUE(alpha1(ScaledZ{kSqrtLog2}).valid);
  EXPECT_FALSE(alpha1(ScaledZ{0.8}).valid);
  const double expected_at_two =
      std::exp(-16.0 + 8.0 * kSqrtLog2) + std::sqrt(32.0 * std::numbers::pi) * 2.0 *
                                             std::exp(-8.0) *
                                             std::erf(std::sqrt(2.0) * (2.0 - kSqrtLog2));
  // -4z(z - sqrt(log 2)) at z = 2 is -16 + 8 sqrt(log 2).
  EXPECT_DOUBLE_EQ(alpha1(ScaledZ{2.0}).raw, expected_at_two);
  // 40-digit evaluation.
  EXPECT_NEAR(alpha1(ScaledZ{2.0}).raw, 0.0066834109081058253, 1e-15);
  EXPECT_NEAR(alpha1(ScaledZ{1.054}).raw, 0.784, 2e-3);
}

TEST(Prop2b, Examples) {
  EXPECT_EQ(prop2b_tail_general(50, 50, UnscaledZ{0.9 * std::sqrt(2.0 / 50.0)}).raw, 1.0);
  // min(1, 2 - 2 alpha3) with alpha3 by scipy dblquad at epsabs 1e-13.
  EXPECT_NEAR(prop2b_tail_general(100, 200, UnscaledZ{0.2}).raw, 0.04140269291690046, 1e-6);
  EXPECT_NEAR(prop2b_tail_general(50, 50, UnscaledZ{2.0 * std::sqrt(2.0 / 50.0)}).raw,
              alpha2(ScaledZ{2.0}).raw, 1e-12);
  const TailBoundResult r = prop2b_tail_general(100, 200, UnscaledZ{0.2});
  EXPECT_EQ(r.raw, r.clipped);
  EXPECT_THROW(prop2b_tail_general(3, 0, UnscaledZ{0.2}), DomainError);
}

TEST(Alpha2, Examples) {
  EXPECT_EQ(alpha2(ScaledZ{kSqrtLog2}).raw, 1.0);
  EXPECT_EQ(alpha2(ScaledZ{0.95}).raw, 1.0);
  EXPECT_NEAR(alpha2(ScaledZ{1.054}).raw, 0.784, 2e-3);
  EXPECT_NEAR(alpha2(ScaledZ{1.054}).raw, alpha1(ScaledZ{1.054}).raw, 2e-3);
  EXPECT_NEAR(alpha2(ScaledZ{2.0}).raw, 0.0034295832746304041, 1e-15);
}

TEST(TwoSampleBounds, EqualSizeReductions) {
  for (std::size_t n : {4u, 50u, 458u, 1000u}) {
    for (int i = 0; i < 100; ++i) {
      const double zeta = kSqrtLog2 + (3.0 - kSqrtLog2) * i / 99.0;
      const UnscaledZ z{zeta * std::sqrt(2.0 / static_cast<double>(n))};
      EXPECT_NEAR(prop2a_tail_general(n, n, z).raw, alpha1(ScaledZ{zeta}).raw, 1e-12);
      EXPECT_NEAR(prop2b_tail_general(n, n, z).raw, alpha2(ScaledZ{zeta}).raw, 1e-12);
    }
  }
}

TEST(TwoSampleBounds, SymmetricInSampleSizes) {
  for (auto [n, m] : {std::pair{25u, 200u}, std::pair{100u, 300u}, std::pair{7u, 1000u}}) {
    for (double z : {0.1, 0.2, 0.35, 0.6}) {
      EXPECT_DOUBLE_EQ(prop2a_tail_general(n, m, UnscaledZ{z}).raw,
                       prop2a_tail_general(m, n, UnscaledZ{z}).raw);
      EXPECT_DOUBLE_EQ(prop2b_tail_general(n, m, UnscaledZ{z}).raw,
                       prop2b_tail_general(m, n, UnscaledZ{z}).raw);
    }
  }
}

TEST(TwoSampleBounds, AlphasNonincreasing) {
  double prev1 = 2.0;
  double prev2 = 2.0;
  for (int i = 0; i < 1000; ++i) {
    const double z = kSqrtLog2 + (3.0 - kSqrtLog2) * i / 999.0;
    const double a1 = alpha1(ScaledZ{z}).raw;
    const double a2 = alpha2(ScaledZ{z}).raw;
    EXPECT_LE(a1, prev1 + 1e-15) << z;
    EXPECT_LE(a2, prev2 + 1e-15) << z;
    prev1 = a1;
    prev2 = a2;
  }
}

TEST(TwoSampleBounds, Dominance) {
  for (int i = 1; i < 1000; ++i) {
    const double z = kSqrtLog2 + (3.0 - kSqrtLog2) * i / 999.0;
    const double a1 = alpha1(ScaledZ{z}).raw;
    const double a2 = alpha2(ScaledZ{z}).raw;
    if (z > 1.055) {
      EXPECT_LE(a2, a1) << z;
    }
    if (z < 1.054) {
      EXPECT_LE(a1, a2) << z;
    }
  }
}

TEST(BoundFamily, NamesRoundTrip) {
  for (BoundFamily family :
       {BoundFamily::dkwm, BoundFamily::wei_dudley, BoundFamily::prop1, BoundFamily::prop2a,
        BoundFamily::alpha1, BoundFamily::prop2b, BoundFamily::alpha2}) {
    EXPECT_EQ(parse_bound_family(to_string(family)), family);
  }
  EXPECT_FALSE(parse_bound_family("kolmogorov").has_value());
  EXPECT_EQ(z_convention(BoundFamily::prop2a), ZConvention::unscaled);
  EXPECT_EQ(z_convention(BoundFamily::alpha2), ZConvention::scaled);
}

TEST(BoundFamily, EvaluateDispatches) {
  EXPECT_EQ(evaluate_bound(BoundFamily::alpha1, {1.2, 1, 1}).raw, alpha1(ScaledZ{1.2}).raw);
  EXPECT_EQ(evaluate_bound(BoundFamily::prop2b, {0.2, 100, 200}).raw,
            prop2b_tail_general(100, 200, UnscaledZ{0.2}).raw);
  EXPECT_EQ(evaluate_bound(BoundFamily::wei_dudley, {1.0, 4, 4}).raw,
            wei_dudley_tail(4, 4, ScaledZ{1.0}).raw);
  EXPECT_EQ(validity_start(BoundFamily::alpha2, 1, 1), kSqrtLog2);
  EXPECT_EQ(validity_start(BoundFamily::prop2a, 50, 80), two_sample_validity_edge(50, 80));
}

}  // namespace
}  // namespace ksdist
