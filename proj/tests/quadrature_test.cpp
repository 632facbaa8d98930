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

#include <array>
#include <cmath>

#include "gtest/gtest.h"
#include "ksdist/errors.hpp"
#include "ksdist/quadrature.hpp"

namespace ksdist {
namespace {

const std::array<Triangle, 1> kUnitTriangle{{{{0, 0}, {1, 0}, {0, 1}}}};

double factorial(int k) { return std::tgamma(k + 1.0); }

TEST(IntegrateTriangles, MonomialsExact) {
  for (int a = 0; a <= 6; ++a) {
    for (int b = 0; a + b <= 8; ++b) {
      const auto f = [a, b](double x, double y) { return std::pow(x, a) * std::pow(y, b); };
      const double exact = factorial(a) * factorial(b) / factorial(a + b + 2);
      EXPECT_NEAR(integrate_triangles(kUnitTriangle, f).value, exact, 1e-14) << a << "," << b;
    }
  }
}

TEST(IntegrateTriangles, AreaOfSquareFromTwoTriangles) {
  const std::array<Triangle, 2> square{{{{0, 0}, {2, 0}, {2, 3}}, {{0, 0}, {2, 3}, {0, 3}}}};
  EXPECT_NEAR(integrate_triangles(square, [](double, double) { return 1.0; }).value, 6.0, 1e-13);
}

TEST(IntegrateTriangles, PeakedGaussianToTolerance) {
  // Product of two narrow Gaussian densities over a box split into triangles;
  // exact value is a product of erf differences.
  const double s = 0.02;
  const auto f = [s](double x, double y) {
    return std::exp(-((x - 0.3) * (x - 0.3) + (y - 0.6) * (y - 0.6)) / (2 * s * s)) /
           (2 * M_PI * s * s);
  };
  const std::array<Triangle, 2> box{{{{0, 0}, {1, 0}, {1, 1}}, {{0, 0}, {1, 1}, {0, 1}}}};
  const auto marginal = [s](double mu) {
    return 0.5 * (std::erf((1 - mu) / (s * std::sqrt(2.0))) - std::erf(-mu / (s * std::sqrt(2.0))));
  };
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-10;
  const QuadratureResult r = integrate_triangles(box, f, cfg);
  // The reported error is an estimate; allow a small factor on the true one.
  EXPECT_NEAR(r.value, marginal(0.3) * marginal(0.6), 1e-9);
  EXPECT_LE(r.error, 1e-10);
  EXPECT_GT(r.triangles, 2u);
}

TEST(IntegrateTriangles, InvariantUnderDeeperLimit) {
  const auto f = [](double x, double y) { return std::exp(-400 * (x * x + y * y)) * x * y; };
  QuadratureConfig shallow;
  QuadratureConfig deep;
  deep.max_subdivisions = 40;
  EXPECT_NEAR(integrate_triangles(kUnitTriangle, f, shallow).value,
              integrate_triangles(kUnitTriangle, f, deep).value, 1e-9);
}

TEST(IntegrateTriangles, DepthLimitRaisesConvergenceError) {
  // A jump across the interior cannot be resolved at depth 0.
  const auto step = [](double x, double) { return x < 0.3 ? 0.0 : 1.0; };
  QuadratureConfig cfg;
  cfg.max_subdivisions = 0;
  cfg.abs_tol = 1e-12;
  try {
    integrate_triangles(kUnitTriangle, step, cfg);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.error(), 1e-12);
    EXPECT_NEAR(e.estimate(), 0.5 * 0.7 * 0.7, 0.05);
  }
}

TEST(IntegrateTriangles, RejectsBadConfigAndSkipsDegenerate) {
  QuadratureConfig cfg;
  cfg.abs_tol = 0.0;
  EXPECT_THROW(integrate_triangles(kUnitTriangle, [](double, double) { return 1.0; }, cfg),
               DomainError);
  const std::array<Triangle, 1> flat{{{{0, 0}, {1, 1}, {2, 2}}}};
  EXPECT_EQ(integrate_triangles(flat, [](double, double) { return 1.0; }).value, 0.0);
}

}  // namespace
}  // namespace ksdist
