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

#include "gtest/gtest.h"
#include "ksdist/bounds.hpp"
#include "ksdist/errors.hpp"
#include "ksdist/oracle.hpp"

namespace ksdist {
namespace {

TEST(IntegralOmega1, ZeroBelowCutoffs) {
  const double edge = two_sample_validity_edge(100, 200);
  EXPECT_EQ(integral_omega1(100, 200, 0.5 * edge), 0.0);
  EXPECT_EQ(integral_omega1(100, 200, edge), 0.0);
}

TEST(IntegralOmega1, NearlyFullMassAtOne) {
  const double v = integral_omega1(50, 50, 1.0);
  EXPECT_GE(v, 0.999);
  // The triangle lies inside the box [cn, 1] x [cm, 1], whose mass is the
  // product of the two marginal integrals.
  const double box = std::pow(1.0 - 2.0 * std::exp(-100.0), 2);
  EXPECT_LE(v, box + 1e-8);
}

TEST(IntegralOmega1, ValidatesClosedFormFirstBound) {
  const double v = integral_omega1(100, 200, 0.2);
  const double bound = prop2a_tail_general(100, 200, UnscaledZ{0.2}).raw;
  EXPECT_LE(1.0 - v, bound + 1e-6);
  EXPECT_NEAR(1.0 - v, bound, 1e-6);
}

TEST(IntegralOmega1, NondecreasingInZ) {
  double previous = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double v = integral_omega1(50, 100, 0.05 * i);
    EXPECT_GE(v, previous - 1e-8);
    previous = v;
  }
}

TEST(IntegralOmega1, Preconditions) {
  EXPECT_THROW(integral_omega1(50, 50, 0.0), DomainError);
  EXPECT_THROW(integral_omega1(50, 50, 1.5), DomainError);
  EXPECT_THROW(integral_omega1(0, 50, 0.5), DomainError);
}

TEST(Alpha3Numeric, BoxAtValidityEdge) {
  // At the lower edge the diagonal constraint is implied by the two box
  // constraints, leaving [0, cn] x [0, cm]; each marginal integral is
  // 1 - exp(-log 2) = 1/2.
  for (auto [n, m] : {std::pair{50u, 50u}, std::pair{100u, 200u}}) {
    const double edge = two_sample_validity_edge(n, m);
    EXPECT_NEAR(alpha3_numeric(n, m, edge), 0.25, 1e-8);
    EXPECT_EQ(prop2b_tail_general(n, m, UnscaledZ{edge}).raw, 1.0);
  }
}

TEST(Alpha3Numeric, ValidatesClosedFormSecondBound) {
  const double a3 = alpha3_numeric(50, 50, 0.3);
  const double closed = prop2b_tail_general(50, 50, UnscaledZ{0.3}).raw;
  EXPECT_NEAR(std::min(1.0, 2.0 - 2.0 * a3), closed, 1e-6);

  const double a3_unequal = alpha3_numeric(100, 200, 0.2);
  EXPECT_NEAR(std::min(1.0, 2.0 - 2.0 * a3_unequal),
              prop2b_tail_general(100, 200, UnscaledZ{0.2}).raw, 1e-6);
}

TEST(Alpha3Numeric, SymmetricUnderRelabeling) {
  EXPECT_NEAR(alpha3_numeric(100, 400, 0.25), alpha3_numeric(400, 100, 0.25), 2e-8);
}

TEST(Alpha3Numeric, Preconditions) {
  EXPECT_THROW(alpha3_numeric(50, 50, 0.1), DomainError);
  EXPECT_THROW(alpha3_numeric(50, 50, 1.01), DomainError);
}

TEST(Oracle, InvariantUnderDoublingDepth) {
  QuadratureConfig deep;
  deep.max_subdivisions = 40;
  EXPECT_NEAR(integral_omega1(25, 200, 0.4), integral_omega1(25, 200, 0.4, deep), 2e-8);
  EXPECT_NEAR(alpha3_numeric(25, 200, 0.4), alpha3_numeric(25, 200, 0.4, deep), 2e-8);
}

TEST(Oracle, OneSidedCondition) {
  // 1.0841 * 50^{-2/3} = 0.0799
  EXPECT_TRUE(one_sided_condition_holds(50, 50, 0.2));
  EXPECT_FALSE(one_sided_condition_holds(50, 50, 0.07));
  EXPECT_FALSE(one_sided_condition_holds(1000, 2, 0.5));
}

TEST(VerifyCell, PassesAndReportsGaps) {
  const VerifyCell cell = verify_cell(100, 200, 0.2);
  EXPECT_TRUE(cell.pass_2a);
  EXPECT_TRUE(cell.pass_2b);
  EXPECT_LT(std::abs(cell.gap_2a), 1e-6);
  EXPECT_LT(std::abs(cell.gap_2b), 1e-6);
  EXPECT_TRUE(cell.one_sided_condition);
}

TEST(DefaultGrid, ShapeAndRange) {
  const auto grid = default_verify_grid();
  EXPECT_EQ(grid.size(), 160u);
  for (const auto& p : grid) {
    EXPECT_GE(p.z, two_sample_validity_edge(p.n, p.m) - 1e-15);
    EXPECT_LE(p.z, 1.0);
  }
}

}  // namespace
}  // namespace ksdist
