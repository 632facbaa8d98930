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

#include "ksdist/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "ksdist/bounds.hpp"
#include "ksdist/errors.hpp"

namespace ksdist {
namespace {

// Tolerance when comparing z against its interval ends.
constexpr double kEdgeSlack = 1e-12;

void require_sizes(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw DomainError("oracle: sample sizes must be >= 1");
}

}  // namespace

double integral_omega1(std::size_t n, std::size_t m, double z, const QuadratureConfig& cfg) {
  require_sizes(n, m);
  if (!(z > 0.0 && z <= 1.0)) throw DomainError("integral_omega1: need 0 < z <= 1");
  const double cn = dkwm_cutoff(n);
  const double cm = dkwm_cutoff(m);
  if (z <= cn + cm) return 0.0;
  const std::array<Triangle, 1> domain{{{{cn, cm}, {z - cm, cm}, {cn, z - cn}}}};
  // The cutoff lines x = cn and y = cm are triangle edges, so every node
  // lies on the smooth branch of both factors.
  const auto integrand = [n, m](double x, double y) { return mu1(n, x) * mu1(m, y); };
  return std::clamp(integrate_triangles(domain, integrand, cfg).value, 0.0, 1.0);
}

double alpha3_numeric(std::size_t n, std::size_t m, double z, const QuadratureConfig& cfg) {
  require_sizes(n, m);
  const double cn = dkwm_cutoff(n);
  const double cm = dkwm_cutoff(m);
  if (!(z >= cn + cm - kEdgeSlack && z <= 1.0)) {
    throw DomainError("alpha3_numeric: need sqrt(log2/2)(n^-1/2 + m^-1/2) <= z <= 1");
  }
  const double x_max = std::max(z - cm, 0.0);
  const double y_max = std::max(z - cn, 0.0);
  // Pentagon (0,0) (x_max,0) (x_max,z-x_max) (z-y_max,y_max) (0,y_max), fanned
  // from the origin. At the lower edge it collapses to the box
  // [0,cn] x [0,cm].
  const Point2 origin{0.0, 0.0};
  const Point2 p1{x_max, 0.0};
  const Point2 p2{x_max, z - x_max};
  const Point2 p3{z - y_max, y_max};
  const Point2 p4{0.0, y_max};
  const std::array<Triangle, 3> domain{{{origin, p1, p2}, {origin, p2, p3}, {origin, p3, p4}}};
  const auto integrand = [n, m](double x, double y) {
    return mu2(n, std::max(x, 0.0)) * mu2(m, std::max(y, 0.0));
  };
  return std::clamp(integrate_triangles(domain, integrand, cfg).value, 0.0, 1.0);
}

bool one_sided_condition_holds(std::size_t n, std::size_t m, double z) {
  require_sizes(n, m);
  const auto threshold = [](std::size_t k) {
    return 1.0841 * std::pow(static_cast<double>(k), -2.0 / 3.0);
  };
  return z >= threshold(n) && z >= threshold(m);
}

VerifyCell verify_cell(std::size_t n, std::size_t m, double z, const QuadratureConfig& cfg) {
  VerifyCell cell;
  cell.n = n;
  cell.m = m;
  cell.z = z;
  cell.omega1_complement = 1.0 - integral_omega1(n, m, z, cfg);
  cell.prop2a_raw = prop2a_tail_general(n, m, UnscaledZ{z}).raw;
  cell.gap_2a = cell.prop2a_raw - cell.omega1_complement;
  cell.alpha3 = alpha3_numeric(n, m, z, cfg);
  cell.alpha3_bound = std::min(1.0, 2.0 - 2.0 * cell.alpha3);
  cell.prop2b_raw = prop2b_tail_general(n, m, UnscaledZ{z}).raw;
  cell.gap_2b = cell.prop2b_raw - cell.alpha3_bound;
  cell.pass_2a = cell.gap_2a >= -kVerifySlack;
  cell.pass_2b = cell.gap_2b >= -kVerifySlack;
  cell.one_sided_condition = one_sided_condition_holds(n, m, z);
  return cell;
}

std::vector<GridPoint> default_verify_grid() {
  constexpr std::array<std::size_t, 4> sizes{25, 50, 100, 200};
  std::vector<GridPoint> grid;
  for (std::size_t n : sizes) {
    for (std::size_t m : sizes) {
      const double edge = two_sample_validity_edge(n, m);
      for (int k = 0; k < 10; ++k) {
        grid.push_back({n, m, edge * (1.0 + 0.25 * k)});
      }
    }
  }
  return grid;
}

}  // namespace ksdist
