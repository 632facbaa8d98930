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

#include "ksdist/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "ksdist/errors.hpp"

namespace ksdist {
namespace {

constexpr std::size_t kHighOrder = 9;
constexpr std::size_t kLowOrder = 6;
constexpr std::size_t kMaxTriangles = 2'000'000;

struct Node {
  double x;
  double w;
};

// Gauss-Legendre nodes and weights mapped to [0, 1].
template <std::size_t N>
std::array<Node, N> gauss_legendre() {
  std::array<Node, N> nodes{};
  for (std::size_t i = 0; i < N; ++i) {
    double t = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (N + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = t;
      for (std::size_t k = 2; k <= N; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = N * (t * p1 - p0) / (t * t - 1.0);
      const double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - t * t) * dp * dp);
    nodes[i] = {0.5 * (1.0 - t), 0.5 * w};
  }
  return nodes;
}

struct TriangleRule {
  std::vector<double> s;
  std::vector<double> t;
  std::vector<double> w;  // sums to 1/2, the reference triangle area
};

// Product rule on the unit square collapsed onto {s, t >= 0, s + t <= 1}.
template <std::size_t N>
TriangleRule collapsed_rule() {
  const auto gl = gauss_legendre<N>();
  TriangleRule rule;
  for (const Node& u : gl) {
    for (const Node& v : gl) {
      rule.s.push_back(u.x);
      rule.t.push_back((1.0 - u.x) * v.x);
      rule.w.push_back(u.w * v.w * (1.0 - u.x));
    }
  }
  return rule;
}

const TriangleRule& high_rule() {
  static const TriangleRule rule = collapsed_rule<kHighOrder>();
  return rule;
}

const TriangleRule& low_rule() {
  static const TriangleRule rule = collapsed_rule<kLowOrder>();
  return rule;
}

double apply(const TriangleRule& rule, const Triangle& tri,
             const std::function<double(double, double)>& f) {
  const double bx = tri.b.x - tri.a.x;
  const double by = tri.b.y - tri.a.y;
  const double cx = tri.c.x - tri.a.x;
  const double cy = tri.c.y - tri.a.y;
  const double jacobian = std::abs(bx * cy - by * cx);
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.w.size(); ++k) {
    const double x = tri.a.x + rule.s[k] * bx + rule.t[k] * cx;
    const double y = tri.a.y + rule.s[k] * by + rule.t[k] * cy;
    sum += rule.w[k] * f(x, y);
  }
  return sum * jacobian;
}

struct Cell {
  Triangle tri;
  double value;
  double error;
  int level;
};

struct ByError {
  bool operator()(const Cell& lhs, const Cell& rhs) const { return lhs.error < rhs.error; }
};

Cell evaluate(const Triangle& tri, int level, const std::function<double(double, double)>& f) {
  const double hi = apply(high_rule(), tri, f);
  const double lo = apply(low_rule(), tri, f);
  return {tri, hi, std::abs(hi - lo), level};
}

Point2 midpoint(Point2 p, Point2 q) { return {0.5 * (p.x + q.x), 0.5 * (p.y + q.y)}; }

// Neumaier summation over values sorted by magnitude.
double compensated_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end(),
            [](double a, double b) { return std::abs(a) < std::abs(b); });
  double sum = 0.0;
  double compensation = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      compensation += (sum - t) + v;
    } else {
      compensation += (v - t) + sum;
    }
    sum = t;
  }
  return sum + compensation;
}

}  // namespace

double Triangle::area() const {
  return 0.5 * std::abs((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

QuadratureResult integrate_triangles(std::span<const Triangle> domain,
                                     const std::function<double(double, double)>& integrand,
                                     const QuadratureConfig& cfg) {
  if (!(cfg.abs_tol > 0.0)) throw DomainError("quadrature: abs_tol must be positive");
  if (cfg.max_subdivisions < 0) throw DomainError("quadrature: max_subdivisions must be >= 0");

  std::priority_queue<Cell, std::vector<Cell>, ByError> active;
  std::vector<Cell> frozen;
  double total_error = 0.0;
  for (const Triangle& tri : domain) {
    if (tri.area() == 0.0) continue;
    Cell cell = evaluate(tri, 0, integrand);
    total_error += cell.error;
    active.push(cell);
  }

  std::size_t cells = active.size();
  auto recompute_error = [&] {
    std::vector<double> errors;
    errors.reserve(active.size() + frozen.size());
    for (const Cell& c : frozen) errors.push_back(c.error);
    auto copy = active;
    while (!copy.empty()) {
      errors.push_back(copy.top().error);
      copy.pop();
    }
    return compensated_sum(std::move(errors));
  };

  while (true) {
    if (total_error <= cfg.abs_tol) {
      // The running total drifts; confirm before stopping.
      total_error = recompute_error();
      if (total_error <= cfg.abs_tol) break;
    }
    if (active.empty() || cells > kMaxTriangles) break;
    Cell worst = active.top();
    active.pop();
    if (worst.level >= cfg.max_subdivisions) {
      frozen.push_back(worst);
      continue;
    }
    const Triangle& t = worst.tri;
    const Point2 ab = midpoint(t.a, t.b);
    const Point2 bc = midpoint(t.b, t.c);
    const Point2 ca = midpoint(t.c, t.a);
    const std::array<Triangle, 4> children{{
        {t.a, ab, ca},
        {ab, t.b, bc},
        {ca, bc, t.c},
        {ab, bc, ca},
    }};
    total_error -= worst.error;
    for (const Triangle& child : children) {
      Cell cell = evaluate(child, worst.level + 1, integrand);
      total_error += cell.error;
      active.push(cell);
    }
    cells += 3;
  }

  std::vector<double> values;
  std::vector<double> errors;
  values.reserve(active.size() + frozen.size());
  for (const Cell& c : frozen) {
    values.push_back(c.value);
    errors.push_back(c.error);
  }
  while (!active.empty()) {
    values.push_back(active.top().value);
    errors.push_back(active.top().error);
    active.pop();
  }
  QuadratureResult result;
  result.triangles = values.size();
  result.value = compensated_sum(std::move(values));
  result.error = compensated_sum(std::move(errors));
  if (result.error > cfg.abs_tol) {
    throw ConvergenceError("quadrature did not reach abs_tol " + std::to_string(cfg.abs_tol) +
                               " (estimate " + std::to_string(result.value) + ", error bound " +
                               std::to_string(result.error) + ")",
                           result.value, result.error);
  }
  return result;
}

}  // namespace ksdist
