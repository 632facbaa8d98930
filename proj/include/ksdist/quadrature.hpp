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

#ifndef KSDIST_QUADRATURE_HPP_
#define KSDIST_QUADRATURE_HPP_

#include <cstddef>
#include <functional>
#include <span>

namespace ksdist {

struct QuadratureConfig {
  double abs_tol = 1e-8;
  // Maximum depth of 4-way triangle refinement.
  int max_subdivisions = 20;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Triangle {
  Point2 a;
  Point2 b;
  Point2 c;

  double area() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // sum of per-triangle error estimates
  std::size_t triangles = 0;
};

// Globally adaptive cubature over a union of triangles. Each triangle is
// integrated with two collapsed Gauss-Legendre product rules of different
// order; their difference is the error estimate. The triangle with the
// largest estimate is split into four at its edge midpoints until the total
// estimate falls below cfg.abs_tol. Leaf contributions are summed in sorted
// order with compensation, so the result does not depend on the refinement
// history.
//
// The integrand must be smooth inside each triangle: callers place
// discontinuities on triangle edges. Throws ConvergenceError when the depth
// limit is reached with the tolerance unmet, and DomainError for a
// non-positive tolerance.
QuadratureResult integrate_triangles(std::span<const Triangle> domain,
                                     const std::function<double(double, double)>& integrand,
                                     const QuadratureConfig& cfg = {});

}  // namespace ksdist

#endif  // KSDIST_QUADRATURE_HPP_
