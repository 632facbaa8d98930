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

#ifndef KSDIST_DISTRIBUTIONS_HPP_
#define KSDIST_DISTRIBUTIONS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "ksdist/ecdf.hpp"

namespace ksdist {

struct Normal {
  double mu = 0.0;
  double sigma = 1.0;
  bool operator==(const Normal&) const = default;
};

struct Uniform {
  double a = 0.0;
  double b = 1.0;
  bool operator==(const Uniform&) const = default;
};

struct Exponential {
  double rate = 1.0;
  bool operator==(const Exponential&) const = default;
};

// A continuous distribution with closed-form CDF and quantile. Parameters
// are validated on construction; use the named factories.
class ContinuousDist {
 public:
  using Kind = std::variant<Normal, Uniform, Exponential>;

  static ContinuousDist normal(double mu, double sigma);
  static ContinuousDist uniform(double a, double b);
  static ContinuousDist exponential(double rate);

  // Parses `normal:mu,sigma`, `uniform:a,b` or `exponential:rate`. Throws
  // DomainError on malformed input.
  static ContinuousDist parse(std::string_view spec);

  const Kind& kind() const { return kind_; }
  const std::string& name() const { return name_; }

  double cdf(double x) const;
  // Inverse CDF on the open interval (0, 1); throws DomainError otherwise.
  double quantile(double p) const;

  // Endpoints of the support when bounded, used to seed maximisation. Unbounded
  // ends are reported as infinities.
  double support_lower() const;
  double support_upper() const;

  bool operator==(const ContinuousDist& other) const { return kind_ == other.kind_; }

 private:
  explicit ContinuousDist(Kind kind);

  Kind kind_;
  std::string name_;
};

// Draws n i.i.d. values by inverse transform. The uniforms come from a
// std::mt19937_64 seeded with `seed`, so the sample depends on the seed only.
Sample sample(const ContinuousDist& dist, std::size_t n, std::uint64_t seed);

// sup_x |F(x) - G(x)| by a grid scan over the union of both distributions'
// central mass, refined locally around every grid maximum.
double true_ks_distance(const ContinuousDist& f, const ContinuousDist& g);

}  // namespace ksdist

#endif  // KSDIST_DISTRIBUTIONS_HPP_
