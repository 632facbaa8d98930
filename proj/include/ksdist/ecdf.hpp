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

#ifndef KSDIST_ECDF_HPP_
#define KSDIST_ECDF_HPP_

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <vector>

namespace ksdist {

class ContinuousDist;

// Sorted, finite, nonempty set of observations.
class Sample {
 public:
  // Sorts `values`. Throws DomainError if empty or if any entry is NaN or
  // infinite.
  explicit Sample(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

// Reads one decimal value per line; blank lines and lines starting with '#'
// are skipped. Throws IngestError carrying the offending line number.
Sample read_sample(std::istream& in);
Sample read_sample_file(const std::filesystem::path& path);

// Right-continuous step function F_n(x) = #{X_i <= x} / n.
class Ecdf {
 public:
  explicit Ecdf(Sample sample) : sample_(std::move(sample)) {}

  double operator()(double x) const;
  std::size_t size() const { return sample_.size(); }
  const Sample& sample() const { return sample_; }

 private:
  Sample sample_;
};

Ecdf build_ecdf(Sample sample);

struct KsOneSampleStats {
  double d = 0.0;          // sup |F_n - F|
  double sup_plus = 0.0;   // sup (F_n - F)
  double sup_minus = 0.0;  // sup (F - F_n)
};

// Exact one-sample statistics over the order statistics X_(i):
//   sup_plus  = max_i (i/n - F(X_(i))),
//   sup_minus = max_i (F(X_(i)) - (i-1)/n),
// both clamped below at 0. `cdf` must be continuous and nondecreasing.
template <class Cdf>
  requires std::invocable<const Cdf&, double>
KsOneSampleStats ks_one_sample(const Sample& sample, const Cdf& cdf) {
  const auto values = sample.values();
  const double n = static_cast<double>(values.size());
  KsOneSampleStats stats;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = cdf(values[i]);
    stats.sup_plus = std::max(stats.sup_plus, static_cast<double>(i + 1) / n - f);
    stats.sup_minus = std::max(stats.sup_minus, f - static_cast<double>(i) / n);
  }
  stats.sup_plus = std::clamp(stats.sup_plus, 0.0, 1.0);
  stats.sup_minus = std::clamp(stats.sup_minus, 0.0, 1.0);
  stats.d = std::max(stats.sup_plus, stats.sup_minus);
  return stats;
}

KsOneSampleStats ks_one_sample(const Sample& sample, const ContinuousDist& dist);

// sup_x |F_n(x) - G_m(x)|, evaluated after each distinct abscissa of the
// merged samples so that ties are handled exactly.
double ks_two_sample(const Sample& x, const Sample& y);

}  // namespace ksdist

#endif  // KSDIST_ECDF_HPP_
