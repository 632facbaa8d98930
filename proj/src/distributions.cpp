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

#include "ksdist/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "ksdist/bounds.hpp"
#include "ksdist/errors.hpp"

namespace ksdist {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_param(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string display_name(const ContinuousDist::Kind& kind) {
  return std::visit(
      Overloaded{
          [](const Normal& d) { return "normal:" + format_param(d.mu) + "," + format_param(d.sigma); },
          [](const Uniform& d) { return "uniform:" + format_param(d.a) + "," + format_param(d.b); },
          [](const Exponential& d) { return "exponential:" + format_param(d.rate); },
      },
      kind);
}

std::vector<double> parse_params(std::string_view text, std::string_view spec) {
  std::vector<double> params;
  while (true) {
    const auto comma = text.find(',');
    std::string_view token = text.substr(0, comma);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() ||
        !std::isfinite(value)) {
      throw DomainError("malformed distribution spec '" + std::string(spec) + "'");
    }
    params.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return params;
}

// Uniform double in the open interval (0, 1) from the top 53 bits.
double open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1p-53;
}

}  // namespace

ContinuousDist::ContinuousDist(Kind kind) : kind_(kind), name_(display_name(kind_)) {}

ContinuousDist ContinuousDist::normal(double mu, double sigma) {
  if (!std::isfinite(mu) || !std::isfinite(sigma) || !(sigma > 0.0)) {
    throw DomainError("normal: need finite mu and sigma > 0");
  }
  return ContinuousDist(Normal{mu, sigma});
}

ContinuousDist ContinuousDist::uniform(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) {
    throw DomainError("uniform: need finite a < b");
  }
  return ContinuousDist(Uniform{a, b});
}

ContinuousDist ContinuousDist::exponential(double rate) {
  if (!std::isfinite(rate) || !(rate > 0.0)) {
    throw DomainError("exponential: need rate > 0");
  }
  return ContinuousDist(Exponential{rate});
}

ContinuousDist ContinuousDist::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw DomainError("malformed distribution spec '" + std::string(spec) +
                      "' (expected family:params)");
  }
  const std::string_view family = spec.substr(0, colon);
  const std::vector<double> p = parse_params(spec.substr(colon + 1), spec);
  if (family == "normal" && p.size() == 2) return normal(p[0], p[1]);
  if (family == "uniform" && p.size() == 2) return uniform(p[0], p[1]);
  if (family == "exponential" && p.size() == 1) return exponential(p[0]);
  throw DomainError("unknown distribution or wrong parameter count in '" + std::string(spec) + "'");
}

double ContinuousDist::cdf(double x) const {
  return std::visit(
      Overloaded{
          [x](const Normal& d) {
            return 0.5 * ksdist::erfc(-(x - d.mu) / (d.sigma * std::numbers::sqrt2));
          },
          [x](const Uniform& d) { return std::clamp((x - d.a) / (d.b - d.a), 0.0, 1.0); },
          [x](const Exponential& d) { return x <= 0.0 ? 0.0 : -std::expm1(-d.rate * x); },
      },
      kind_);
}

double ContinuousDist::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile: p must lie in (0, 1)");
  return std::visit(
      Overloaded{
          [p](const Normal& d) {
            return d.mu - d.sigma * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
          },
          [p](const Uniform& d) { return d.a + p * (d.b - d.a); },
          [p](const Exponential& d) { return -std::log1p(-p) / d.rate; },
      },
      kind_);
}

double ContinuousDist::support_lower() const {
  return std::visit(Overloaded{
                        [](const Normal&) { return -std::numeric_limits<double>::infinity(); },
                        [](const Uniform& d) { return d.a; },
                        [](const Exponential&) { return 0.0; },
                    },
                    kind_);
}

double ContinuousDist::support_upper() const {
  return std::visit(Overloaded{
                        [](const Normal&) { return std::numeric_limits<double>::infinity(); },
                        [](const Uniform& d) { return d.b; },
                        [](const Exponential&) { return std::numeric_limits<double>::infinity(); },
                    },
                    kind_);
}

Sample sample(const ContinuousDist& dist, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("sample: n must be >= 1");
  std::mt19937_64 engine(seed);
  std::vector<double> values(n);
  for (double& v : values) v = dist.quantile(open_unit(engine()));
  return Sample(std::move(values));
}

namespace {

constexpr std::size_t kGridPoints = 4096;
constexpr double kTailMass = 5e-7;  // each side of the central 99.9999%
constexpr std::size_t kMaxRefinements = 32;

double golden_section_max(const auto& h, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = h(c);
  double fd = h(d);
  double best = std::max({h(lo), h(hi), fc, fd});
  for (int iter = 0; iter < 200 && (b - a) > 1e-13 * (1.0 + std::abs(a)); ++iter) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = h(c);
      best = std::max(best, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = h(d);
      best = std::max(best, fd);
    }
  }
  return best;
}

}  // namespace

double true_ks_distance(const ContinuousDist& f, const ContinuousDist& g) {
  if (f == g) return 0.0;
  const auto h = [&](double x) { return std::abs(f.cdf(x) - g.cdf(x)); };

  const double lo = std::min(f.quantile(kTailMass), g.quantile(kTailMass));
  const double hi = std::max(f.quantile(1.0 - kTailMass), g.quantile(1.0 - kTailMass));

  std::vector<double> grid;
  grid.reserve(kGridPoints + 4);
  for (std::size_t i = 0; i < kGridPoints; ++i) {
    grid.push_back(lo + (hi - lo) * static_cast<double>(i) / (kGridPoints - 1));
  }
  // Kinks at bounded support ends are where uniform/exponential CDFs peak.
  for (double x : {f.support_lower(), f.support_upper(), g.support_lower(), g.support_upper()}) {
    if (std::isfinite(x)) grid.push_back(x);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<double> values(grid.size());
  std::transform(grid.begin(), grid.end(), values.begin(), h);

  double best = *std::max_element(values.begin(), values.end());

  // Refine around the strongest local maxima (first point of each plateau).
  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    if (values[i] > values[i - 1] && values[i] >= values[i + 1]) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(),
            [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  if (peaks.size() > kMaxRefinements) peaks.resize(kMaxRefinements);
  for (std::size_t i : peaks) {
    best = std::max(best, golden_section_max(h, grid[i - 1], grid[i + 1]));
  }
  return std::clamp(best, 0.0, 1.0);
}

}  // namespace ksdist
