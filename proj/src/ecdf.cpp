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

#include "ksdist/ecdf.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <string_view>

#include "ksdist/distributions.hpp"
#include "ksdist/errors.hpp"

namespace ksdist {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("sample must contain at least one value");
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("sample values must be finite");
  }
  std::sort(values_.begin(), values_.end());
}

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kSpace);
  return s.substr(first, last - first + 1);
}

}  // namespace

Sample read_sample(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = trim(line);
    if (line_no == 1 && text.starts_with("\xEF\xBB\xBF")) text = trim(text.substr(3));
    if (text.empty() || text.front() == '#') continue;
    // from_chars rejects a leading '+', which is valid decimal notation.
    std::string_view digits = text.front() == '+' ? text.substr(1) : text;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw IngestError("line " + std::to_string(line_no) + ": not a number: '" +
                            std::string(text) + "'",
                        line_no);
    }
    if (!std::isfinite(value)) {
      throw IngestError("line " + std::to_string(line_no) + ": value is not finite", line_no);
    }
    values.push_back(value);
  }
  if (in.bad()) throw IngestError("read failure", line_no);
  if (values.empty()) throw IngestError("sample contains no values", 0);
  return Sample(std::move(values));
}

Sample read_sample_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open '" + path.string() + "'", 0);
  try {
    return read_sample(in);
  } catch (const IngestError& e) {
    throw IngestError(path.string() + ": " + e.what(), e.line());
  }
}

double Ecdf::operator()(double x) const {
  const auto values = sample_.values();
  const auto count = std::upper_bound(values.begin(), values.end(), x) - values.begin();
  return static_cast<double>(count) / static_cast<double>(values.size());
}

Ecdf build_ecdf(Sample sample) { return Ecdf(std::move(sample)); }

KsOneSampleStats ks_one_sample(const Sample& sample, const ContinuousDist& dist) {
  return ks_one_sample(sample, [&dist](double x) { return dist.cdf(x); });
}

double ks_two_sample(const Sample& x, const Sample& y) {
  const auto a = x.values();
  const auto b = y.values();
  const double n = static_cast<double>(a.size());
  const double m = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() || j < b.size()) {
    double t;
    if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
      t = a[i];
    } else {
      t = b[j];
    }
    while (i < a.size() && a[i] == t) ++i;
    while (j < b.size() && b[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  return std::min(d, 1.0);
}

}  // namespace ksdist
