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

#ifndef KSDIST_ERRORS_HPP_
#define KSDIST_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ksdist {

// Argument outside the documented domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Parameter combination for which no bound is available (e.g. Wei-Dudley
// with n < 4 or n != m).
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A requested tail probability cannot be reached by a bound on its valid
// range.
class UnreachableError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Adaptive quadrature ran out of refinement levels before meeting its
// tolerance. Carries the best estimate and its error bound.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}

  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

// Malformed sample file. line() is 1-based; 0 when the error concerns the
// file as a whole.
class IngestError : public std::runtime_error {
 public:
  IngestError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ksdist

#endif  // KSDIST_ERRORS_HPP_
