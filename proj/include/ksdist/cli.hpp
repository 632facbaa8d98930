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

#ifndef KSDIST_CLI_HPP_
#define KSDIST_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace ksdist::cli {

// Process exit statuses.
enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,   // a statistical or oracle check did not pass
  kInputError = 2,    // usage error, malformed file or parameter
  kNotConverged = 3,  // numerical non-convergence
};

// Runs the command line `args` (args[0] is the program name) and returns the
// exit status. Normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ksdist::cli

#endif  // KSDIST_CLI_HPP_
