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

#include "ksdist/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "ksdist/ecdf.hpp"
#include "ksdist/errors.hpp"
#include "ksdist/format.hpp"

namespace ksdist {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

unsigned resolve_workers(unsigned requested, std::size_t trials) {
  unsigned workers = requested != 0 ? requested : std::thread::hardware_concurrency();
  workers = std::max(1u, workers);
  return static_cast<unsigned>(std::min<std::size_t>(workers, trials));
}

// Evaluates statistic(trial) for every trial. Each trial owns its output
// slot, so the result is independent of scheduling.
std::vector<double> run_trials(std::size_t trials, unsigned requested_workers,
                               const std::function<double(std::size_t)>& statistic) {
  std::vector<double> out(trials);
  const unsigned workers = resolve_workers(requested_workers, trials);
  if (workers <= 1) {
    for (std::size_t t = 0; t < trials; ++t) out[t] = statistic(t);
    return out;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (trials + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(trials, begin + chunk);
        for (std::size_t t = begin; t < end; ++t) out[t] = statistic(t);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& thread : threads) thread.join();
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  return out;
}

double binomial_se(double p, std::size_t trials) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

SimReport tabulate(const SimConfig& cfg, double d_true, const std::vector<double>& statistics,
                   const std::vector<BoundFamily>& families,
                   const std::function<TailBoundResult(BoundFamily, double)>& bound_at) {
  SimReport report;
  report.n = cfg.n;
  report.m = cfg.m;
  report.trials = cfg.trials;
  report.d_true = d_true;
  report.families = families;
  for (double z : cfg.z_grid) {
    SimRow row;
    row.z = z;
    row.exceedances = static_cast<std::size_t>(
        std::count_if(statistics.begin(), statistics.end(), [z](double s) { return s > z; }));
    row.empirical = static_cast<double>(row.exceedances) / static_cast<double>(cfg.trials);
    row.se = binomial_se(row.empirical, cfg.trials);
    for (BoundFamily family : families) {
      const TailBoundResult bound = bound_at(family, z);
      FamilyCell cell;
      cell.bound = bound.clipped;
      cell.valid = bound.valid;
      if (bound.valid && cfg.trials > 1) {
        cell.pass = row.empirical <= bound.clipped + kSigmaSlack * row.se;
      }
      row.cells.push_back(cell);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial, std::uint64_t stream) {
  return splitmix64(splitmix64(master ^ splitmix64(trial)) + stream);
}

void validate(const SimConfig& cfg) {
  if (cfg.n == 0) throw DomainError("simulation: n must be >= 1");
  if (cfg.trials == 0) throw DomainError("simulation: trials must be >= 1");
  if (cfg.z_grid.empty()) throw DomainError("simulation: z grid is empty");
  for (std::size_t i = 0; i < cfg.z_grid.size(); ++i) {
    const double z = cfg.z_grid[i];
    if (!std::isfinite(z) || z < 0.0) throw DomainError("simulation: z values must be >= 0");
    if (i > 0 && !(z > cfg.z_grid[i - 1])) {
      throw DomainError("simulation: z grid must be strictly increasing");
    }
  }
}

bool SimReport::all_pass() const {
  for (const SimRow& row : rows) {
    for (const FamilyCell& cell : row.cells) {
      if (cell.pass.has_value() && !*cell.pass) return false;
    }
  }
  return true;
}

std::vector<std::string> SimReport::failures() const {
  std::vector<std::string> out;
  for (const SimRow& row : rows) {
    for (std::size_t k = 0; k < families.size(); ++k) {
      const FamilyCell& cell = row.cells[k];
      if (cell.pass.has_value() && !*cell.pass) {
        std::ostringstream os;
        os << to_string(families[k]) << " at z=" << format_number(row.z)
           << ": empirical " << format_number(row.empirical) << " exceeds bound "
           << format_number(cell.bound) << " by "
           << format_number(row.empirical - cell.bound - kSigmaSlack * row.se)
           << " beyond 3 se";
        out.push_back(os.str());
      }
    }
  }
  return out;
}

SimReport run_one_sample(const SimConfig& cfg) {
  validate(cfg);
  if (cfg.m != 0) throw DomainError("run_one_sample: m must be 0");
  const double d_true = true_ks_distance(cfg.f, cfg.g);
  const double root_n = std::sqrt(static_cast<double>(cfg.n));
  const auto statistics = run_trials(cfg.trials, cfg.workers, [&](std::size_t t) {
    const Sample x = sample(cfg.f, cfg.n, trial_seed(cfg.seed, t, 0));
    return root_n * std::abs(ks_one_sample(x, cfg.g).d - d_true);
  });
  std::vector<BoundFamily> families{BoundFamily::prop1};
  if (cfg.f == cfg.g) families.push_back(BoundFamily::dkwm);
  return tabulate(cfg, d_true, statistics, families, [&](BoundFamily family, double z) {
    return evaluate_bound(family, TailQuery{z, cfg.n, cfg.n});
  });
}

SimReport run_two_sample(const SimConfig& cfg) {
  validate(cfg);
  if (cfg.m == 0) throw DomainError("run_two_sample: m must be >= 1");
  const double d_true = true_ks_distance(cfg.f, cfg.g);
  const double nd = static_cast<double>(cfg.n);
  const double md = static_cast<double>(cfg.m);
  const double root_effective = std::sqrt(nd * md / (nd + md));
  const auto statistics = run_trials(cfg.trials, cfg.workers, [&](std::size_t t) {
    const Sample x = sample(cfg.f, cfg.n, trial_seed(cfg.seed, t, 0));
    const Sample y = sample(cfg.g, cfg.m, trial_seed(cfg.seed, t, 1));
    return root_effective * std::abs(ks_two_sample(x, y) - d_true);
  });

  std::vector<BoundFamily> families;
  if (cfg.n == cfg.m) {
    families = {BoundFamily::alpha1, BoundFamily::alpha2};
    if (cfg.f == cfg.g && cfg.n >= 4) families.push_back(BoundFamily::wei_dudley);
  } else {
    families = {BoundFamily::prop2a, BoundFamily::prop2b};
  }
  return tabulate(cfg, d_true, statistics, families, [&](BoundFamily family, double z) {
    const double arg = z_convention(family) == ZConvention::unscaled ? z / root_effective : z;
    return evaluate_bound(family, TailQuery{arg, cfg.n, cfg.m});
  });
}

SimReport run_simulation(const SimConfig& cfg) {
  return cfg.m == 0 ? run_one_sample(cfg) : run_two_sample(cfg);
}

std::string to_csv(const SimReport& report) {
  std::ostringstream os;
  os << "z,empirical,se";
  for (BoundFamily family : report.families) os << ',' << to_string(family);
  for (BoundFamily family : report.families) os << ',' << to_string(family) << "_pass";
  os << '\n';
  for (const SimRow& row : report.rows) {
    os << format_number(row.z) << ',' << format_number(row.empirical) << ','
       << format_number(row.se);
    for (const FamilyCell& cell : row.cells) os << ',' << format_number(cell.bound);
    for (const FamilyCell& cell : row.cells) {
      os << ',' << (cell.pass.has_value() ? (*cell.pass ? "1" : "0") : "na");
    }
    os << '\n';
  }
  return os.str();
}

CoverageResult coverage_check(const SimConfig& cfg, double delta, CiMethod method) {
  if (cfg.n == 0) throw DomainError("coverage_check: n must be >= 1");
  if (cfg.trials == 0) throw DomainError("coverage_check: trials must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("coverage_check: delta must lie in (0, 1)");
  const bool one_sample = method == CiMethod::prop1;
  if (one_sample != (cfg.m == 0)) {
    throw DomainError("coverage_check: prop1 needs m == 0, two-sample methods need m >= 1");
  }
  const double d_true = true_ks_distance(cfg.f, cfg.g);
  // Probe once so an unreachable delta surfaces before any sampling.
  if (!one_sample) (void)two_sample_ci(0.0, cfg.n, cfg.m, delta, method);

  const auto covered = run_trials(cfg.trials, cfg.workers, [&](std::size_t t) {
    const Sample x = sample(cfg.f, cfg.n, trial_seed(cfg.seed, t, 0));
    ConfidenceInterval ci;
    if (one_sample) {
      ci = one_sample_ci(ks_one_sample(x, cfg.g).d, cfg.n, delta);
    } else {
      const Sample y = sample(cfg.g, cfg.m, trial_seed(cfg.seed, t, 1));
      ci = two_sample_ci(ks_two_sample(x, y), cfg.n, cfg.m, delta, method);
    }
    return ci.contains(d_true) ? 1.0 : 0.0;
  });

  CoverageResult result;
  const double hits = static_cast<double>(std::count(covered.begin(), covered.end(), 1.0));
  result.coverage = hits / static_cast<double>(cfg.trials);
  result.threshold =
      (1.0 - delta) - kSigmaSlack * std::sqrt(delta * (1.0 - delta) / static_cast<double>(cfg.trials));
  result.pass = result.coverage >= result.threshold;
  return result;
}

LimitCheck kolmogorov_limit_check(const ContinuousDist& f, std::size_t n, std::size_t trials,
                                  const std::vector<double>& z_grid, std::uint64_t seed,
                                  unsigned workers) {
  if (n == 0 || trials == 0) throw DomainError("kolmogorov_limit_check: n, trials must be >= 1");
  if (z_grid.empty()) throw DomainError("kolmogorov_limit_check: z grid is empty");
  const double root_n = std::sqrt(static_cast<double>(n));
  auto statistics = run_trials(trials, workers, [&](std::size_t t) {
    return root_n * ks_one_sample(sample(f, n, trial_seed(seed, t, 0)), f).d;
  });
  const Ecdf empirical(Sample(std::move(statistics)));
  LimitCheck check;
  for (double z : z_grid) {
    const double gap = std::abs(empirical(z) - kolmogorov_L(z));
    if (gap > check.sup_distance) {
      check.sup_distance = gap;
      check.worst_z = z;
    }
  }
  return check;
}

}  // namespace ksdist
