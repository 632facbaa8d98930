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

#include "ksdist/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "ksdist/bounds.hpp"
#include "ksdist/distributions.hpp"
#include "ksdist/ecdf.hpp"
#include "ksdist/errors.hpp"
#include "ksdist/format.hpp"
#include "ksdist/inference.hpp"
#include "ksdist/montecarlo.hpp"
#include "ksdist/oracle.hpp"

namespace ksdist::cli {
namespace {

// Raised for argument combinations CLI11 cannot express.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const char* flag(bool value) { return value ? "true" : "false"; }

void print_ci(std::ostream& out, std::string_view label, const ConfidenceInterval& ci) {
  out << label << ": [" << format_number(ci.lo) << ", " << format_number(ci.hi)
      << "] half_width " << format_number(ci.half_width) << " level "
      << format_number(ci.level) << " (" << to_string(ci.method) << ")\n";
}

// --- ks ---------------------------------------------------------------------

struct KsArgs {
  std::vector<std::string> files;
  std::string dist;
  double delta = 0.05;
  bool csv = false;
};

int cmd_ks(const KsArgs& args, std::ostream& out, std::ostream& err) {
  const bool one_sample = args.files.size() == 1 && !args.dist.empty();
  const bool two_sample = args.files.size() == 2 && args.dist.empty();
  if (!one_sample && !two_sample) {
    throw UsageError("ks: give one sample file with --dist, or two sample files");
  }

  if (one_sample) {
    const ContinuousDist g = ContinuousDist::parse(args.dist);
    const Sample x = read_sample_file(args.files[0]);
    const OneSampleReport r = one_sample_report(x, g, args.delta);
    if (args.csv) {
      out << "n,d,sup_plus,sup_minus,p_asymptotic,p_dkwm_bound,delta,ci_method,ci_lo,ci_hi,"
             "ci_half_width\n";
      out << r.n << ',' << format_number(r.stats.d) << ',' << format_number(r.stats.sup_plus)
          << ',' << format_number(r.stats.sup_minus) << ',' << format_number(r.p_asymptotic)
          << ',' << format_number(r.p_dkwm_bound) << ',' << format_number(args.delta) << ','
          << to_string(r.ci.method) << ',' << format_number(r.ci.lo) << ','
          << format_number(r.ci.hi) << ',' << format_number(r.ci.half_width) << '\n';
    } else {
      out << "one-sample KS against " << g.name() << '\n';
      out << "n: " << r.n << '\n';
      out << "d: " << format_number(r.stats.d) << '\n';
      out << "sup_plus: " << format_number(r.stats.sup_plus) << '\n';
      out << "sup_minus: " << format_number(r.stats.sup_minus) << '\n';
      out << "p_asymptotic: " << format_number(r.p_asymptotic) << '\n';
      out << "p_dkwm_bound: " << format_number(r.p_dkwm_bound) << '\n';
      print_ci(out, "ci", r.ci);
    }
    return kSuccess;
  }

  const Sample x = read_sample_file(args.files[0]);
  const Sample y = read_sample_file(args.files[1]);
  const TwoSampleReport r = two_sample_report(x, y, args.delta);
  if (args.csv) {
    const double wd_c = r.wei_dudley ? r.wei_dudley->constant : std::nan("");
    const double wd_p = r.wei_dudley ? r.wei_dudley->p_bound : std::nan("");
    out << "n,m,d,p_asymptotic,wd_constant,wd_p_bound,delta,ci_prop2a_lo,ci_prop2a_hi,"
           "ci_prop2b_lo,ci_prop2b_hi,ci_best_lo,ci_best_hi\n";
    out << r.n << ',' << r.m << ',' << format_number(r.d) << ','
        << format_number(r.p_asymptotic) << ',' << format_number(wd_c) << ','
        << format_number(wd_p) << ',' << format_number(args.delta) << ','
        << format_number(r.ci_prop2a.lo) << ',' << format_number(r.ci_prop2a.hi) << ','
        << format_number(r.ci_prop2b.lo) << ',' << format_number(r.ci_prop2b.hi) << ','
        << format_number(r.ci_best.lo) << ',' << format_number(r.ci_best.hi) << '\n';
  } else {
    out << "two-sample KS\n";
    out << "n: " << r.n << '\n';
    out << "m: " << r.m << '\n';
    out << "d: " << format_number(r.d) << '\n';
    out << "p_asymptotic: " << format_number(r.p_asymptotic) << '\n';
    if (r.wei_dudley) {
      out << "p_wei_dudley_bound: " << format_number(r.wei_dudley->p_bound) << " (C = "
          << format_number(r.wei_dudley->constant) << ")\n";
    } else {
      out << "p_wei_dudley_bound: omitted (" << r.wei_dudley_omitted << ")\n";
    }
    print_ci(out, "ci_prop2a", r.ci_prop2a);
    print_ci(out, "ci_prop2b", r.ci_prop2b);
    print_ci(out, "ci_best", r.ci_best);
  }
  if (!r.wei_dudley) err << "note: Wei-Dudley bound omitted: " << r.wei_dudley_omitted << '\n';
  return kSuccess;
}

// --- bound / invert ---------------------------------------------------------

struct BoundArgs {
  std::string family;
  double z = 0.0;
  double delta = 0.0;
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
};

BoundFamily require_family(const std::string& name) {
  const auto family = parse_bound_family(name);
  if (!family) {
    throw UsageError("unknown family '" + name +
                     "' (expected dkwm, wd, prop1, prop2a, alpha1, prop2b, alpha2)");
  }
  return *family;
}

// Resolves (n, m) for a family, insisting on the flags it needs.
std::pair<std::size_t, std::size_t> sizes_for(BoundFamily family, const BoundArgs& args) {
  switch (family) {
    case BoundFamily::wei_dudley:
      if (!args.n) throw UsageError("family wd needs --n");
      return {*args.n, args.m.value_or(*args.n)};
    case BoundFamily::prop2a:
    case BoundFamily::prop2b:
      if (!args.n || !args.m) {
        throw UsageError("family " + std::string(to_string(family)) + " needs --n and --m");
      }
      return {*args.n, *args.m};
    default:
      return {args.n.value_or(1), args.m.value_or(1)};
  }
}

const char* convention_name(BoundFamily family) {
  return z_convention(family) == ZConvention::scaled ? "scaled" : "unscaled";
}

int cmd_bound(const BoundArgs& args, std::ostream& out) {
  const BoundFamily family = require_family(args.family);
  const auto [n, m] = sizes_for(family, args);
  const TailBoundResult r = evaluate_bound(family, TailQuery{args.z, n, m});
  out << "family: " << to_string(family) << '\n';
  out << "z: " << format_number(args.z) << " (" << convention_name(family) << ")\n";
  out << "raw: " << format_number(r.raw) << '\n';
  out << "clipped: " << format_number(r.clipped) << '\n';
  out << "valid: " << flag(r.valid) << '\n';
  out << "useful: " << flag(r.useful) << '\n';
  return kSuccess;
}

int cmd_invert(const BoundArgs& args, std::ostream& out) {
  const BoundFamily family = require_family(args.family);
  const auto [n, m] = sizes_for(family, args);
  const TailFunction bound = TailFunction::for_family(family, n, m);
  const double z = invert_tail(bound, args.delta);
  out << "family: " << to_string(family) << '\n';
  out << "delta: " << format_number(args.delta) << '\n';
  out << "z: " << format_number(z) << " (" << convention_name(family) << ")\n";
  out << "bound_at_z: " << format_number(bound(z).raw) << '\n';
  return kSuccess;
}

// --- ci -----------------------------------------------------------------------

struct CiArgs {
  double d = 0.0;
  std::size_t n = 0;
  std::optional<std::size_t> m;
  double delta = 0.05;
  std::string method;
};

int cmd_ci(const CiArgs& args, std::ostream& out) {
  ConfidenceInterval ci;
  if (!args.m) {
    if (!args.method.empty() && args.method != "prop1") {
      throw UsageError("one-sample intervals use --method prop1");
    }
    ci = one_sample_ci(args.d, args.n, args.delta);
  } else {
    const auto method = parse_ci_method(args.method.empty() ? "best_of_2a_2b" : args.method);
    if (!method) throw UsageError("unknown method '" + args.method + "'");
    ci = two_sample_ci(args.d, args.n, *args.m, args.delta, *method);
  }
  out << "method: " << to_string(ci.method) << '\n';
  out << "center: " << format_number(ci.center) << '\n';
  out << "half_width: " << format_number(ci.half_width) << '\n';
  out << "lo: " << format_number(ci.lo) << '\n';
  out << "hi: " << format_number(ci.hi) << '\n';
  out << "level: " << format_number(ci.level) << '\n';
  return kSuccess;
}

// --- verify -------------------------------------------------------------------

GridPoint parse_grid_cell(const std::string& spec) {
  std::map<std::string, std::string> fields;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("malformed grid cell '" + spec + "'");
    const std::string key = item.substr(0, eq);
    if (key != "n" && key != "m" && key != "z") {
      throw UsageError("unknown grid key '" + key + "' in '" + spec + "'");
    }
    if (!fields.emplace(key, item.substr(eq + 1)).second) {
      throw UsageError("duplicate grid key '" + key + "' in '" + spec + "'");
    }
  }
  if (fields.size() != 3) throw UsageError("grid cell needs n=..,m=..,z=.. : '" + spec + "'");

  const auto parse_size = [&](const std::string& text) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
      throw UsageError("bad sample size '" + text + "' in '" + spec + "'");
    }
    return value;
  };
  const std::string& z_text = fields["z"];
  double z = 0.0;
  const auto [ptr, ec] = std::from_chars(z_text.data(), z_text.data() + z_text.size(), z);
  if (ec != std::errc() || ptr != z_text.data() + z_text.size() || !std::isfinite(z)) {
    throw UsageError("bad z '" + z_text + "' in '" + spec + "'");
  }
  return {parse_size(fields["n"]), parse_size(fields["m"]), z};
}

struct VerifyArgs {
  std::vector<std::string> grid;
  double abs_tol = 1e-8;
  int max_subdivisions = 20;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  std::vector<GridPoint> grid;
  if (args.grid.empty()) {
    grid = default_verify_grid();
  } else {
    for (const auto& spec : args.grid) grid.push_back(parse_grid_cell(spec));
  }
  QuadratureConfig cfg;
  cfg.abs_tol = args.abs_tol;
  cfg.max_subdivisions = args.max_subdivisions;

  out << "n,m,z,one_minus_omega1,prop2a,gap_2a,min_1_2_minus_2alpha3,prop2b,gap_2b,pass,"
         "one_sided_condition\n";
  bool all_pass = true;
  bool converged = true;
  for (const GridPoint& p : grid) {
    try {
      const VerifyCell c = verify_cell(p.n, p.m, p.z, cfg);
      const bool pass = c.pass_2a && c.pass_2b;
      all_pass = all_pass && pass;
      out << c.n << ',' << c.m << ',' << format_number(c.z) << ','
          << format_number(c.omega1_complement) << ',' << format_number(c.prop2a_raw) << ','
          << format_number(c.gap_2a) << ',' << format_number(c.alpha3_bound) << ','
          << format_number(c.prop2b_raw) << ',' << format_number(c.gap_2b) << ','
          << (pass ? "pass" : "fail") << ',' << (c.one_sided_condition ? "holds" : "fails")
          << '\n';
      if (!c.one_sided_condition) {
        err << "note: n=" << c.n << " m=" << c.m << " z=" << format_number(c.z)
            << ": z < 1.0841 k^(-2/3) for some sample size k\n";
      }
    } catch (const ConvergenceError& e) {
      converged = false;
      out << p.n << ',' << p.m << ',' << format_number(p.z)
          << ",nan,nan,nan,nan,nan,nan,nonconverged,na\n";
      err << "n=" << p.n << " m=" << p.m << " z=" << format_number(p.z) << ": " << e.what()
          << '\n';
    }
  }
  if (!converged) return kNotConverged;
  return all_pass ? kSuccess : kCheckFailed;
}

// --- simulate -------------------------------------------------------------------

struct SimulateArgs {
  std::string f;
  std::string g;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  double zmin = 0.5;
  double zmax = 2.5;
  std::size_t zsteps = 21;
  std::string out_path;
  unsigned workers = 0;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  if (args.zsteps > 1 && !(args.zmax > args.zmin)) throw UsageError("--zmax must exceed --zmin");
  std::vector<double> grid;
  for (std::size_t i = 0; i < args.zsteps; ++i) {
    const double t = args.zsteps == 1 ? 0.0 : static_cast<double>(i) / (args.zsteps - 1);
    grid.push_back(args.zmin + t * (args.zmax - args.zmin));
  }
  SimConfig cfg{
      .f = ContinuousDist::parse(args.f),
      .g = ContinuousDist::parse(args.g),
      .n = args.n,
      .m = args.m,
      .trials = args.trials,
      .z_grid = std::move(grid),
      .seed = args.seed,
      .workers = args.workers,
  };
  const SimReport report = run_simulation(cfg);
  const std::string csv = to_csv(report);
  if (args.out_path.empty()) {
    out << csv;
  } else {
    std::ofstream file(args.out_path);
    if (!file) throw IngestError("cannot write '" + args.out_path + "'", 0);
    file << csv;
  }
  err << "d_true: " << format_number(report.d_true) << '\n';
  for (const auto& failure : report.failures()) err << "FAIL " << failure << '\n';
  return report.all_pass() ? kSuccess : kCheckFailed;
}

// --- figure ---------------------------------------------------------------------

struct FigureArgs {
  double zmax = 3.0;
  double step = 0.01;
};

int cmd_figure(const FigureArgs& args, std::ostream& out) {
  if (!(args.step > 0.0) || !(args.zmax >= 0.0)) throw UsageError("need --step > 0, --zmax >= 0");
  const double edge = std::sqrt(std::log(2.0));
  std::vector<double> zs;
  const auto steps = static_cast<std::size_t>(std::floor(args.zmax / args.step + 1e-9));
  for (std::size_t k = 0; k <= steps; ++k) zs.push_back(static_cast<double>(k) * args.step);
  if (edge <= args.zmax) {
    zs.insert(std::lower_bound(zs.begin(), zs.end(), edge), edge);
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
  }
  const double nan = std::nan("");
  out << "z,L,two_exp,alpha1,alpha2\n";
  for (double z : zs) {
    const double l = z > 0.0 ? kolmogorov_L(z) : 0.0;
    const double two_exp = dkwm_tail(ScaledZ{z}).raw;
    const double a1 = z >= edge ? alpha1(ScaledZ{z}).raw : nan;
    const double a2 = z >= edge ? alpha2(ScaledZ{z}).raw : nan;
    out << format_number(z) << ',' << format_number(l) << ',' << format_number(two_exp) << ','
        << format_number(a1) << ',' << format_number(a2) << '\n';
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kolmogorov-Smirnov distance estimation with finite-sample error bounds",
               "ksdist"};
  app.require_subcommand(1);

  KsArgs ks;
  auto* ks_cmd = app.add_subcommand("ks", "KS statistics, p-values and intervals for sample files");
  ks_cmd->add_option("files", ks.files, "one or two sample files")->required()->expected(1, 2);
  ks_cmd->add_option("--dist", ks.dist, "reference distribution, e.g. normal:0,1");
  ks_cmd->add_option("--delta", ks.delta, "1 - confidence level")->check(CLI::Range(0.0, 1.0));
  ks_cmd->add_flag("--csv", ks.csv, "machine-readable output");

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "evaluate a tail bound");
  bound_cmd->add_option("--family", bound.family, "dkwm|wd|prop1|prop2a|alpha1|prop2b|alpha2")
      ->required();
  bound_cmd->add_option("--z", bound.z, "deviation threshold")->required()->check(
      CLI::NonNegativeNumber);
  bound_cmd->add_option("--n", bound.n, "first sample size")->check(CLI::PositiveNumber);
  bound_cmd->add_option("--m", bound.m, "second sample size")->check(CLI::PositiveNumber);

  BoundArgs invert;
  auto* invert_cmd = app.add_subcommand("invert", "smallest z with bound(z) <= delta");
  invert_cmd->add_option("--family", invert.family, "dkwm|wd|prop1|prop2a|alpha1|prop2b|alpha2")
      ->required();
  invert_cmd->add_option("--delta", invert.delta, "target tail probability")->required();
  invert_cmd->add_option("--n", invert.n, "first sample size")->check(CLI::PositiveNumber);
  invert_cmd->add_option("--m", invert.m, "second sample size")->check(CLI::PositiveNumber);

  CiArgs ci;
  auto* ci_cmd = app.add_subcommand("ci", "confidence interval for d(F,G) from an observed distance");
  ci_cmd->add_option("--d", ci.d, "observed KS distance")->required();
  ci_cmd->add_option("--n", ci.n, "first sample size")->required()->check(CLI::PositiveNumber);
  ci_cmd->add_option("--m", ci.m, "second sample size (two-sample)")->check(CLI::PositiveNumber);
  ci_cmd->add_option("--delta", ci.delta, "1 - confidence level");
  ci_cmd->add_option("--method", ci.method, "prop1|prop2a|prop2b|best_of_2a_2b");

  VerifyArgs verify;
  auto* verify_cmd =
      app.add_subcommand("verify", "check closed-form two-sample bounds against quadrature");
  verify_cmd->add_option("--grid", verify.grid, "cell n=..,m=..,z=.. (repeatable)");
  verify_cmd->add_option("--abs-tol", verify.abs_tol, "quadrature tolerance")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--max-subdivisions", verify.max_subdivisions, "refinement depth")
      ->check(CLI::NonNegativeNumber);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo check of the tail bounds");
  sim_cmd->add_option("--f", sim.f, "distribution of the first sample")->required();
  sim_cmd->add_option("--g", sim.g, "distribution of the second sample / reference")->required();
  sim_cmd->add_option("--n", sim.n, "first sample size")->required()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--m", sim.m, "second sample size; 0 for one-sample mode");
  sim_cmd->add_option("--trials", sim.trials, "number of trials")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim.seed, "master seed");
  sim_cmd->add_option("--zmin", sim.zmin, "smallest scaled z")->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--zmax", sim.zmax, "largest scaled z")->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--zsteps", sim.zsteps, "grid points")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--out", sim.out_path, "write CSV here instead of stdout");
  sim_cmd->add_option("--workers", sim.workers, "threads (0 = all cores)");

  FigureArgs figure;
  auto* figure_cmd = app.add_subcommand("figure", "CSV of L(z), 2exp(-2z^2), alpha1, alpha2");
  figure_cmd->add_option("--zmax", figure.zmax, "largest z");
  figure_cmd->add_option("--step", figure.step, "grid spacing");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("ksdist");

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (*ks_cmd) return cmd_ks(ks, out, err);
    if (*bound_cmd) return cmd_bound(bound, out);
    if (*invert_cmd) return cmd_invert(invert, out);
    if (*ci_cmd) return cmd_ci(ci, out);
    if (*verify_cmd) return cmd_verify(verify, out, err);
    if (*sim_cmd) return cmd_simulate(sim, out, err);
    if (*figure_cmd) return cmd_figure(figure, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kInputError;
  } catch (const IngestError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const ConvergenceError& e) {
    err << "not converged: " << e.what() << '\n';
    return kNotConverged;
  } catch (const std::logic_error& e) {
    // DomainError, UnsupportedError and UnreachableError all land here.
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace ksdist::cli
