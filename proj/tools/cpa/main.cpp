// Copyright 2026 The cpa-squeeze Authors
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

// cpa: figure sweeps, cross-engine verification and single-scenario
// analysis for coherent perfect absorption of squeezed coherent light.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "analyze_cmd.hpp"
#include "cpa/errors.hpp"
#include "sweep.hpp"
#include "verify.hpp"

namespace {

enum Exit : int { kOk = 0, kCheckFailed = 1, kInvalidInput = 2, kIoError = 3 };

int exit_for(const cpa::Error& e) {
  return e.kind() == cpa::ErrorKind::IoError ? kIoError : kInvalidInput;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw cpa::Error(cpa::ErrorKind::IoError, "cannot open " + path);
  f << text;
  f.close();
  if (!f) throw cpa::Error(cpa::ErrorKind::IoError, "failed writing " + path);
}

std::pair<std::string, double> parse_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw cpa::Error(cpa::ErrorKind::InvalidSpec,
                     "set: expected name=value, got '" + text + "'");
  }
  try {
    std::size_t used = 0;
    const std::string value = text.substr(eq + 1);
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return {text.substr(0, eq), v};
  } catch (const std::logic_error&) {
    throw cpa::Error(cpa::ErrorKind::InvalidSpec,
                     "set " + text.substr(0, eq) + ": cannot parse number");
  }
}

// Fills options of `sub` from a key=value file. An option already given on
// the command line (or one it excludes) keeps the command-line value.
void apply_config(CLI::App* sub, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw cpa::Error(cpa::ErrorKind::IoError, "cannot read config " + path);
  const auto items = CLI::ConfigTOML().from_config(f);
  for (const auto& item : items) {
    if (!item.parents.empty() || item.name == "config") {
      throw cpa::Error(cpa::ErrorKind::InvalidArgument,
                       "config: unsupported key '" + item.fullname() + "'");
    }
    // TOML keys may spell dashes as underscores (alpha_mag = alpha-mag).
    std::string flag = item.name;
    std::replace(flag.begin(), flag.end(), '_', '-');
    CLI::Option* opt = sub->get_option_no_throw("--" + flag);
    if (opt == nullptr) {
      throw cpa::Error(cpa::ErrorKind::InvalidArgument,
                       "config: unknown key '" + item.name + "' for " + sub->get_name());
    }
    bool overridden = opt->count() > 0;
    for (const CLI::Option* other : opt->get_excludes()) overridden |= other->count() > 0;
    if (overridden) continue;
    for (const auto& v : item.inputs) opt->add_result(v);
    opt->run_callback();
  }
}

struct SweepArgs {
  std::string target;
  std::string out;
  std::string format = "csv";
  std::vector<std::string> axes;
  std::vector<std::string> sets;
  std::vector<double> alpha_sq;
  unsigned threads = 0;
};

int run_sweep(const SweepArgs& a) {
  cpa::tools::SweepSpec spec;
  spec.target = cpa::tools::parse_target(a.target);
  spec.format = cpa::tools::parse_format(a.format);
  spec.out_path = a.out;
  spec.threads = a.threads;
  for (const auto& ax : a.axes) spec.axes.push_back(cpa::tools::parse_axis(ax));
  for (const auto& s : a.sets) {
    const auto [name, value] = parse_assignment(s);
    spec.fixed[name] = value;
  }
  if (!a.alpha_sq.empty()) {
    if (spec.target == cpa::tools::SweepTarget::Fig4) {
      if (a.alpha_sq.size() != 1) {
        throw cpa::Error(cpa::ErrorKind::InvalidSpec,
                         "alpha-sq: fig4 takes a single value");
      }
      spec.fixed["alpha_sq"] = a.alpha_sq.front();
    } else {
      spec.alpha_sq_values = a.alpha_sq;
    }
  }
  cpa::tools::sweep(spec);
  return kOk;
}

struct VerifyArgs {
  std::string scope = "all";
  std::uint64_t seed = 42;
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  const auto report = cpa::tools::verify(cpa::tools::parse_scope(a.scope), a.seed);
  const std::string text = report.to_json().dump(2) + "\n";
  std::cout << text;
  if (!a.out.empty()) write_text(a.out, text);
  for (const auto& c : report.checks) {
    if (!c.pass) std::cerr << "FAIL " << c.name << "\n";
  }
  return report.pass() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent perfect absorption of squeezed coherent light"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "cpa 0.1.0");

  // sweep
  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Tabulate a figure dataset or a custom grid");
  std::string sweep_config;
  sweep->add_option("--config", sweep_config, "key=value file; flags override it");
  sweep->add_option("--target", sw.target, "fig2 | fig3a | fig3b | fig4 | fig5 | custom");
  sweep->add_option("--out", sw.out, "Output file (default stdout)");
  sweep->add_option("--format", sw.format, "csv | json")->capture_default_str();
  sweep->add_option("--axis", sw.axes,
                    "Axis as name=start:stop:count; overrides a figure axis or "
                    "defines a custom one");
  sweep->add_option("--set", sw.sets, "Fixed parameter name=value (custom)");
  sweep->add_option("--alpha-sq", sw.alpha_sq,
                    "|alpha|^2: curve list for fig5, single value for fig4");
  sweep->add_option("--threads", sw.threads, "Worker threads (0 = all cores)");

  // verify
  VerifyArgs vf;
  auto* verify = app.add_subcommand("verify", "Run the seeded cross-engine checks");
  std::string verify_config;
  verify->add_option("--config", verify_config, "key=value file; flags override it");
  verify->add_option("--scope", vf.scope, "all | formulas | gaussian | fock")
      ->capture_default_str();
  verify->add_option("--seed", vf.seed, "Generator seed")->capture_default_str();
  verify->add_option("--out", vf.out, "Also write the JSON report here");

  // analyze
  cpa::tools::AnalyzeOptions an;
  auto& sc = an.scenario;
  std::optional<double> alpha_sq;
  double beta_mag = 0.0, theta2 = 0.0, xi2 = 0.0, phi2 = 0.0;
  double t_re = sc.t.real(), t_im = 0.0, r_re = sc.r.real(), r_im = 0.0;
  auto* analyze = app.add_subcommand("analyze", "Absorption report for one scenario");
  std::string analyze_config;
  analyze->add_option("--config", analyze_config, "key=value file; flags override it");
  auto* mag_opt = analyze->add_option("--alpha-mag", sc.alpha_mag, "|alpha| of input 1")
                      ->capture_default_str();
  analyze->add_option("--alpha-sq", alpha_sq, "|alpha|^2 of input 1")->excludes(mag_opt);
  analyze->add_option("--theta", sc.theta1, "Phase of alpha (rad)")->capture_default_str();
  analyze->add_option("--xi", sc.xi1, "Squeezing strength of input 1")->capture_default_str();
  analyze->add_option("--phi", sc.phi1, "Squeezing phase of input 1 (rad)")
      ->capture_default_str();
  auto* beta_opt = analyze->add_option("--beta-mag", beta_mag, "|beta| (default |alpha|)");
  auto* theta2_opt = analyze->add_option("--theta2", theta2, "Phase of beta (default theta)");
  auto* xi2_opt = analyze->add_option("--xi2", xi2, "Squeezing of input 2 (default xi)");
  auto* phi2_opt = analyze->add_option("--phi2", phi2, "Squeezing phase of input 2 (default phi)");
  analyze->add_option("--t-re", t_re, "Re t")->capture_default_str();
  analyze->add_option("--t-im", t_im, "Im t")->capture_default_str();
  analyze->add_option("--r-re", r_re, "Re r")->capture_default_str();
  analyze->add_option("--r-im", r_im, "Im r")->capture_default_str();
  analyze->add_flag("--gaussian", an.gaussian, "Add the Gaussian output-state summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidInput;
  }

  try {
    try {
      if (*sweep && !sweep_config.empty()) apply_config(sweep, sweep_config);
      if (*verify && !verify_config.empty()) apply_config(verify, verify_config);
      if (*analyze && !analyze_config.empty()) apply_config(analyze, analyze_config);
    } catch (const CLI::ParseError& e) {
      throw cpa::Error(cpa::ErrorKind::InvalidArgument, std::string("config: ") + e.what());
    }
    if (*sweep && sw.target.empty()) {
      throw cpa::Error(cpa::ErrorKind::InvalidSpec, "target: required (flag or config)");
    }
    if (*sweep) return run_sweep(sw);
    if (*verify) return run_verify(vf);

    if (alpha_sq) {
      if (!(*alpha_sq >= 0.0)) {
        throw cpa::Error(cpa::ErrorKind::InvalidArgument, "alpha-sq: must be >= 0");
      }
      sc.alpha_mag = std::sqrt(*alpha_sq);
    }
    if (beta_opt->count() > 0) sc.beta_mag = beta_mag;
    if (theta2_opt->count() > 0) sc.theta2 = theta2;
    if (xi2_opt->count() > 0) sc.xi2 = xi2;
    if (phi2_opt->count() > 0) sc.phi2 = phi2;
    sc.t = {t_re, t_im};
    sc.r = {r_re, r_im};
    try {
      std::cout << cpa::tools::analyze_json(an).dump(2) << "\n";
    } catch (const cpa::Error& e) {
      std::cout << cpa::tools::error_json(e).dump(2) << "\n";
      return exit_for(e);
    }
    return kOk;
  } catch (const cpa::Error& e) {
    std::cerr << cpa::tools::error_json(e).dump() << "\n";
    return exit_for(e);
  }
}
