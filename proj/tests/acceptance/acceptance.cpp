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

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are pinned here, next to each check.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cpa/absorption.hpp"
#include "cpa/beamsplitter.hpp"
#include "cpa/errors.hpp"
#include "cpa/fock.hpp"
#include "cpa/gaussian.hpp"
#include "cpa/states.hpp"
#include "sweep.hpp"
#include "verify.hpp"

namespace {

using namespace cpa;
using tools::Sampler;

constexpr std::uint64_t kSeed = 20260417;
constexpr int kRandomScenarios = 1000;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SqueezedCoherentState make(double mag, double theta, double xi, double phi) {
  return {ComplexAmplitude(mag, theta), SqueezeParam(xi, phi)};
}

// 1. Coherent-state CPA and the single-beam value.
Outcome coherent_cpa() {
  constexpr double kTol = 1e-12;
  const auto bs = cpa_splitter();
  double worst_pair = 0.0;
  double worst_single = 0.0;
  Sampler rng(kSeed);
  for (int i = 0; i < 100; ++i) {
    const auto a = SqueezedCoherentState::coherent(rng.amplitude(10.0));
    const auto pair = analyze(bs, a, a);
    worst_pair = std::max({worst_pair, std::abs(pair.coeff_c - 1.0), std::abs(pair.coeff_i - 1.0)});
    const auto single = analyze(bs, a, SqueezedCoherentState::vacuum());
    worst_single = std::max(
        {worst_single, std::abs(single.coeff_c - 0.5), std::abs(single.coeff_i - 0.5)});
  }
  return {worst_pair <= kTol && worst_single <= kTol,
          fmt("identical |1-A| max %.3g, single |A-1/2| max %.3g, tol %.0e", worst_pair,
              worst_single, kTol)};
}

// 2. Fidelity reformulation against analyze() for coherent inputs.
Outcome fidelity_reformulation() {
  constexpr double kTol = 1e-12;
  Sampler rng(kSeed + 2);
  double worst = 0.0;
  for (int i = 0; i < kRandomScenarios; ++i) {
    const auto bs = i % 4 == 0 ? cpa_splitter() : rng.splitter();
    const auto a = rng.amplitude(10.0);
    const auto b = rng.amplitude(10.0);
    const auto rep = analyze(bs, SqueezedCoherentState::coherent(a),
                             SqueezedCoherentState::coherent(b));
    worst = std::max(worst, std::abs(coeff_from_fidelity(bs, a, b) - rep.coeff_c));
  }
  return {worst <= kTol, fmt("max |diff| %.3g over %d scenarios, tol %.0e", worst,
                             kRandomScenarios, kTol)};
}

// 3. Coherence/intensity identity. The residual is compared relative to
// max(1, I_in): for bright inputs the absolute residual is bounded by the
// double spacing of I_in itself.
Outcome general_identity() {
  constexpr double kTol = 1e-12;
  Sampler rng(kSeed + 3);
  double worst = 0.0;
  double worst_abs = 0.0;
  for (int i = 0; i < kRandomScenarios; ++i) {
    const auto bs = rng.splitter();
    const auto rep = analyze(bs, rng.state(10.0, 3.0), rng.state(10.0, 3.0));
    const double lhs = rep.delta_i - rep.delta_c;
    const double rhs = (rep.i_in - rep.c_in) * rep.incoherent;
    worst_abs = std::max(worst_abs, std::abs(lhs - rhs));
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, rep.i_in));
  }
  return {worst < kTol, fmt("max scaled residual %.3g (absolute %.3g) over %d scenarios, tol %.0e",
                            worst, worst_abs, kRandomScenarios, kTol)};
}

// 4. Unequal squeezing: perfect absorption only on the diagonal.
Outcome equal_squeezing_required() {
  constexpr double kDiagTol = 1e-12;
  constexpr double kMargin = 1e-6;
  const auto grid = tools::linspace(-3.0, 3.0, 121);
  double diag = 0.0;
  double margin = 1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double v = coeff_c_unequal_squeezing(grid[i], grid[j]);
      if (i == j) {
        diag = std::max(diag, std::abs(v - 1.0));
      } else {
        margin = std::min(margin, 1.0 - v);
      }
    }
  }
  return {diag <= kDiagTol && margin > kMargin,
          fmt("diagonal |1-A| max %.3g (tol %.0e), off-diagonal min 1-A %.3g (> %.0e)", diag,
              kDiagTol, margin, kMargin)};
}

// 5. Closed-form slices against analyze().
Outcome closed_forms() {
  constexpr double kTol = 1e-12;
  Sampler rng(kSeed + 5);
  const auto bs = cpa_splitter();
  double equal_c = 0.0, eq23 = 0.0, e27a = 0.0, e27b = 0.0, ai = 0.0, common = 0.0;
  for (int i = 0; i < kRandomScenarios; ++i) {
    const double mag = rng.uniform(0.01, 10.0);
    const double xi1 = rng.uniform(-3.0, 3.0);
    const double xi2 = rng.uniform(-3.0, 3.0);
    const double theta = rng.angle();
    const double phi = rng.angle();

    const auto eq = analyze(bs, make(mag, theta, xi1, 0.0), make(mag, 0.0, xi1, 0.0));
    equal_c = std::max(equal_c, std::abs(coeff_c_equal_squeezing(xi1, theta) - eq.coeff_c));
    ai = std::max(ai, std::abs(coeff_i_equal_squeezing(xi1, theta, mag * mag) - eq.coeff_i));

    const auto un = analyze(bs, make(mag, 0.0, xi1, 0.0), make(mag, 0.0, xi2, 0.0));
    eq23 = std::max(eq23, std::abs(coeff_c_unequal_squeezing(xi1, xi2) - un.coeff_c));

    const auto one = analyze(bs, make(mag, 0.0, xi1, 0.0), make(mag, 0.0, 0.0, 0.0));
    e27a = std::max(e27a, std::abs(coeff_c_one_squeezed(xi1) - one.coeff_c));
    e27b = std::max(e27b, std::abs(coeff_i_one_squeezed(xi1, mag * mag) - one.coeff_i));

    const auto lossy = rng.splitter();
    const auto cp = analyze(lossy, make(mag, theta, xi1, phi), make(mag, theta, xi2, phi));
    common = std::max(common, std::abs(coeff_c_common_phase(lossy, xi1, xi2, theta, phi) -
                                       cp.coeff_c));
  }
  const double worst = std::max({equal_c, eq23, e27a, e27b, ai, common});
  return {worst <= kTol,
          fmt("max |diff|: equal %.2g, unequal %.2g, one-squeezed C %.2g, one-squeezed I %.2g, "
              "equal I %.2g, common-phase %.2g; tol %.0e",
              equal_c, eq23, e27a, e27b, ai, common, kTol)};
}

// 6. Saturation at |xi| = 20.
Outcome saturation() {
  constexpr double kTol = 1e-8;
  const double a = std::abs(coeff_c_one_squeezed(20.0) - 0.5);
  const double b = std::abs(coeff_c_one_squeezed(-20.0) - 0.5);
  const double c = std::abs(coeff_i_equal_squeezing(20.0, 0.0, 1.0) - 0.5);
  return {a <= kTol && b <= kTol && c <= kTol,
          fmt("|A-1/2|: C(+20) %.3g, C(-20) %.3g, I_eq(20, 0, 1) %.3g; tol %.0e", a, b, c, kTol)};
}

// 7. Parity of the coherence coefficient, asymmetry of the intensity one.
// Asymmetry at |alpha|^2 = 1e-3 is |g(2) - g(-2)| / max(|g(2)|, |g(-2)|) with
// g = A^I - 1/2; 1 would mean fully one-sided.
Outcome parity() {
  constexpr double kAsymmetryFloor = 0.9;
  constexpr double kSymmetryTol = 3e-5;
  double parity = 0.0;
  for (double xi : tools::linspace(-20.0, 20.0, 4001)) {
    parity = std::max(parity, std::abs(coeff_c_one_squeezed(xi) - coeff_c_one_squeezed(-xi)));
  }
  const double gp = coeff_i_one_squeezed(2.0, 1e-3) - 0.5;
  const double gm = coeff_i_one_squeezed(-2.0, 1e-3) - 0.5;
  const double asym = std::abs(gp - gm) / std::max(std::abs(gp), std::abs(gm));
  const double bright = std::abs(coeff_i_one_squeezed(2.0, 1e6) - coeff_i_one_squeezed(-2.0, 1e6));
  return {parity == 0.0 && asym > kAsymmetryFloor && bright < kSymmetryTol,
          fmt("C parity max %.3g (exact), weak-beam asymmetry %.3f (> %.1f), bright |diff| %.3g "
              "(< %.0e)",
              parity, asym, kAsymmetryFloor, bright, kSymmetryTol)};
}

// 8. Gaussian output-state theorem for identical inputs.
Outcome output_theorem() {
  constexpr double kTol = 1e-10;
  Sampler rng(kSeed + 8);
  const auto u = dilation(cpa_splitter());
  const std::vector<int> optical{0, 1};
  double means = 0.0, intensity = 0.0, defect = 0.0, purity_gap = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto s = rng.state(3.0, 2.0);
    const auto out = propagate(input_state(s, s), u);
    means = std::max(means, out.mean().head<4>().cwiseAbs().maxCoeff());
    const auto n = intensities(out);
    intensity = std::max(intensity, std::abs(n[0] + n[1] - std::pow(std::sinh(s.zeta.xi()), 2)));
    defect = std::max(defect, factorization_defect(out, ModePartition::optical_device()));
    purity_gap = std::max(purity_gap, 1.0 - purity(out, optical));
  }
  return {means <= kTol && intensity <= kTol && defect < kTol && purity_gap < kTol,
          fmt("optical |mean| %.3g, |I_opt - sinh^2| %.3g, defect %.3g, 1-purity %.3g; tol %.0e",
              means, intensity, defect, purity_gap, kTol)};
}

// 9. Fock-space oracle against the Gaussian engine and the predicted state.
Outcome fock_oracle() {
  constexpr double kTol = 1e-6;
  constexpr int kCutoff = 20;
  Sampler rng(kSeed + 9);
  std::vector<SqueezedCoherentState> cases{make(0.8, 0.0, 0.3, 0.0), make(0.8, 1.1, -0.3, 2.0)};
  for (int i = 0; i < 2; ++i) {
    cases.push_back({rng.amplitude(0.8), SqueezeParam(rng.uniform(-0.3, 0.3), rng.angle())});
  }
  const auto bs = cpa_splitter();
  const std::vector<int> optical{0, 1};
  double infidelity = 0.0, moments = 0.0, leakage = 0.0;
  int min_cutoff = 1 << 30;
  for (const auto& s : cases) {
    const auto run = fock::run_dilation(bs, s, s, fock::Options{kCutoff, fock::kMaxCutoff,
                                                                 fock::kDefaultTailTolerance});
    min_cutoff = std::min(min_cutoff, run.output.cutoff());
    leakage = std::max(leakage, run.leakage + run.input_deficit);
    const auto rho = fock::reduced_density(run.output, optical);
    const auto target = fock::cpa_optical_output(s.zeta, run.output.cutoff());
    infidelity = std::max(infidelity, 1.0 - fock::state_fidelity(rho, target));
    const auto q = fock::to_quadratures(run.moments);
    const auto g = propagate(input_state(s, s), dilation(bs));
    moments = std::max({moments, (q.mean - g.mean()).cwiseAbs().maxCoeff(),
                        (q.cov - g.cov()).cwiseAbs().maxCoeff()});
  }
  return {min_cutoff >= kCutoff && infidelity < kTol && moments <= kTol,
          fmt("1-fidelity max %.3g, moment |diff| max %.3g (tol %.0e), cutoff >= %d, "
              "truncation loss %.3g",
              infidelity, moments, kTol, min_cutoff, leakage)};
}

// 10. Half of the squeezing leaves in b-, half stays in h+.
Outcome half_squeezing() {
  constexpr double kTol = 1e-10;
  Sampler rng(kSeed + 10);
  const auto u = dilation(cpa_splitter());
  const Eigen::Matrix4cd basis = superposition_basis();
  const Eigen::Matrix2d vac = 0.5 * Eigen::Matrix2d::Identity();
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    // phi = 0 puts the squeezed quadrature on x, so the variances read
    // directly as (e^{-2xi}/2, e^{2xi}/2); random phi checks the spectrum.
    const bool aligned = i % 2 == 0;
    const auto s = make(rng.uniform(0.0, 3.0), rng.angle(), rng.uniform(-2.0, 2.0),
                        aligned ? 0.0 : rng.angle());
    const auto sup = transform_modes(propagate(input_state(s, s), u), basis);
    const double lo = 0.5 * std::exp(-2.0 * s.zeta.xi());
    const double hi = 0.5 * std::exp(2.0 * s.zeta.xi());
    for (int mode : {1, 2}) {
      const Eigen::Matrix2d c = sup.mode(mode).covariance;
      if (aligned) {
        worst = std::max({worst, std::abs(c(0, 0) - lo), std::abs(c(1, 1) - hi), std::abs(c(0, 1))});
      } else {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(c);
        worst = std::max({worst, std::abs(es.eigenvalues()(0) - std::min(lo, hi)),
                          std::abs(es.eigenvalues()(1) - std::max(lo, hi))});
      }
    }
    for (int mode : {0, 3}) {
      worst = std::max(worst, (sup.mode(mode).covariance - vac).cwiseAbs().maxCoeff());
    }
  }
  return {worst <= kTol, fmt("max variance error %.3g over 200 scenarios, tol %.0e", worst, kTol)};
}

// 11. Figure data: golden structure plus byte-identical reruns.
std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome figures() {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("cpa_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::vector<std::string> failures;
  auto require = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };

  std::map<std::string, tools::Table> tables;
  for (auto target : {tools::SweepTarget::Fig2, tools::SweepTarget::Fig3a,
                      tools::SweepTarget::Fig3b, tools::SweepTarget::Fig4,
                      tools::SweepTarget::Fig5}) {
    const std::string name(tools::to_string(target));
    for (auto format : {tools::OutputFormat::Csv, tools::OutputFormat::Json}) {
      const std::string ext = format == tools::OutputFormat::Csv ? ".csv" : ".json";
      tools::SweepSpec spec;
      spec.target = target;
      spec.format = format;
      spec.threads = 1;
      spec.out_path = (dir / (name + "_a" + ext)).string();
      tables[name] = tools::sweep(spec);
      spec.threads = 4;
      spec.out_path = (dir / (name + "_b" + ext)).string();
      tools::sweep(spec);
      const std::string a = slurp(dir / (name + "_a" + ext));
      require(!a.empty() && a == slurp(dir / (name + "_b" + ext)), name + ext + " rerun differs");
    }
  }
  std::filesystem::remove_all(dir);

  // Every value is the closed form evaluated at the row's coordinates.
  for (const auto& r : tables["fig2"].rows) {
    require(r[2] == coeff_c_equal_squeezing(r[0], r[1]), "fig2 value != closed form");
  }
  for (const auto& r : tables["fig3a"].rows) {
    require(r[2] == coeff_c_unequal_squeezing(r[0], r[1]), "fig3a value != closed form");
  }
  for (const auto& r : tables["fig3b"].rows) {
    require(r[1] == coeff_c_one_squeezed(r[0]), "fig3b value != closed form");
  }
  for (const auto& r : tables["fig4"].rows) {
    require(r[2] == coeff_i_equal_squeezing(r[0], r[1], 1.0), "fig4 value != closed form");
  }
  for (const auto& r : tables["fig5"].rows) {
    require(r[2] == coeff_i_one_squeezed(r[1], r[0]), "fig5 value != closed form");
  }

  // fig2 / fig4: 101 x 101 over xi in [-5, 5], theta in [0, 2 pi], values in [0, 1].
  for (const char* name : {"fig2", "fig4"}) {
    const auto& t = tables[name];
    require(t.rows.size() == 101 * 101, std::string(name) + " grid size");
    for (const auto& r : t.rows) require(r[2] >= 0.0 && r[2] <= 1.0, std::string(name) + " range");
    require(t.rows.front()[0] == -5.0 && t.rows.back()[0] == 5.0, std::string(name) + " xi range");
    require(t.rows.front()[1] == 0.0 && t.rows.back()[1] == 2.0 * kPi,
            std::string(name) + " theta range");
  }
  double fig2_sat = 0.0;
  for (const auto& r : tables["fig2"].rows) {
    if (r[1] == 0.0) require(r[2] == 1.0, "fig2 theta=0 column not 1");
    if (r[0] == 5.0 && std::abs(std::sin(r[1])) > 0.1) {
      fig2_sat = std::max(fig2_sat, std::abs(r[2] - 0.5));
    }
  }
  require(fig2_sat < 1e-6, fmt("fig2 xi=5 saturation %.3g", fig2_sat));
  for (const auto& r : tables["fig4"].rows) {
    if (r[0] == 0.0 && r[1] == 0.0) require(r[2] == 1.0, "fig4 origin not 1");
  }

  // fig3a: symmetric, 1 exactly on the diagonal and below 1 elsewhere.
  const auto& f3a = tables["fig3a"].rows;
  require(f3a.size() == 121 * 121, "fig3a grid size");
  for (std::size_t i = 0; i < 121; ++i) {
    for (std::size_t j = 0; j < 121; ++j) {
      const double v = f3a[i * 121 + j][2];
      require(v == f3a[j * 121 + i][2], "fig3a not symmetric");
      require(i == j ? std::abs(v - 1.0) <= 1e-12 : v < 1.0 - 1e-6, "fig3a diagonal structure");
    }
  }

  // fig3b: even in xi, 1 at xi = 0, falling towards 1/2.
  const auto& f3b = tables["fig3b"].rows;
  require(f3b.size() == 501, "fig3b size");
  for (std::size_t i = 0; i < f3b.size(); ++i) {
    require(f3b[i][1] == f3b[f3b.size() - 1 - i][1], "fig3b not symmetric");
    if (i > 0 && i <= 250) require(f3b[i][1] > f3b[i - 1][1], "fig3b not rising to xi=0");
    require(f3b[i][1] > 0.5 && f3b[i][1] <= 1.0, "fig3b range");
  }
  require(f3b[250][0] == 0.0 && f3b[250][1] == 1.0, "fig3b xi=0 value");

  // fig5: asymmetric for a weak beam, symmetric within 3e-5 at 1e6 photons.
  const auto& f5 = tables["fig5"].rows;
  require(f5.size() == 4 * 501, "fig5 size");
  auto at = [&](double alpha_sq, double xi) {
    for (const auto& r : f5) {
      if (r[0] == alpha_sq && std::abs(r[1] - xi) < 1e-12) return r[2];
    }
    return std::nan("");
  };
  // Weak-beam asymmetry relative to the offset from 1/2 (see criterion 7).
  const double wp = at(1e-3, 2.0) - 0.5;
  const double wm = at(1e-3, -2.0) - 0.5;
  const double weak = std::abs(wp - wm) / std::max(std::abs(wp), std::abs(wm));
  const double bright = std::abs(at(1e6, 2.0) - at(1e6, -2.0));
  require(weak > 0.9, fmt("fig5 weak-beam asymmetry %.3g", weak));
  require(bright < 3e-5, fmt("fig5 bright-beam asymmetry %.3g", bright));
  for (double a : {1e-3, 1.0, 1e3, 1e6}) require(at(a, 0.0) == 1.0, "fig5 xi=0 value");
  for (const auto& r : f5) {
    if (r[1] != 0.0) require(r[2] < 1.0 && r[2] > 0.0, "fig5 range");
  }

  std::string detail = fmt("5 targets x 2 formats rerun byte-identical; fig2 xi=5 |A-1/2| %.3g, "
                           "fig5 weak %.3f, bright %.3g",
                           fig2_sat, weak, bright);
  if (!failures.empty()) detail += "; first failure: " + failures.front();
  return {failures.empty(), detail};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "coherent-state CPA and single beam", coherent_cpa},
      {2, "fidelity reformulation", fidelity_reformulation},
      {3, "coherence/intensity identity", general_identity},
      {4, "equal squeezing required", equal_squeezing_required},
      {5, "closed forms agree with analyze", closed_forms},
      {6, "saturation limits", saturation},
      {7, "parity and asymmetry", parity},
      {8, "Gaussian output-state theorem", output_theorem},
      {9, "Fock oracle confirmation", fock_oracle},
      {10, "half-squeezing structure", half_squeezing},
      {11, "figure regeneration", figures},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
