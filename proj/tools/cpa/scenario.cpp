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

#include "scenario.hpp"

#include <array>
#include <cmath>
#include <string>

#include "cpa/errors.hpp"
#include "sweep.hpp"

namespace cpa::tools {

namespace {

constexpr std::array<std::string_view, 15> kNames = {
    "alpha_mag", "beta_mag", "theta1", "theta2", "xi1",  "xi2",   "phi1", "phi2",
    "t_re",      "t_im",     "r_re",   "r_im",   "theta", "xi",   "phi"};

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorKind::InvalidArgument, what);
}

void check_xi(double xi, const char* name) {
  if (!std::isfinite(xi) || std::abs(xi) > kMaxAbsXi) {
    bad(std::string(name) + ": |xi| must be finite and <= 20");
  }
}

void check_mag(double m, const char* name) {
  if (!std::isfinite(m) || m < 0.0 || m * m > kMaxAlphaSq) {
    bad(std::string(name) + ": magnitude must be in [0, sqrt(1e9)]");
  }
}

void check_finite(double v, const char* name) {
  if (!std::isfinite(v)) bad(std::string(name) + ": must be finite");
}

}  // namespace

bool ScenarioParams::is_known(std::string_view name) {
  for (auto n : kNames) {
    if (n == name) return true;
  }
  return false;
}

void ScenarioParams::set(std::string_view name, double value) {
  if (name == "alpha_mag") alpha_mag = value;
  else if (name == "beta_mag") beta_mag = value;
  else if (name == "theta1") theta1 = value;
  else if (name == "theta2") theta2 = value;
  else if (name == "xi1") xi1 = value;
  else if (name == "xi2") xi2 = value;
  else if (name == "phi1") phi1 = value;
  else if (name == "phi2") phi2 = value;
  else if (name == "t_re") t.real(value);
  else if (name == "t_im") t.imag(value);
  else if (name == "r_re") r.real(value);
  else if (name == "r_im") r.imag(value);
  else if (name == "theta") theta1 = value, theta2 = value;
  else if (name == "xi") xi1 = value, xi2 = value;
  else if (name == "phi") phi1 = value, phi2 = value;
  else bad("unknown scenario parameter '" + std::string(name) + "'");
}

void ScenarioParams::validate() const {
  check_mag(alpha_mag, "alpha-mag");
  check_mag(beta_mag.value_or(alpha_mag), "beta-mag");
  check_xi(xi1, "xi");
  check_xi(xi2.value_or(xi1), "xi2");
  check_finite(theta1, "theta");
  check_finite(theta2.value_or(theta1), "theta2");
  check_finite(phi1, "phi");
  check_finite(phi2.value_or(phi1), "phi2");
  check_finite(t.real(), "t-re");
  check_finite(t.imag(), "t-im");
  check_finite(r.real(), "r-re");
  check_finite(r.imag(), "r-im");
}

SqueezedCoherentState ScenarioParams::input1() const {
  validate();
  return {ComplexAmplitude(alpha_mag, theta1), SqueezeParam(xi1, phi1)};
}

SqueezedCoherentState ScenarioParams::input2() const {
  validate();
  return {ComplexAmplitude(beta_mag.value_or(alpha_mag), theta2.value_or(theta1)),
          SqueezeParam(xi2.value_or(xi1), phi2.value_or(phi1))};
}

LossyBeamSplitter ScenarioParams::splitter() const {
  validate();
  return LossyBeamSplitter::create(t, r);
}

}  // namespace cpa::tools
