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

#pragma once

#include <optional>
#include <string_view>

#include "cpa/angles.hpp"
#include "cpa/beamsplitter.hpp"
#include "cpa/states.hpp"

namespace cpa::tools {

/// Two-input scenario as the command line sees it. Input 2 inherits any
/// parameter left unset from input 1; the splitter defaults to the CPA one.
struct ScenarioParams {
  double alpha_mag = 1.0;
  double theta1 = 0.0;
  double xi1 = 0.0;
  double phi1 = 0.0;
  std::optional<double> beta_mag;
  std::optional<double> theta2;
  std::optional<double> xi2;
  std::optional<double> phi2;
  cd t{0.5, 0.0};
  cd r{-0.5, 0.0};

  /// Parameter names accepted by set(): alpha_mag, beta_mag, theta1, theta2,
  /// xi1, xi2, phi1, phi2, t_re, t_im, r_re, r_im, plus theta/xi/phi which
  /// set both inputs.
  static bool is_known(std::string_view name);
  void set(std::string_view name, double value);

  /// Throws InvalidArgument for |xi| > 20, |alpha|^2 > 1e9 or non-finite
  /// values.
  void validate() const;

  SqueezedCoherentState input1() const;
  SqueezedCoherentState input2() const;
  LossyBeamSplitter splitter() const;
};

}  // namespace cpa::tools
