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

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cpa/absorption.hpp"
#include "cpa/beamsplitter.hpp"
#include "cpa/states.hpp"

namespace cpa::tools {

enum class VerifyScope { All, Formulas, Gaussian, Fock };

VerifyScope parse_scope(std::string_view name);
std::string_view to_string(VerifyScope scope);

/// One cross-engine comparison. Residual checks pass when
/// max_residual <= tolerance; margin checks (a quantity that must stay
/// strictly above a floor) pass when min_margin > tolerance.
struct CheckResult {
  std::string name;
  std::vector<std::string> engines;
  std::optional<double> max_residual;
  std::optional<double> min_margin;
  double tolerance = 0.0;
  bool pass = false;
  int samples = 0;
  std::optional<double> leakage;  ///< Fock checks only
  std::optional<std::string> error;  ///< first engine error, if any
};

/// Recorded, never asserted (e.g. sensitivity to input mismatch).
struct Measurement {
  std::string name;
  nlohmann::json data;
};

struct VerifyReport {
  std::string scope;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  std::vector<Measurement> measurements;

  bool pass() const;
  nlohmann::json to_json() const;
};

/// Scaled difference |a - b| / max(1, |a|, |b|): absolute for O(1)
/// quantities, relative for large ones.
double scaled_diff(double a, double b);

/// Seeded scenario sampler shared by the verification runner and tests.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  double angle() { return uniform(0.0, 2.0 * kPi); }
  /// Uniform in log space.
  double log_uniform(double lo, double hi);

  ComplexAmplitude amplitude(double max_mag);
  SqueezeParam squeeze(double max_abs_xi);
  SqueezedCoherentState state(double max_mag, double max_abs_xi);

  /// Any passive symmetric splitter: eigenvalues t +- r drawn from the unit
  /// disk, so complex and lossy splitters are both covered.
  LossyBeamSplitter splitter();
  /// Real t, r; these always admit a unitary dilation.
  LossyBeamSplitter real_splitter();

 private:
  std::mt19937_64 rng_;
};

VerifyReport verify(VerifyScope scope, std::uint64_t seed);

}  // namespace cpa::tools
