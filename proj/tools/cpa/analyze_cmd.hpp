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

#include <nlohmann/json.hpp>

#include "cpa/errors.hpp"
#include "scenario.hpp"

namespace cpa::tools {

struct AnalyzeOptions {
  ScenarioParams scenario;
  /// Adds the Gaussian-engine output-state summary.
  bool gaussian = false;
};

/// Single-scenario absorption report. Throws Error on invalid parameters,
/// zero coherence or zero intensity input, and (with gaussian) splitters
/// that admit no unitary dilation.
nlohmann::json analyze_json(const AnalyzeOptions& opts);

/// {"error": {"kind": ..., "message": ...}}
nlohmann::json error_json(const Error& e);

}  // namespace cpa::tools
