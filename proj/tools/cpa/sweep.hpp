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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cpa::tools {

enum class SweepTarget { Fig2, Fig3a, Fig3b, Fig4, Fig5, Custom };
enum class OutputFormat { Csv, Json };

SweepTarget parse_target(std::string_view name);
std::string_view to_string(SweepTarget target);
OutputFormat parse_format(std::string_view name);

/// Parameter limits accepted anywhere in a sweep or scenario.
inline constexpr double kMaxAbsXi = 20.0;
inline constexpr double kMaxAlphaSq = 1e9;
inline constexpr long long kMaxGridPoints = 10'000'000;

struct Axis {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
};

/// Parses "name=start:stop:count".
Axis parse_axis(std::string_view text);

struct SweepSpec {
  SweepTarget target = SweepTarget::Fig2;
  /// Overrides a figure's default axis of the same name; for Custom these
  /// are the swept scenario parameters (at most two).
  std::vector<Axis> axes;
  /// Fixed scenario parameters (Custom) or alpha_sq (Fig4).
  std::map<std::string, double> fixed;
  /// |alpha|^2 curves for Fig5; empty means {1e-3, 1, 1e3, 1e6}.
  std::vector<double> alpha_sq_values;
  std::string out_path;  ///< empty writes to stdout
  OutputFormat format = OutputFormat::Csv;
  unsigned threads = 0;  ///< 0 picks hardware concurrency
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// count points from start to stop. Built around the midpoint so a range
/// symmetric about zero yields an exactly antisymmetric grid.
std::vector<double> linspace(double start, double stop, int count);

/// Axes a target actually sweeps, after applying overrides in spec.axes.
std::vector<Axis> resolved_axes(const SweepSpec& spec);

/// Throws Error(InvalidSpec) naming the offending field.
void validate(const SweepSpec& spec);

/// Evaluates the grid (row-major over axes) on a worker pool. Values come
/// straight from the closed-form operations (figures) or analyze()
/// (custom); row order is independent of scheduling.
Table run_sweep(const SweepSpec& spec);

std::string format_csv(const Table& table);
std::string format_json(const Table& table, const SweepSpec& spec);

/// run_sweep + formatting + writing. Throws Error(IoError) when the output
/// cannot be written.
Table sweep(const SweepSpec& spec);

}  // namespace cpa::tools
