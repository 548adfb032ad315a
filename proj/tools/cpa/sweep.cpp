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

#include "sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "cpa/absorption.hpp"
#include "cpa/errors.hpp"
#include "scenario.hpp"

namespace cpa::tools {

namespace {

[[noreturn]] void bad_spec(const std::string& what) {
  throw Error(ErrorKind::InvalidSpec, what);
}

double parse_double(std::string_view s, const std::string& field) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    bad_spec(field + ": cannot parse number '" + std::string(s) + "'");
  }
  return v;
}

struct TargetInfo {
  std::vector<Axis> axes;
  std::string value_column;
};

TargetInfo defaults_for(SweepTarget target) {
  switch (target) {
    case SweepTarget::Fig2:
      return {{{"xi", -5.0, 5.0, 101}, {"theta", 0.0, 2.0 * kPi, 101}},
              "coeff_c"};
    case SweepTarget::Fig3a:
      return {{{"xi1", -3.0, 3.0, 121}, {"xi2", -3.0, 3.0, 121}}, "coeff_c"};
    case SweepTarget::Fig3b:
      return {{{"xi", -5.0, 5.0, 501}}, "coeff_c"};
    case SweepTarget::Fig4:
      return {{{"xi", -5.0, 5.0, 101}, {"theta", 0.0, 2.0 * kPi, 101}},
              "coeff_i"};
    case SweepTarget::Fig5:
      return {{{"xi", -5.0, 5.0, 501}}, "coeff_i"};
    case SweepTarget::Custom:
      return {{}, ""};
  }
  return {};
}

std::vector<double> fig5_curves(const SweepSpec& spec) {
  if (!spec.alpha_sq_values.empty()) return spec.alpha_sq_values;
  return {1e-3, 1.0, 1e3, 1e6};
}

double fig4_alpha_sq(const SweepSpec& spec) {
  const auto it = spec.fixed.find("alpha_sq");
  return it == spec.fixed.end() ? 1.0 : it->second;
}

bool is_xi_name(const std::string& name) {
  return name == "xi" || name == "xi1" || name == "xi2";
}

// One grid point: axis values in, value columns out.
using PointFn = std::vector<double> (*)(const SweepSpec&,
                                        const std::vector<double>&);

std::vector<double> eval_fig(const SweepSpec& spec,
                             const std::vector<double>& x) {
  switch (spec.target) {
    case SweepTarget::Fig2: return {coeff_c_equal_squeezing(x[0], x[1])};
    case SweepTarget::Fig3a: return {coeff_c_unequal_squeezing(x[0], x[1])};
    case SweepTarget::Fig3b: return {coeff_c_one_squeezed(x[0])};
    case SweepTarget::Fig4:
      return {coeff_i_equal_squeezing(x[0], x[1], fig4_alpha_sq(spec))};
    case SweepTarget::Fig5: return {coeff_i_one_squeezed(x[1], x[0])};
    case SweepTarget::Custom: break;
  }
  return {};
}

std::vector<double> eval_custom(const SweepSpec& spec,
                                const std::vector<double>& x) {
  ScenarioParams p;
  for (const auto& [name, value] : spec.fixed) p.set(name, value);
  const auto axes = resolved_axes(spec);
  for (std::size_t i = 0; i < axes.size(); ++i) p.set(axes[i].name, x[i]);
  const AbsorptionReport rep = analyze(p.splitter(), p.input1(), p.input2());
  return {rep.c_in,    rep.c_out,   rep.i_in,      rep.i_out,
          rep.coeff_c, rep.coeff_i, rep.gamma_big, rep.identity_residual};
}

}  // namespace

SweepTarget parse_target(std::string_view name) {
  if (name == "fig2") return SweepTarget::Fig2;
  if (name == "fig3a") return SweepTarget::Fig3a;
  if (name == "fig3b") return SweepTarget::Fig3b;
  if (name == "fig4") return SweepTarget::Fig4;
  if (name == "fig5") return SweepTarget::Fig5;
  if (name == "custom") return SweepTarget::Custom;
  bad_spec("target: unknown sweep target '" + std::string(name) + "'");
}

std::string_view to_string(SweepTarget target) {
  switch (target) {
    case SweepTarget::Fig2: return "fig2";
    case SweepTarget::Fig3a: return "fig3a";
    case SweepTarget::Fig3b: return "fig3b";
    case SweepTarget::Fig4: return "fig4";
    case SweepTarget::Fig5: return "fig5";
    case SweepTarget::Custom: return "custom";
  }
  return "unknown";
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  bad_spec("format: expected csv or json, got '" + std::string(name) + "'");
}

Axis parse_axis(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    bad_spec("axis: expected name=start:stop:count, got '" + std::string(text) +
             "'");
  }
  Axis a;
  a.name = std::string(text.substr(0, eq));
  const std::string_view range = text.substr(eq + 1);
  const auto c1 = range.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : range.find(':', c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
    bad_spec("axis " + a.name + ": expected start:stop:count");
  }
  a.start = parse_double(range.substr(0, c1), "axis " + a.name);
  a.stop = parse_double(range.substr(c1 + 1, c2 - c1 - 1), "axis " + a.name);
  const double count = parse_double(range.substr(c2 + 1), "axis " + a.name);
  if (count != std::floor(count) || count > 1e8) {
    bad_spec("axis " + a.name + ": count must be an integer");
  }
  a.count = static_cast<int>(count);
  return a;
}

std::vector<double> linspace(double start, double stop, int count) {
  std::vector<double> v(static_cast<std::size_t>(std::max(count, 0)));
  if (count == 1) {
    v[0] = start;
    return v;
  }
  const double mid = 0.5 * (start + stop);
  const double half = 0.5 * (stop - start);
  const int span = count - 1;
  for (int i = 0; i < count; ++i) {
    v[static_cast<std::size_t>(i)] =
        mid + half * (static_cast<double>(2 * i - span) / span);
  }
  return v;
}

std::vector<Axis> resolved_axes(const SweepSpec& spec) {
  if (spec.target == SweepTarget::Custom) return spec.axes;
  std::vector<Axis> axes = defaults_for(spec.target).axes;
  for (const Axis& over : spec.axes) {
    auto it = std::find_if(axes.begin(), axes.end(),
                           [&](const Axis& a) { return a.name == over.name; });
    if (it == axes.end()) {
      bad_spec("axis " + over.name + ": not an axis of target " +
               std::string(to_string(spec.target)));
    }
    *it = over;
  }
  return axes;
}

void validate(const SweepSpec& spec) {
  const std::vector<Axis> axes = resolved_axes(spec);
  if (spec.target == SweepTarget::Custom) {
    if (axes.empty() || axes.size() > 2) {
      bad_spec("axis: custom sweeps need one or two axes");
    }
    std::set<std::string> seen;
    for (const Axis& a : axes) {
      if (!ScenarioParams::is_known(a.name)) {
        bad_spec("axis " + a.name + ": unknown scenario parameter");
      }
      if (!seen.insert(a.name).second) bad_spec("axis " + a.name + ": repeated");
    }
    for (const auto& [name, value] : spec.fixed) {
      if (!ScenarioParams::is_known(name)) {
        bad_spec("set " + name + ": unknown scenario parameter");
      }
      if (!std::isfinite(value)) bad_spec("set " + name + ": not finite");
      if (is_xi_name(name) && std::abs(value) > kMaxAbsXi) {
        bad_spec("set " + name + ": |xi| must be <= 20");
      }
      if ((name == "alpha_mag" || name == "beta_mag") &&
          (value < 0.0 || value * value > kMaxAlphaSq)) {
        bad_spec("set " + name + ": magnitude must be in [0, sqrt(1e9)]");
      }
    }
  } else {
    for (const auto& [name, value] : spec.fixed) {
      if (!(spec.target == SweepTarget::Fig4 && name == "alpha_sq")) {
        bad_spec("set " + name + ": not a fixed parameter of target " +
                 std::string(to_string(spec.target)));
      }
      if (!(value > 0.0) || value > kMaxAlphaSq) {
        bad_spec("set alpha_sq: must be in (0, 1e9]");
      }
    }
  }
  if (spec.target == SweepTarget::Fig5) {
    for (double a : fig5_curves(spec)) {
      if (!(a > 0.0) || a > kMaxAlphaSq) {
        bad_spec("alpha-sq: values must be in (0, 1e9]");
      }
    }
  } else if (!spec.alpha_sq_values.empty()) {
    bad_spec("alpha-sq: only the fig5 target takes a list of |alpha|^2");
  }

  long long points = spec.target == SweepTarget::Fig5
                         ? static_cast<long long>(fig5_curves(spec).size())
                         : 1;
  for (const Axis& a : axes) {
    if (a.count < 2) bad_spec("axis " + a.name + ": count must be >= 2");
    if (!std::isfinite(a.start) || !std::isfinite(a.stop)) {
      bad_spec("axis " + a.name + ": bounds must be finite");
    }
    if (is_xi_name(a.name) &&
        (std::abs(a.start) > kMaxAbsXi || std::abs(a.stop) > kMaxAbsXi)) {
      bad_spec("axis " + a.name + ": |xi| must be <= 20");
    }
    if ((a.name == "alpha_mag" || a.name == "beta_mag") &&
        (std::min(a.start, a.stop) < 0.0 ||
         std::max(a.start * a.start, a.stop * a.stop) > kMaxAlphaSq)) {
      bad_spec("axis " + a.name + ": magnitude must be in [0, sqrt(1e9)]");
    }
    points *= a.count;
    if (points > kMaxGridPoints) bad_spec("axis: grid exceeds 1e7 points");
  }
}

Table run_sweep(const SweepSpec& spec) {
  validate(spec);
  const std::vector<Axis> axes = resolved_axes(spec);

  // Grid coordinates, row-major (last axis fastest).
  std::vector<std::vector<double>> coords;
  std::vector<std::string> columns;
  if (spec.target == SweepTarget::Fig5) {
    coords.push_back(fig5_curves(spec));
    columns.push_back("alpha_sq");
  }
  for (const Axis& a : axes) {
    coords.push_back(linspace(a.start, a.stop, a.count));
    columns.push_back(a.name);
  }
  const PointFn fn =
      spec.target == SweepTarget::Custom ? &eval_custom : &eval_fig;
  if (spec.target == SweepTarget::Custom) {
    for (const char* c : {"c_in", "c_out", "i_in", "i_out", "coeff_c",
                          "coeff_i", "gamma_big", "identity_residual"}) {
      columns.emplace_back(c);
    }
  } else {
    columns.push_back(defaults_for(spec.target).value_column);
  }

  std::size_t total = 1;
  for (const auto& c : coords) total *= c.size();

  Table table;
  table.columns = columns;
  table.rows.resize(total);

  auto point = [&](std::size_t flat) {
    std::vector<double> x(coords.size());
    std::size_t rem = flat;
    for (std::size_t d = coords.size(); d-- > 0;) {
      x[d] = coords[d][rem % coords[d].size()];
      rem /= coords[d].size();
    }
    std::vector<double> row = x;
    const std::vector<double> values = fn(spec, x);
    row.insert(row.end(), values.begin(), values.end());
    table.rows[flat] = std::move(row);
  };

  unsigned workers = spec.threads != 0 ? spec.threads
                                       : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < total; i += workers) point(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return table;
}

std::string format_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  char buf[32];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::string format_json(const Table& table, const SweepSpec& spec) {
  nlohmann::json j;
  j["target"] = std::string(to_string(spec.target));
  j["columns"] = table.columns;
  j["rows"] = table.rows;
  return j.dump() + "\n";
}

Table sweep(const SweepSpec& spec) {
  Table table = run_sweep(spec);
  const std::string text = spec.format == OutputFormat::Csv
                               ? format_csv(table)
                               : format_json(table, spec);
  if (spec.out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw Error(ErrorKind::IoError, "failed writing to stdout");
    return table;
  }
  std::ofstream f(spec.out_path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::IoError, "cannot open " + spec.out_path);
  f << text;
  f.close();
  if (!f) throw Error(ErrorKind::IoError, "failed writing " + spec.out_path);
  return table;
}

}  // namespace cpa::tools
