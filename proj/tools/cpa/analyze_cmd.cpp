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

#include "analyze_cmd.hpp"

#include <array>
#include <cmath>

#include "cpa/absorption.hpp"
#include "cpa/gaussian.hpp"

namespace cpa::tools {

namespace {

nlohmann::json complex_json(cd z) { return {z.real(), z.imag()}; }

nlohmann::json state_json(const SqueezedCoherentState& s) {
  return {{"alpha_mag", s.alpha.magnitude()},
          {"theta", s.alpha.phase()},
          {"xi", s.zeta.xi()},
          {"phi", s.zeta.phi()}};
}

nlohmann::json gaussian_summary(const LossyBeamSplitter& bs,
                                const SqueezedCoherentState& in1,
                                const SqueezedCoherentState& in2) {
  const GaussianState out = propagate(input_state(in1, in2), dilation(bs));
  const std::array<int, 2> optical{0, 1};
  const auto n = intensities(out);
  nlohmann::json means = nlohmann::json::array();
  for (int k = 0; k < out.n_modes(); ++k) {
    const auto m = out.mode(k).mean;
    // back from quadratures to <a_k>
    means.push_back(complex_json(cd(m(0), m(1)) / std::sqrt(2.0)));
  }
  return {{"mode_order", {"b1", "b2", "h1", "h2"}},
          {"mode_intensities", n},
          {"optical_intensity", n[0] + n[1]},
          {"device_intensity", n[2] + n[3]},
          {"optical_purity", purity(out, optical)},
          {"factorization_defect",
           factorization_defect(out, ModePartition::optical_device())},
          {"mode_means", means}};
}

}  // namespace

nlohmann::json analyze_json(const AnalyzeOptions& opts) {
  const auto& p = opts.scenario;
  const auto bs = p.splitter();
  const auto in1 = p.input1();
  const auto in2 = p.input2();
  const AbsorptionReport r = analyze(bs, in1, in2);

  nlohmann::json j;
  j["input1"] = state_json(in1);
  j["input2"] = state_json(in2);
  j["splitter"] = {{"t", complex_json(bs.t())}, {"r", complex_json(bs.r())}};
  j["c_in"] = r.c_in;
  j["c_out"] = r.c_out;
  j["i_in"] = r.i_in;
  j["i_out"] = r.i_out;
  j["delta_c"] = r.delta_c;
  j["delta_i"] = r.delta_i;
  j["coeff_c"] = r.coeff_c;
  j["coeff_i"] = r.coeff_i;
  j["gamma_big"] = r.gamma_big;
  j["incoherent_absorption"] = r.incoherent;
  j["identity_residual"] = r.identity_residual;
  if (opts.gaussian) j["gaussian"] = gaussian_summary(bs, in1, in2);
  return j;
}

nlohmann::json error_json(const Error& e) {
  return {{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
}

}  // namespace cpa::tools
