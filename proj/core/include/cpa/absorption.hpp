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

#include "cpa/angles.hpp"
#include "cpa/beamsplitter.hpp"
#include "cpa/states.hpp"

namespace cpa {

/// Coherence and intensity bookkeeping for one two-input scenario.
///
/// Coherence counts the one-photon coherences, C = sum_k |<a_k>|^2;
/// intensity counts photons, I = sum_k <a_k^dag a_k>. Both are in photon
/// number units.
struct AbsorptionReport {
  double c_in = 0.0;
  double c_out = 0.0;
  double i_in = 0.0;
  double i_out = 0.0;
  double delta_c = 0.0;
  double delta_i = 0.0;
  double coeff_c = 0.0;  ///< 1 - C_out / C_in
  double coeff_i = 0.0;  ///< 1 - I_out / I_in
  double gamma_big = 0.0;   ///< 2 Re(<a1><a2>^*)
  double incoherent = 0.0;  ///< 1 - |t|^2 - |r|^2
  /// (delta_i - delta_c) - (i_in - c_in) * incoherent; zero for any splitter
  /// and any pair of squeezed coherent inputs.
  double identity_residual = 0.0;
};

/// Gamma = <a1><a2>^* + <a2><a1>^*.
double interference_term(const SqueezedCoherentState& in1,
                         const SqueezedCoherentState& in2);

/// Throws ZeroCoherenceInput when C_in = 0 and ZeroIntensityInput when
/// I_in = 0; both coefficients are undefined there.
AbsorptionReport analyze(const LossyBeamSplitter& bs,
                         const SqueezedCoherentState& in1,
                         const SqueezedCoherentState& in2);

/// |<alpha|beta>|^2 = exp(-|alpha - beta|^2). Never zero mathematically, but
/// underflows in double for |alpha - beta|^2 > ~745; use
/// log_coherent_fidelity there.
double coherent_fidelity(const ComplexAmplitude& alpha,
                         const ComplexAmplitude& beta);
double log_coherent_fidelity(const ComplexAmplitude& alpha,
                             const ComplexAmplitude& beta);

/// Coherent-state absorption written through the fidelity F:
///   1 - [|t + r|^2 + (t r^* + r t^*) ln F / (|alpha|^2 + |beta|^2)],
/// which for the CPA splitter collapses to 1 + ln sqrt(F) / (|alpha|^2 +
/// |beta|^2). Throws ZeroCoherenceInput when both amplitudes vanish.
double coeff_from_fidelity(const LossyBeamSplitter& bs,
                           const ComplexAmplitude& alpha,
                           const ComplexAmplitude& beta);

// Closed-form CPA slices (t = 1/2, r = -1/2). Each one matches analyze()
// on the parameter slice named in its comment.

/// theta1 = theta, theta2 = 0, xi1 = xi2 = xi, phi1 = phi2 = 0, equal |alpha|:
///   1/2 + cos(theta) / (1 + e^{2xi}[cosh 2xi - cos 2theta sinh 2xi]).
double coeff_c_equal_squeezing(double xi, double theta);

/// Equal real amplitudes, all phases zero, xi1 != xi2 allowed:
///   1 - (1/2)(1 - 2 e^{-(xi1+xi2)} / (e^{-2xi1} + e^{-2xi2})).
double coeff_c_unequal_squeezing(double xi1, double xi2);

/// Any splitter, equal amplitudes |alpha| = |beta|, common coherent phase
/// theta1 = theta2 = delta and common squeezing phase phi1 = phi2 = phi,
/// xi1 != xi2 allowed:
///   1 - (|t|^2 + |r|^2 + Omega1 / Omega2) with eps = 2 delta - phi,
///   Omega1 = 2 [cosh(xi1 + xi2) - cos eps sinh(xi1 + xi2)] (t r^* + r t^*),
///   Omega2 = cosh 2xi1 + cosh 2xi2 - cos eps (sinh 2xi1 + sinh 2xi2).
/// coeff_c_unequal_squeezing is its CPA, delta = phi = 0 case.
double coeff_c_common_phase(const LossyBeamSplitter& bs, double xi1,
                            double xi2, double delta, double phi);

/// xi1 = xi, xi2 = 0, all phases zero: (1 + cosh xi) / (2 cosh xi).
double coeff_c_one_squeezed(double xi);

/// Same slice as coeff_c_one_squeezed, intensity version:
///   1/2 + e^{-xi} / (1 + e^{-2xi} + sinh^2 xi / |alpha|^2).
/// Throws DegenerateInput for alpha_sq == 0.
double coeff_i_one_squeezed(double xi, double alpha_sq);

/// Same slice as coeff_c_equal_squeezing, intensity version:
///   1/2 + (cos theta / 2) e^{-2xi} /
///         (e^{-2xi} + [(1 - cos 2theta)/2] sinh 2xi + sinh^2 xi / |alpha|^2).
/// Throws DegenerateInput for alpha_sq == 0.
double coeff_i_equal_squeezing(double xi, double theta, double alpha_sq);

}  // namespace cpa
