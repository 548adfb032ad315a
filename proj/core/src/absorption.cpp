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

#include "cpa/absorption.hpp"

#include <cmath>
#include <string>

#include "cpa/errors.hpp"

namespace cpa {

namespace {

void require_alpha_sq(double alpha_sq) {
  if (!std::isfinite(alpha_sq) || alpha_sq < 0.0) {
    throw Error(ErrorKind::InvalidArgument,
                "|alpha|^2 must be finite and non-negative");
  }
  if (alpha_sq == 0.0) {
    throw Error(ErrorKind::DegenerateInput,
                "|alpha|^2 = 0 makes the closed form undefined; use analyze()");
  }
}

bool is_cpa(const LossyBeamSplitter& bs) {
  return bs.t() == cd(0.5, 0.0) && bs.r() == cd(-0.5, 0.0);
}

}  // namespace

double interference_term(const SqueezedCoherentState& in1,
                         const SqueezedCoherentState& in2) {
  const cd m1 = expect_annihilation(in1);
  const cd m2 = expect_annihilation(in2);
  return 2.0 * (m1 * std::conj(m2)).real();
}

AbsorptionReport analyze(const LossyBeamSplitter& bs,
                         const SqueezedCoherentState& in1,
                         const SqueezedCoherentState& in2) {
  AbsorptionReport rep;
  const double s1 = std::sinh(in1.zeta.xi());
  const double s2 = std::sinh(in2.zeta.xi());
  const double coh1 = std::norm(expect_annihilation(in1));
  const double coh2 = std::norm(expect_annihilation(in2));

  rep.c_in = coh1 + coh2;
  const double squeeze_photons = s1 * s1 + s2 * s2;
  rep.i_in = rep.c_in + squeeze_photons;
  if (rep.c_in == 0.0) {
    throw Error(ErrorKind::ZeroCoherenceInput,
                "input coherence is zero; coherence absorption is undefined");
  }
  if (rep.i_in == 0.0) {
    throw Error(ErrorKind::ZeroIntensityInput,
                "input intensity is zero; intensity absorption is undefined");
  }

  rep.gamma_big = interference_term(in1, in2);
  rep.incoherent = bs.incoherent_absorption();
  const double passthrough = std::norm(bs.t()) + std::norm(bs.r());
  const double cross = rep.gamma_big * bs.interference_weight();

  // C_out = (|t|^2 + |r|^2) C_in + Gamma (t r^* + r t^*); the device noise is
  // in its ground state and adds neither coherence nor photons, so the
  // intensity follows the same relation with I_in.
  rep.c_out = passthrough * rep.c_in + cross;
  rep.i_out = passthrough * rep.i_in + cross;
  rep.delta_c = rep.c_in - rep.c_out;
  rep.delta_i = rep.i_in - rep.i_out;
  rep.coeff_c = rep.delta_c / rep.c_in;
  rep.coeff_i = rep.delta_i / rep.i_in;
  rep.identity_residual =
      (rep.delta_i - rep.delta_c) - (rep.i_in - rep.c_in) * rep.incoherent;
  return rep;
}

double log_coherent_fidelity(const ComplexAmplitude& alpha,
                             const ComplexAmplitude& beta) {
  return -std::norm(alpha.value() - beta.value());
}

double coherent_fidelity(const ComplexAmplitude& alpha,
                         const ComplexAmplitude& beta) {
  return std::exp(log_coherent_fidelity(alpha, beta));
}

double coeff_from_fidelity(const LossyBeamSplitter& bs,
                           const ComplexAmplitude& alpha,
                           const ComplexAmplitude& beta) {
  const double total = alpha.magnitude() * alpha.magnitude() +
                       beta.magnitude() * beta.magnitude();
  if (total == 0.0) {
    throw Error(ErrorKind::ZeroCoherenceInput,
                "|alpha|^2 + |beta|^2 = 0; coherence absorption is undefined");
  }
  const double log_f = log_coherent_fidelity(alpha, beta);
  if (is_cpa(bs)) {
    return 1.0 + 0.5 * log_f / total;
  }
  return 1.0 - (std::norm(bs.t() + bs.r()) +
                bs.interference_weight() * log_f / total);
}

double coeff_c_equal_squeezing(double xi, double theta) {
  // e^{2xi}[cosh 2xi - cos 2theta sinh 2xi] = e^{4xi} sin^2 theta + cos^2
  // theta; the left side cancels catastrophically once |xi| exceeds ~9.
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  return 0.5 + c / (1.0 + std::exp(4.0 * xi) * s * s + c * c);
}

double coeff_c_unequal_squeezing(double xi1, double xi2) {
  const double ratio = 2.0 * std::exp(-(xi1 + xi2)) /
                       (std::exp(-2.0 * xi1) + std::exp(-2.0 * xi2));
  return 1.0 - 0.5 * (1.0 - ratio);
}

double coeff_c_common_phase(const LossyBeamSplitter& bs, double xi1,
                            double xi2, double delta, double phi) {
  // cosh x - cos(eps) sinh x as a sum of non-negative terms
  const double eps = 2.0 * delta - phi;
  auto mix = [eps](double x) {
    const double h = x >= 0.0 ? std::sin(0.5 * eps) : std::cos(0.5 * eps);
    return std::exp(-std::abs(x)) + 2.0 * std::sinh(std::abs(x)) * h * h;
  };
  const double omega1 = 2.0 * mix(xi1 + xi2) * bs.interference_weight();
  const double omega2 = mix(2.0 * xi1) + mix(2.0 * xi2);
  return 1.0 - (std::norm(bs.t()) + std::norm(bs.r()) + omega1 / omega2);
}

double coeff_c_one_squeezed(double xi) {
  const double ch = std::cosh(xi);
  return (1.0 + ch) / (2.0 * ch);
}

double coeff_i_one_squeezed(double xi, double alpha_sq) {
  require_alpha_sq(alpha_sq);
  const double sh = std::sinh(xi);
  return 0.5 + std::exp(-xi) /
                   (1.0 + std::exp(-2.0 * xi) + sh * sh / alpha_sq);
}

double coeff_i_equal_squeezing(double xi, double theta, double alpha_sq) {
  require_alpha_sq(alpha_sq);
  const double sh = std::sinh(xi);
  const double e = std::exp(-2.0 * xi);
  const double st = std::sin(theta);  // (1 - cos 2theta)/2 = sin^2 theta
  return 0.5 + 0.5 * std::cos(theta) * e /
                   (e + st * st * std::sinh(2.0 * xi) + sh * sh / alpha_sq);
}

}  // namespace cpa
