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

#include "cpa/states.hpp"

#include <cmath>
#include <numbers>

namespace cpa {

// Both forms below avoid the cosh/sinh cancellation that the textbook
// expressions suffer for large |xi| near the squeezed quadrature.
// cosh(xi) - sinh(xi) cos(psi) = e^{-|xi|} + 2 sinh|xi| sin^2(psi/2)  (xi >= 0)
//                               = e^{-|xi|} + 2 sinh|xi| cos^2(psi/2)  (xi < 0)
cd expect_annihilation(const SqueezedCoherentState& state) {
  const double mag = state.alpha.magnitude();
  const double theta = state.alpha.phase();
  const double xi = state.zeta.xi();
  const double psi = state.zeta.phi() - 2.0 * theta;
  const double half = xi >= 0.0 ? std::sin(0.5 * psi) : std::cos(0.5 * psi);
  const double re =
      std::exp(-std::abs(xi)) + 2.0 * std::sinh(std::abs(xi)) * half * half;
  const double im = -std::sinh(xi) * std::sin(psi);
  return mag * std::polar(1.0, theta) * cd(re, im);
}

double expect_number(const SqueezedCoherentState& state) {
  const double s = std::sinh(state.zeta.xi());
  return std::norm(expect_annihilation(state)) + s * s;
}

double coherence_weight(const SqueezedCoherentState& state) {
  const double xi = state.zeta.xi();
  const double eta = 2.0 * state.alpha.phase() - state.zeta.phi();
  // cosh 2xi - cos(eta) sinh 2xi, rewritten as a sum of non-negative terms
  const double half = xi >= 0.0 ? std::sin(0.5 * eta) : std::cos(0.5 * eta);
  const double gamma_sq = std::exp(-2.0 * std::abs(xi)) +
                          2.0 * std::sinh(2.0 * std::abs(xi)) * half * half;
  const double mag = state.alpha.magnitude();
  return gamma_sq * mag * mag;
}

QuadratureMoments quadrature_moments(const SqueezedCoherentState& state) {
  const cd mean_a = expect_annihilation(state);
  const double xi = state.zeta.xi();
  const double half_angle = 0.5 * state.zeta.phi();

  const Eigen::Rotation2Dd rot(half_angle);
  const Eigen::Matrix2d r = rot.toRotationMatrix();
  const Eigen::Vector2d principal(0.5 * std::exp(-2.0 * xi),
                                  0.5 * std::exp(2.0 * xi));

  QuadratureMoments m;
  m.mean << std::numbers::sqrt2 * mean_a.real(),
      std::numbers::sqrt2 * mean_a.imag();
  m.covariance = r * principal.asDiagonal() * r.transpose();
  // exact symmetry for downstream symmetry checks
  m.covariance(1, 0) = m.covariance(0, 1);
  return m;
}

}  // namespace cpa
