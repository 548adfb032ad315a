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

#include <Eigen/Dense>

#include "cpa/angles.hpp"

namespace cpa {

/// Single-mode squeezed coherent state |alpha, zeta> = S(zeta) D(alpha) |0>,
/// squeeze applied after displacement, with
/// S(zeta) = exp[(zeta* a^2 - zeta a^dag^2) / 2].
/// With phi = 0 and xi > 0 the x quadrature is squeezed. The other common
/// ordering D(alpha') S(zeta)|0> describes the same state for
/// alpha' = expect_annihilation(state).
struct SqueezedCoherentState {
  ComplexAmplitude alpha;
  SqueezeParam zeta;

  static SqueezedCoherentState coherent(ComplexAmplitude a) { return {a, {}}; }
  static SqueezedCoherentState vacuum() { return {}; }
};

/// Quadrature mean and covariance of one mode.
///
/// Convention: x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)), so the
/// vacuum has covariance diag(1/2, 1/2). Covariances are symmetrized,
/// sigma_jk = <{dx_j, dx_k}>/2.
struct QuadratureMoments {
  Eigen::Vector2d mean;
  Eigen::Matrix2d covariance;
};

/// <a> = |alpha| (e^{i theta} cosh xi - e^{-i theta} e^{i phi} sinh xi).
cd expect_annihilation(const SqueezedCoherentState& state);

/// <a^dag a> = |<a>|^2 + sinh^2 xi.
double expect_number(const SqueezedCoherentState& state);

/// gamma^2 |alpha|^2 with gamma^2 = cosh 2xi - cos(2 theta - phi) sinh 2xi.
/// Same quantity as |<a>|^2, evaluated through the trigonometric form.
double coherence_weight(const SqueezedCoherentState& state);

QuadratureMoments quadrature_moments(const SqueezedCoherentState& state);

}  // namespace cpa
