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

#include <complex>
#include <numbers>

namespace cpa {

using cd = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Maps any finite angle (radians) into (-pi, pi].
double normalize_angle(double radians);

/// Complex amplitude stored in polar form, e.g. a coherent amplitude
/// alpha = |alpha| exp(i theta).
class ComplexAmplitude {
 public:
  ComplexAmplitude() = default;
  /// Throws InvalidArgument for a negative or non-finite magnitude.
  ComplexAmplitude(double magnitude, double phase);

  static ComplexAmplitude from_complex(cd value);

  double magnitude() const noexcept { return magnitude_; }
  double phase() const noexcept { return phase_; }
  cd value() const noexcept { return std::polar(magnitude_, phase_); }

  friend bool operator==(const ComplexAmplitude&,
                         const ComplexAmplitude&) = default;

 private:
  double magnitude_ = 0.0;
  double phase_ = 0.0;
};

/// zeta = xi exp(i phi). xi may take either sign; phi rotates the squeezed
/// quadrature by phi/2.
class SqueezeParam {
 public:
  SqueezeParam() = default;
  SqueezeParam(double xi, double phi);

  double xi() const noexcept { return xi_; }
  double phi() const noexcept { return phi_; }
  cd value() const noexcept { return std::polar(1.0, phi_) * xi_; }

  friend bool operator==(const SqueezeParam&, const SqueezeParam&) = default;

 private:
  double xi_ = 0.0;
  double phi_ = 0.0;
};

}  // namespace cpa
