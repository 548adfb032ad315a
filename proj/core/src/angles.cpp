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

#include "cpa/angles.hpp"

#include <cmath>
#include <string>

#include "cpa/errors.hpp"

namespace cpa {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonPassive: return "NonPassive";
    case ErrorKind::AsymmetricSplitter: return "AsymmetricSplitter";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::ZeroCoherenceInput: return "ZeroCoherenceInput";
    case ErrorKind::ZeroIntensityInput: return "ZeroIntensityInput";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

double normalize_angle(double radians) {
  if (!std::isfinite(radians)) {
    throw Error(ErrorKind::InvalidArgument, "angle must be finite");
  }
  double r = std::remainder(radians, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

ComplexAmplitude::ComplexAmplitude(double magnitude, double phase)
    : magnitude_(magnitude), phase_(normalize_angle(phase)) {
  if (!std::isfinite(magnitude) || magnitude < 0.0) {
    throw Error(ErrorKind::InvalidArgument,
                "amplitude magnitude must be finite and non-negative, got " +
                    std::to_string(magnitude));
  }
}

ComplexAmplitude ComplexAmplitude::from_complex(cd value) {
  return ComplexAmplitude(std::abs(value), std::arg(value));
}

SqueezeParam::SqueezeParam(double xi, double phi)
    : xi_(xi), phi_(normalize_angle(phi)) {
  if (!std::isfinite(xi)) {
    throw Error(ErrorKind::InvalidArgument, "squeezing parameter must be finite");
  }
}

}  // namespace cpa
