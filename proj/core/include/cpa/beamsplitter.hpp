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

#include <utility>

#include <Eigen/Dense>

#include "cpa/angles.hpp"
#include "cpa/states.hpp"

namespace cpa {

/// Slack on the top eigenvalue of T^dag T when testing passivity.
inline constexpr double kPassivitySlack = 1e-12;
/// Loss eigenvalues below this are treated as exactly lossless.
inline constexpr double kLosslessThreshold = 1e-14;
inline constexpr double kUnitarityTolerance = 1e-10;

/// Reciprocal symmetric lossy beam splitter b = T a + A g.
///
/// T = [[t, r], [r, t]]; A is the principal (Hermitian, PSD) square root of
/// 1 - T^dag T, so T^dag T + A^dag A = 1 and the device (Langevin) operators
/// L = A g keep the output modes bosonic.
class LossyBeamSplitter {
 public:
  /// Throws NonPassive if T^dag T has an eigenvalue above 1 + kPassivitySlack.
  static LossyBeamSplitter create(cd t, cd r);

  /// Accepts only matrices with equal diagonals and equal off-diagonals;
  /// anything else throws AsymmetricSplitter.
  static LossyBeamSplitter from_transmission(const Eigen::Matrix2cd& t_matrix);

  cd t() const noexcept { return t_; }
  cd r() const noexcept { return r_; }
  const Eigen::Matrix2cd& transmission() const noexcept { return t_matrix_; }
  const Eigen::Matrix2cd& absorption() const noexcept { return a_matrix_; }

  /// 1 - |t|^2 - |r|^2.
  double incoherent_absorption() const noexcept;
  /// t r^* + r t^* (real).
  double interference_weight() const noexcept;

 private:
  LossyBeamSplitter(cd t, cd r, Eigen::Matrix2cd tm, Eigen::Matrix2cd am)
      : t_(t), r_(r), t_matrix_(std::move(tm)), a_matrix_(std::move(am)) {}

  cd t_;
  cd r_;
  Eigen::Matrix2cd t_matrix_;
  Eigen::Matrix2cd a_matrix_;
};

/// t = 1/2, r = -1/2: T = (1 - sigma_x)/2, A = (1 + sigma_x)/2.
LossyBeamSplitter cpa_splitter();

/// 4x4 unitary on (a1, a2, g1, g2) -> (b1, b2, h1, h2).
struct DilationUnitary {
  Eigen::Matrix4cd u;
};

/// U = [[T, A], [-A, T]]. With this sign choice the inverse relation
/// reads a = T^dag b - A h, i.e. a = T b - A h for real symmetric T.
/// Throws NotUnitary when [T, A] structure breaks unitarity (possible for
/// lossy splitters with complex T).
DilationUnitary dilation(const LossyBeamSplitter& bs);

/// Optical output means (<b1>, <b2>); device noise has zero mean.
std::pair<cd, cd> output_means(const LossyBeamSplitter& bs,
                               const SqueezedCoherentState& in1,
                               const SqueezedCoherentState& in2);

}  // namespace cpa
