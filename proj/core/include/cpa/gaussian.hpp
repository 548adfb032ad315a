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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cpa/angles.hpp"
#include "cpa/beamsplitter.hpp"
#include "cpa/states.hpp"

namespace cpa {

inline constexpr double kUncertaintyTolerance = 1e-10;
inline constexpr double kFactorizedThreshold = 1e-10;

/// N-mode Gaussian state in (x1, p1, x2, p2, ...) ordering with vacuum
/// covariance 1/2 per quadrature.
///
/// Construction validates that the covariance is symmetric and satisfies
/// cov + (i/2) Omega >= 0 up to kUncertaintyTolerance.
class GaussianState {
 public:
  GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);

  static GaussianState vacuum(int n_modes);
  static GaussianState product(std::span<const QuadratureMoments> modes);

  int n_modes() const noexcept { return static_cast<int>(mean_.size() / 2); }
  const Eigen::VectorXd& mean() const noexcept { return mean_; }
  const Eigen::MatrixXd& cov() const noexcept { return cov_; }

  QuadratureMoments mode(int k) const;
  /// Marginal on the listed modes, in the listed order.
  GaussianState reduced(std::span<const int> modes) const;
  /// Smallest eigenvalue of the Hermitian matrix cov + (i/2) Omega.
  double min_uncertainty_eigenvalue() const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
};

/// Optical/device split of a mode register.
struct ModePartition {
  std::vector<int> optical;
  std::vector<int> device;

  /// Modes {0, 1} optical and {2, 3} device, the dilation ordering.
  static ModePartition optical_device();
  /// Throws InvalidArgument unless the lists are disjoint and cover
  /// [0, n_modes).
  void validate(int n_modes) const;
};

/// Real 2N x 2N symplectic-orthogonal matrix of a passive mode unitary,
/// for operators transforming as a_out = U a_in.
Eigen::MatrixXd symplectic_from_unitary(const Eigen::MatrixXcd& u);

/// mean -> S mean, cov -> S cov S^T for any passive mode unitary.
GaussianState transform_modes(const GaussianState& state,
                              const Eigen::MatrixXcd& u);

/// Four-mode input |in1> (x) |in2> (x) |vac>_device.
GaussianState input_state(const SqueezedCoherentState& in1,
                          const SqueezedCoherentState& in2);

/// Propagates a four-mode state through the dilation; throws
/// DimensionMismatch for any other mode count.
GaussianState propagate(const GaussianState& state, const DilationUnitary& u);

/// Basis change (b1, b2, h1, h2) -> (b+, b-, h+, h-) with
/// b+- = (b1 +- b2)/sqrt(2), h+- = (h1 +- h2)/sqrt(2).
Eigen::Matrix4cd superposition_basis();

/// Predicted CPA output for identical inputs |alpha, zeta> on both ports:
/// squeezed vacuum S(zeta) on (b1 - b2)/sqrt(2), vacuum on (b1 + b2)/sqrt(2),
/// and on the device side S(zeta) acting on (h1 + h2)/sqrt(2) after a
/// displacement of both device modes.
///
/// The device displacement is -alpha on each mode. That sign is fixed by the
/// dilation convention U = [[T, A], [-A, T]] (a1 + a2 = -(h1 + h2) for the
/// CPA splitter); the optical part does not depend on it.
GaussianState predicted_output(const ComplexAmplitude& alpha,
                               const SqueezeParam& zeta);

/// Max-norm of the cross covariance between the two sides of the partition.
/// For a pure Gaussian state it vanishes iff the state factorizes.
double factorization_defect(const GaussianState& state,
                            const ModePartition& part);

/// tr(rho^2) of the marginal on `subset`: 1 / (2^k sqrt(det sigma)).
double purity(const GaussianState& state, std::span<const int> subset);

/// <n_k> = (sigma_xx + sigma_pp - 1)/2 + (mean_x^2 + mean_p^2)/2 per mode.
std::vector<double> intensities(const GaussianState& state);

}  // namespace cpa
