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

#include "cpa/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "cpa/errors.hpp"

namespace cpa {

namespace {

Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

std::vector<int> quadrature_indices(std::span<const int> modes) {
  std::vector<int> idx;
  idx.reserve(2 * modes.size());
  for (int m : modes) {
    idx.push_back(2 * m);
    idx.push_back(2 * m + 1);
  }
  return idx;
}

}  // namespace

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  if (mean_.size() == 0 || mean_.size() % 2 != 0 || cov_.rows() != mean_.size() ||
      cov_.cols() != mean_.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "Gaussian state needs a 2N mean and a 2N x 2N covariance");
  }
  const double scale = std::max(1.0, cov_.cwiseAbs().maxCoeff());
  const double asym = (cov_ - cov_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "covariance is not symmetric (max asymmetry " << asym << ")";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  const double min_eig = min_uncertainty_eigenvalue();
  if (min_eig < -kUncertaintyTolerance) {
    std::ostringstream msg;
    msg << "covariance violates the uncertainty relation (min eigenvalue of "
           "cov + i Omega / 2 is "
        << min_eig << ")";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

GaussianState GaussianState::vacuum(int n_modes) {
  if (n_modes < 1) {
    throw Error(ErrorKind::InvalidArgument, "need at least one mode");
  }
  return GaussianState(Eigen::VectorXd::Zero(2 * n_modes),
                       0.5 * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

GaussianState GaussianState::product(std::span<const QuadratureMoments> modes) {
  const auto n = static_cast<Eigen::Index>(modes.size());
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(2 * n);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    mean.segment<2>(2 * k) = modes[k].mean;
    cov.block<2, 2>(2 * k, 2 * k) = modes[k].covariance;
  }
  return GaussianState(std::move(mean), std::move(cov));
}

QuadratureMoments GaussianState::mode(int k) const {
  if (k < 0 || k >= n_modes()) {
    throw Error(ErrorKind::InvalidArgument, "mode index out of range");
  }
  return {mean_.segment<2>(2 * k), cov_.block<2, 2>(2 * k, 2 * k)};
}

GaussianState GaussianState::reduced(std::span<const int> modes) const {
  for (int m : modes) {
    if (m < 0 || m >= n_modes()) {
      throw Error(ErrorKind::InvalidArgument, "mode index out of range");
    }
  }
  const std::vector<int> idx = quadrature_indices(modes);
  return GaussianState(mean_(idx), cov_(idx, idx));
}

double GaussianState::min_uncertainty_eigenvalue() const {
  const Eigen::MatrixXcd h =
      cov_.cast<cd>() + cd(0.0, 0.5) * symplectic_form(n_modes()).cast<cd>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

ModePartition ModePartition::optical_device() { return {{0, 1}, {2, 3}}; }

void ModePartition::validate(int n_modes) const {
  std::vector<int> seen(static_cast<std::size_t>(std::max(n_modes, 0)), 0);
  auto mark = [&](int m) {
    if (m < 0 || m >= n_modes) {
      throw Error(ErrorKind::InvalidArgument, "partition mode out of range");
    }
    if (seen[static_cast<std::size_t>(m)]++ != 0) {
      throw Error(ErrorKind::InvalidArgument, "partition lists overlap");
    }
  };
  for (int m : optical) mark(m);
  for (int m : device) mark(m);
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw Error(ErrorKind::InvalidArgument,
                "partition does not cover every mode");
  }
}

Eigen::MatrixXd symplectic_from_unitary(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "mode unitary must be square");
  }
  const Eigen::Index n = u.rows();
  Eigen::MatrixXd s(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double re = u(j, k).real();
      const double im = u(j, k).imag();
      s(2 * j, 2 * k) = re;
      s(2 * j, 2 * k + 1) = -im;
      s(2 * j + 1, 2 * k) = im;
      s(2 * j + 1, 2 * k + 1) = re;
    }
  }
  return s;
}

GaussianState transform_modes(const GaussianState& state,
                              const Eigen::MatrixXcd& u) {
  if (u.rows() != state.n_modes() || u.cols() != state.n_modes()) {
    throw Error(ErrorKind::DimensionMismatch,
                "mode unitary size does not match the state");
  }
  const Eigen::MatrixXd s = symplectic_from_unitary(u);
  Eigen::MatrixXd cov = s * state.cov() * s.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  return GaussianState(s * state.mean(), std::move(cov));
}

GaussianState input_state(const SqueezedCoherentState& in1,
                          const SqueezedCoherentState& in2) {
  const QuadratureMoments vac{Eigen::Vector2d::Zero(),
                              0.5 * Eigen::Matrix2d::Identity()};
  const QuadratureMoments modes[] = {quadrature_moments(in1),
                                     quadrature_moments(in2), vac, vac};
  return GaussianState::product(modes);
}

GaussianState propagate(const GaussianState& state, const DilationUnitary& u) {
  if (state.n_modes() != 4) {
    throw Error(ErrorKind::DimensionMismatch,
                "dilation acts on exactly four modes (a1, a2, g1, g2)");
  }
  return transform_modes(state, u.u);
}

Eigen::Matrix4cd superposition_basis() {
  const double h = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix4cd v = Eigen::Matrix4cd::Zero();
  v(0, 0) = h;
  v(0, 1) = h;
  v(1, 0) = h;
  v(1, 1) = -h;
  v(2, 2) = h;
  v(2, 3) = h;
  v(3, 2) = h;
  v(3, 3) = -h;
  return v;
}

GaussianState predicted_output(const ComplexAmplitude& alpha,
                               const SqueezeParam& zeta) {
  const QuadratureMoments vac{Eigen::Vector2d::Zero(),
                              0.5 * Eigen::Matrix2d::Identity()};
  // Each device mode carries displacement -alpha, so h+ carries -sqrt(2) alpha.
  const ComplexAmplitude device_amp(std::numbers::sqrt2 * alpha.magnitude(),
                                    alpha.phase() + kPi);
  const QuadratureMoments modes[] = {
      vac,
      quadrature_moments({ComplexAmplitude{}, zeta}),
      quadrature_moments({device_amp, zeta}),
      vac,
  };
  const GaussianState in_superposition = GaussianState::product(modes);
  return transform_modes(in_superposition, superposition_basis().adjoint());
}

double factorization_defect(const GaussianState& state,
                            const ModePartition& part) {
  part.validate(state.n_modes());
  const std::vector<int> a = quadrature_indices(part.optical);
  const std::vector<int> b = quadrature_indices(part.device);
  if (a.empty() || b.empty()) return 0.0;
  return state.cov()(a, b).cwiseAbs().maxCoeff();
}

double purity(const GaussianState& state, std::span<const int> subset) {
  const GaussianState sub = state.reduced(subset);
  const double det = sub.cov().determinant();
  return 1.0 / (std::pow(2.0, static_cast<double>(subset.size())) *
                std::sqrt(det));
}

std::vector<double> intensities(const GaussianState& state) {
  std::vector<double> n(static_cast<std::size_t>(state.n_modes()));
  for (int k = 0; k < state.n_modes(); ++k) {
    const auto m = state.mode(k);
    n[static_cast<std::size_t>(k)] =
        0.5 * (m.covariance(0, 0) + m.covariance(1, 1) - 1.0) +
        0.5 * m.mean.squaredNorm();
  }
  return n;
}

}  // namespace cpa
