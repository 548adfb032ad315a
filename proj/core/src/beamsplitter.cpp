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

#include "cpa/beamsplitter.hpp"

#include <cmath>
#include <sstream>

#include "cpa/errors.hpp"

namespace cpa {

namespace {

// Square root of a loss eigenvalue 1 - |t +- r|^2, after the passivity check.
double loss_root(double lambda) {
  if (lambda < kLosslessThreshold) return 0.0;
  return std::sqrt(lambda);
}

}  // namespace

LossyBeamSplitter LossyBeamSplitter::create(cd t, cd r) {
  if (!std::isfinite(t.real()) || !std::isfinite(t.imag()) ||
      !std::isfinite(r.real()) || !std::isfinite(r.imag())) {
    throw Error(ErrorKind::InvalidArgument, "t and r must be finite");
  }
  // Symmetric T is diagonal in (1, +-1)/sqrt(2) with eigenvalues t +- r, so
  // T^dag T has eigenvalues |t +- r|^2 on the same vectors.
  const double even = std::norm(t + r);
  const double odd = std::norm(t - r);
  const double top = std::max(even, odd);
  if (top > 1.0 + kPassivitySlack) {
    std::ostringstream msg;
    msg << "beam splitter is not passive: largest eigenvalue of T^dag T is "
        << top;
    throw Error(ErrorKind::NonPassive, msg.str());
  }

  Eigen::Matrix2cd tm;
  tm << t, r, r, t;

  const double root_even = loss_root(1.0 - even);
  const double root_odd = loss_root(1.0 - odd);
  const double diag = 0.5 * (root_even + root_odd);
  const double off = 0.5 * (root_even - root_odd);
  Eigen::Matrix2cd am;
  am << diag, off, off, diag;

  return LossyBeamSplitter(t, r, std::move(tm), std::move(am));
}

LossyBeamSplitter LossyBeamSplitter::from_transmission(
    const Eigen::Matrix2cd& t_matrix) {
  if (t_matrix(0, 0) != t_matrix(1, 1) || t_matrix(0, 1) != t_matrix(1, 0)) {
    throw Error(ErrorKind::AsymmetricSplitter,
                "only reciprocal symmetric splitters [[t, r], [r, t]] are "
                "supported");
  }
  return create(t_matrix(0, 0), t_matrix(0, 1));
}

double LossyBeamSplitter::incoherent_absorption() const noexcept {
  return 1.0 - std::norm(t_) - std::norm(r_);
}

double LossyBeamSplitter::interference_weight() const noexcept {
  return 2.0 * (t_ * std::conj(r_)).real();
}

LossyBeamSplitter cpa_splitter() {
  return LossyBeamSplitter::create(cd(0.5, 0.0), cd(-0.5, 0.0));
}

DilationUnitary dilation(const LossyBeamSplitter& bs) {
  const Eigen::Matrix2cd& t = bs.transmission();
  const Eigen::Matrix2cd& a = bs.absorption();
  DilationUnitary d;
  d.u.topLeftCorner<2, 2>() = t;
  d.u.topRightCorner<2, 2>() = a;
  d.u.bottomLeftCorner<2, 2>() = -a;
  d.u.bottomRightCorner<2, 2>() = t;

  const double defect =
      (d.u.adjoint() * d.u - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff();
  if (defect > kUnitarityTolerance) {
    std::ostringstream msg;
    msg << "block dilation [[T, A], [-A, T]] is not unitary (defect " << defect
        << "); T and A must commute with T^dag A = A^dag T";
    throw Error(ErrorKind::NotUnitary, msg.str());
  }
  return d;
}

std::pair<cd, cd> output_means(const LossyBeamSplitter& bs,
                               const SqueezedCoherentState& in1,
                               const SqueezedCoherentState& in2) {
  const cd m1 = expect_annihilation(in1);
  const cd m2 = expect_annihilation(in2);
  return {bs.t() * m1 + bs.r() * m2, bs.r() * m1 + bs.t() * m2};
}

}  // namespace cpa
