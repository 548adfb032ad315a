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

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "cpa/errors.hpp"
#include "cpa/fock.hpp"

namespace cpa::fock {

namespace {

constexpr double kNegligiblePhase = 1e-15;
constexpr double kRoundingNorm = 1e-13;

Eigen::MatrixXcd embed(const Eigen::Matrix2cd& m, int n_modes, int a, int b) {
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(n_modes, n_modes);
  full(a, a) = m(0, 0);
  full(a, b) = m(0, 1);
  full(b, a) = m(1, 0);
  full(b, b) = m(1, 1);
  return full;
}

void check_mode(int mode, int n_modes) {
  if (mode < 0 || mode >= n_modes) {
    std::ostringstream msg;
    msg << "gate mode " << mode << " outside a " << n_modes << "-mode register";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

std::size_t stride_of(int mode, const FockState& s) {
  std::size_t stride = 1;
  for (int k = s.n_modes() - 1; k > mode; --k) {
    stride *= static_cast<std::size_t>(s.cutoff());
  }
  return stride;
}

void apply_phase(FockState& s, const PhaseGate& g) {
  check_mode(g.mode, s.n_modes());
  const std::size_t stride = stride_of(g.mode, s);
  const auto c = static_cast<std::size_t>(s.cutoff());
  std::vector<cd> factor(c);
  for (std::size_t n = 0; n < c; ++n) {
    factor[n] = std::polar(1.0, g.phi * static_cast<double>(n));
  }
  auto amps = s.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] *= factor[(i / stride) % c];
  }
}

void apply_mixer(FockState& s, const MixerGate& g) {
  check_mode(g.mode_a, s.n_modes());
  check_mode(g.mode_b, s.n_modes());
  if (g.mode_a == g.mode_b) {
    throw Error(ErrorKind::InvalidArgument, "mixer needs two distinct modes");
  }
  const int c = s.cutoff();
  const std::size_t sa = stride_of(g.mode_a, s);
  const std::size_t sb = stride_of(g.mode_b, s);
  const auto cu = static_cast<std::size_t>(c);
  const Eigen::Matrix2cd m = mixer_matrix(g.theta, g.phi);

  const std::vector<Eigen::MatrixXcd> blocks = mixer_blocks(m, 2 * (c - 1));

  auto amps = s.amplitudes();
  std::vector<cd> in(cu * cu);
  std::vector<cd> out(cu * cu);
  for (std::size_t base = 0; base < amps.size(); ++base) {
    if ((base / sa) % cu != 0 || (base / sb) % cu != 0) continue;
    for (std::size_t na = 0; na < cu; ++na) {
      for (std::size_t nb = 0; nb < cu; ++nb) {
        in[na * cu + nb] = amps[base + na * sa + nb * sb];
      }
    }
    std::fill(out.begin(), out.end(), cd(0.0, 0.0));
    for (int total = 0; total <= 2 * (c - 1); ++total) {
      const int lo = std::max(0, total - (c - 1));
      const int hi = std::min(total, c - 1);
      const Eigen::MatrixXcd& blk = blocks[static_cast<std::size_t>(total)];
      for (int p = lo; p <= hi; ++p) {
        cd acc = 0.0;
        for (int n = lo; n <= hi; ++n) {
          acc += blk(p, n) *
                 in[static_cast<std::size_t>(n) * cu + static_cast<std::size_t>(total - n)];
        }
        out[static_cast<std::size_t>(p) * cu + static_cast<std::size_t>(total - p)] = acc;
      }
    }
    for (std::size_t na = 0; na < cu; ++na) {
      for (std::size_t nb = 0; nb < cu; ++nb) {
        amps[base + na * sa + nb * sb] = out[na * cu + nb];
      }
    }
  }
}

}  // namespace

Eigen::Matrix2cd mixer_matrix(double theta, double phi) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix2cd m;
  m << c, -std::polar(s, -phi), std::polar(s, phi), c;
  return m;
}

Eigen::MatrixXcd GateDecomposition::compose() const {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n_modes, n_modes);
  for (const Gate& gate : gates) {
    if (const auto* mg = std::get_if<MixerGate>(&gate)) {
      u = embed(mixer_matrix(mg->theta, mg->phi), n_modes, mg->mode_a,
                mg->mode_b) *
          u;
    } else {
      const auto& pg = std::get<PhaseGate>(gate);
      u.row(pg.mode) *= std::polar(1.0, pg.phi);
    }
  }
  return u;
}

GateDecomposition decompose_unitary(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols() || u.rows() < 1) {
    throw Error(ErrorKind::DimensionMismatch, "mode unitary must be square");
  }
  const auto n = static_cast<int>(u.rows());
  const double defect =
      (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > kUnitarityTolerance) {
    std::ostringstream msg;
    msg << "matrix is not unitary (defect " << defect << ")";
    throw Error(ErrorKind::NotUnitary, msg.str());
  }

  // Left-multiply by 2x2 eliminators E_k on rows (i-1, i) until the matrix
  // is diagonal: E_K ... E_1 U = D, hence U = E_1^dag ... E_K^dag D.
  struct Eliminator {
    int row;
    cd a;
    cd b;
  };
  Eigen::MatrixXcd w = u;
  std::vector<Eliminator> elims;
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = n - 1; i > j; --i) {
      const cd x = w(i - 1, j);
      const cd y = w(i, j);
      if (std::abs(y) == 0.0) continue;
      const double r = std::hypot(std::abs(x), std::abs(y));
      const cd a = x / r;
      const cd b = y / r;
      // E = [[a^*, b^*], [-b, a]] maps (x, y) to (r, 0).
      const Eigen::RowVectorXcd top = w.row(i - 1);
      const Eigen::RowVectorXcd bottom = w.row(i);
      w.row(i - 1) = std::conj(a) * top + std::conj(b) * bottom;
      w.row(i) = -b * top + a * bottom;
      elims.push_back({i, a, b});
    }
  }

  GateDecomposition dec;
  dec.n_modes = n;
  for (int k = 0; k < n; ++k) {
    const double ph = std::arg(w(k, k));
    if (std::abs(ph) > kNegligiblePhase) dec.gates.push_back(PhaseGate{k, ph});
  }
  // E^dag = [[a, -b^*], [b, a^*]] = diag(e^{i arg a}, e^{-i arg a})
  //         * mixer(theta = atan2(|b|, |a|), phi = arg a + arg b).
  for (auto it = elims.rbegin(); it != elims.rend(); ++it) {
    const double arg_a = std::abs(it->a) == 0.0 ? 0.0 : std::arg(it->a);
    const double arg_b = std::arg(it->b);
    dec.gates.push_back(MixerGate{it->row - 1, it->row,
                                  std::atan2(std::abs(it->b), std::abs(it->a)),
                                  arg_a + arg_b});
    if (std::abs(arg_a) > kNegligiblePhase) {
      dec.gates.push_back(PhaseGate{it->row - 1, arg_a});
      dec.gates.push_back(PhaseGate{it->row, -arg_a});
    }
  }
  return dec;
}

GateDecomposition decompose_unitary(const DilationUnitary& u) {
  return decompose_unitary(Eigen::MatrixXcd(u.u));
}

std::vector<Eigen::MatrixXcd> mixer_blocks(const Eigen::Matrix2cd& m,
                                           int max_total) {
  if (max_total < 0) {
    throw Error(ErrorKind::InvalidArgument, "photon total must be non-negative");
  }
  const double defect =
      (m.adjoint() * m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  if (defect > kUnitarityTolerance) {
    throw Error(ErrorKind::NotUnitary, "mixer matrix is not unitary");
  }
  // m = exp(H) with H anti-Hermitian; on the N-photon block the mixer is
  // exp(H00 a^dag a + H11 b^dag b + H01 a^dag b + H10 b^dag a). Exponentiating
  // through a Hermitian eigendecomposition keeps every block unitary to
  // ~N eps; the closed binomial sum cancels badly past ~40 photons.
  const Eigen::ComplexSchur<Eigen::Matrix2cd> schur(m);
  const Eigen::Matrix2cd& q = schur.matrixU();
  Eigen::Matrix2cd log_d = Eigen::Matrix2cd::Zero();
  log_d(0, 0) = std::log(schur.matrixT()(0, 0));
  log_d(1, 1) = std::log(schur.matrixT()(1, 1));
  const Eigen::Matrix2cd h = q * log_d * q.adjoint();

  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(static_cast<std::size_t>(max_total) + 1);
  for (int total = 0; total <= max_total; ++total) {
    // k = -i * generator, Hermitian; basis |p, N-p>, p = photons in mode a.
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(total + 1, total + 1);
    const cd minus_i(0.0, -1.0);
    for (int p = 0; p <= total; ++p) {
      k(p, p) = minus_i * (h(0, 0) * static_cast<double>(p) +
                           h(1, 1) * static_cast<double>(total - p));
      if (p < total) {
        const double w = std::sqrt(static_cast<double>((p + 1) * (total - p)));
        k(p + 1, p) = minus_i * h(0, 1) * w;
        k(p, p + 1) = minus_i * h(1, 0) * w;
      }
    }
    k = 0.5 * (k + k.adjoint()).eval();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(k);
    const Eigen::VectorXcd phases =
        es.eigenvalues().unaryExpr([](double x) { return std::polar(1.0, x); });
    blocks.push_back(es.eigenvectors() * phases.asDiagonal() *
                     es.eigenvectors().adjoint());
  }
  return blocks;
}

Eigen::MatrixXcd mixer_block(const Eigen::Matrix2cd& m, int total) {
  if (total < 0) {
    throw Error(ErrorKind::InvalidArgument, "photon total must be non-negative");
  }
  return std::move(mixer_blocks(m, total).back());
}

FockState apply_gates(FockState state, const GateDecomposition& gates,
                      double tail_tol) {
  if (gates.n_modes != state.n_modes()) {
    throw Error(ErrorKind::DimensionMismatch,
                "gate list and state have different mode counts");
  }
  for (const Gate& gate : gates.gates) {
    if (const auto* pg = std::get_if<PhaseGate>(&gate)) {
      apply_phase(state, *pg);
      continue;
    }
    const double before = state.norm_squared();
    apply_mixer(state, std::get<MixerGate>(gate));
    // Blocks are unitary to ~N eps; smaller changes are rounding, not loss.
    const double lost = before - state.norm_squared();
    if (lost > kRoundingNorm * before) state.add_leakage(lost);
    if (state.leakage() > tail_tol) {
      std::ostringstream msg;
      msg << "gate leakage " << state.leakage() << " exceeds tail tolerance "
          << tail_tol << " at cutoff " << state.cutoff();
      throw Error(ErrorKind::CutoffTooSmall, msg.str());
    }
  }
  return state;
}

}  // namespace cpa::fock
