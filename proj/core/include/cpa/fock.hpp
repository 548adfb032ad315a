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

// Brute-force truncated Fock-space engine. It shares no code path with the
// closed forms or the covariance engine and exists to check both.

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "cpa/angles.hpp"
#include "cpa/beamsplitter.hpp"
#include "cpa/states.hpp"

namespace cpa::fock {

inline constexpr double kDefaultTailTolerance = 1e-8;
inline constexpr int kDefaultCutoff = 20;
inline constexpr int kMaxCutoff = 40;
inline constexpr int kMaxModes = 4;

struct Options {
  int cutoff = kDefaultCutoff;
  int max_cutoff = kMaxCutoff;
  /// Truncation budget: allowed norm deficit of a state.
  double tail_tol = kDefaultTailTolerance;
};

/// Dense truncated state over n_modes modes with photon numbers
/// 0 .. cutoff-1 per mode.
///
/// Amplitudes are flattened row-major with mode 0 most significant:
///   index(n_0, ..., n_{N-1}) = sum_k n_k * cutoff^(N-1-k).
/// The norm is never renormalized; truncation loss shows up as a norm
/// deficit, and loss caused by gates is accumulated in leakage().
class FockState {
 public:
  /// Vacuum state.
  FockState(int n_modes, int cutoff);
  FockState(int n_modes, int cutoff, std::vector<cd> amplitudes);

  /// Tensor product; every factor must share one cutoff.
  static FockState product(std::span<const FockState> factors);

  int n_modes() const noexcept { return n_modes_; }
  int cutoff() const noexcept { return cutoff_; }
  std::size_t size() const noexcept { return amps_.size(); }

  std::span<const cd> amplitudes() const noexcept { return amps_; }
  std::span<cd> amplitudes() noexcept { return amps_; }

  cd amplitude(std::span<const int> occupation) const;
  std::size_t index(std::span<const int> occupation) const;

  double norm_squared() const;
  /// Norm removed by gates pushing amplitude past the cutoff.
  double leakage() const noexcept { return leakage_; }
  void add_leakage(double amount) noexcept { leakage_ += amount; }

 private:
  int n_modes_;
  int cutoff_;
  std::vector<cd> amps_;
  double leakage_ = 0.0;
};

/// <m| S(zeta) |n> for 0 <= m < rows, 0 <= n < cols, generated column by
/// column from the three-term recurrences implied by
/// S a S^dag = a cosh xi + a^dag e^{i phi} sinh xi. Entries with m - n odd are
/// exactly zero.
Eigen::MatrixXcd squeeze_matrix(const SqueezeParam& zeta, int rows, int cols);

/// Coherent amplitudes alpha^n e^{-|alpha|^2/2} / sqrt(n!), n < count.
std::vector<cd> coherent_amplitudes(cd alpha, int count);

/// S(zeta) D(alpha) |0> truncated to `cutoff` levels. Throws CutoffTooSmall
/// if the truncated norm deficit exceeds tail_tol.
FockState prepare_squeezed_coherent(const SqueezedCoherentState& state,
                                    int cutoff,
                                    double tail_tol = kDefaultTailTolerance);

/// Retries with cutoff + 10 until the deficit fits in tail_tol, up to
/// opts.max_cutoff.
FockState prepare_squeezed_coherent_adaptive(const SqueezedCoherentState& state,
                                             const Options& opts = {});

/// Two-mode mixer on (mode_a, mode_b) with mode matrix
///   [[cos theta, -e^{-i phi} sin theta], [e^{i phi} sin theta, cos theta]],
/// so |1, 0> -> cos theta |1, 0> + e^{i phi} sin theta |0, 1>.
struct MixerGate {
  int mode_a;
  int mode_b;
  double theta;
  double phi;
};

/// a -> e^{i phi} a on one mode, i.e. |n> -> e^{i n phi} |n>.
struct PhaseGate {
  int mode;
  double phi;
};

using Gate = std::variant<MixerGate, PhaseGate>;

Eigen::Matrix2cd mixer_matrix(double theta, double phi);

/// Gates in application order realizing an N-mode passive unitary.
struct GateDecomposition {
  int n_modes = 0;
  std::vector<Gate> gates;

  /// Product G_K ... G_1 of the mode matrices (G_1 applied first).
  Eigen::MatrixXcd compose() const;
};

/// Givens elimination over adjacent mode pairs. Throws NotUnitary if u is
/// not unitary to kUnitarityTolerance.
GateDecomposition decompose_unitary(const Eigen::MatrixXcd& u);
GateDecomposition decompose_unitary(const DilationUnitary& u);

/// Fock-basis blocks <p, N-p| U |n, N-n> of a two-mode mixer for every total
/// photon number N = 0..max_total, by exponentiating the generator of m on
/// each block. Throws NotUnitary unless m is unitary to kUnitarityTolerance.
std::vector<Eigen::MatrixXcd> mixer_blocks(const Eigen::Matrix2cd& m,
                                           int max_total);
Eigen::MatrixXcd mixer_block(const Eigen::Matrix2cd& m, int total);

/// Applies every gate in order. Amplitude pushed past the cutoff is dropped
/// and counted in leakage(); throws CutoffTooSmall if the accumulated
/// leakage exceeds tail_tol.
FockState apply_gates(FockState state, const GateDecomposition& gates,
                      double tail_tol = kDefaultTailTolerance);

/// First and second moments of every mode.
struct Moments {
  Eigen::VectorXcd mean;  ///< <a_k>
  Eigen::VectorXd number;  ///< <a_k^dag a_k>
  Eigen::MatrixXcd pair;   ///< <a_j a_k>
  Eigen::MatrixXcd hop;    ///< <a_j^dag a_k>
};

Moments measure(const FockState& state);

/// Quadrature mean and symmetrized covariance (x1, p1, x2, p2, ...) built
/// from measured moments, vacuum variance 1/2.
struct QuadratureData {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};
QuadratureData to_quadratures(const Moments& m);

/// Partial trace onto `subset` (listed order defines the reduced index
/// order, first listed mode most significant).
Eigen::MatrixXcd reduced_density(const FockState& state,
                                 std::span<const int> subset);

/// <target| rho |target>; valid as a fidelity because the target is pure.
/// Throws DimensionMismatch if sizes differ.
double state_fidelity(const Eigen::MatrixXcd& rho, const FockState& target);

double purity(const Eigen::MatrixXcd& rho);

/// Optical output predicted for the CPA splitter fed identical squeezed
/// coherent states:
///   exp[zeta^* (b1 - b2)^2 / 4 - zeta (b1^dag - b2^dag)^2 / 4] |0, 0>,
/// evaluated by exponentiating the quadratic generator directly (scaled
/// Taylor steps in a padded space of cutoff + 10 levels), then truncated.
FockState cpa_optical_output(const SqueezeParam& zeta, int cutoff,
                             double tail_tol = kDefaultTailTolerance);

/// Everything the oracle measures for one two-input scenario through a
/// splitter dilation.
struct OracleRun {
  FockState output;
  Moments moments;
  double input_deficit = 0.0;  ///< 1 - norm^2 after preparation
  double leakage = 0.0;        ///< norm lost inside the gates
};

/// Retries the whole run at cutoff + 10 (up to opts.max_cutoff) when
/// preparation or gate leakage exceeds opts.tail_tol.
OracleRun run_dilation(const LossyBeamSplitter& bs,
                       const SqueezedCoherentState& in1,
                       const SqueezedCoherentState& in2,
                       const Options& opts = {});

}  // namespace cpa::fock
