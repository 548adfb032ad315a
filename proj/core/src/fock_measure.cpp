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
#include <numbers>

#include "cpa/errors.hpp"
#include "cpa/fock.hpp"

namespace cpa::fock {

namespace {

using Vec = Eigen::VectorXcd;

Vec as_vector(const FockState& s) {
  const auto amps = s.amplitudes();
  return Eigen::Map<const Vec>(amps.data(), static_cast<Eigen::Index>(amps.size()));
}

std::size_t stride_of(int mode, int n_modes, int cutoff) {
  std::size_t stride = 1;
  for (int k = n_modes - 1; k > mode; --k) stride *= static_cast<std::size_t>(cutoff);
  return stride;
}

// (a_mode v)[.., n, ..] = sqrt(n + 1) v[.., n + 1, ..]
Vec lower(const Vec& v, int mode, int n_modes, int cutoff) {
  const std::size_t stride = stride_of(mode, n_modes, cutoff);
  const auto c = static_cast<std::size_t>(cutoff);
  Vec out = Vec::Zero(v.size());
  for (std::size_t i = 0; i < static_cast<std::size_t>(v.size()); ++i) {
    const std::size_t n = (i / stride) % c;
    if (n + 1 >= c) continue;
    out(static_cast<Eigen::Index>(i)) =
        std::sqrt(static_cast<double>(n + 1)) *
        v(static_cast<Eigen::Index>(i + stride));
  }
  return out;
}

}  // namespace

Moments measure(const FockState& state) {
  const int nm = state.n_modes();
  const int c = state.cutoff();
  const Vec psi = as_vector(state);
  std::vector<Vec> lowered;
  lowered.reserve(static_cast<std::size_t>(nm));
  for (int k = 0; k < nm; ++k) lowered.push_back(lower(psi, k, nm, c));

  Moments m;
  m.mean.resize(nm);
  m.number.resize(nm);
  m.pair.resize(nm, nm);
  m.hop.resize(nm, nm);
  for (int k = 0; k < nm; ++k) {
    const auto& lk = lowered[static_cast<std::size_t>(k)];
    m.mean(k) = psi.dot(lk);  // dot conjugates the left operand
    m.number(k) = lk.squaredNorm();
    for (int j = 0; j < nm; ++j) {
      const auto& lj = lowered[static_cast<std::size_t>(j)];
      m.hop(j, k) = lj.dot(lk);
      m.pair(j, k) = psi.dot(lower(lk, j, nm, c));
    }
  }
  return m;
}

QuadratureData to_quadratures(const Moments& m) {
  const auto n = m.mean.size();
  QuadratureData q;
  q.mean.resize(2 * n);
  q.cov.resize(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    q.mean(2 * k) = std::numbers::sqrt2 * m.mean(k).real();
    q.mean(2 * k + 1) = std::numbers::sqrt2 * m.mean(k).imag();
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const cd dm = m.pair(j, k) - m.mean(j) * m.mean(k);
      const cd dn = m.hop(j, k) - std::conj(m.mean(j)) * m.mean(k);
      const double delta = j == k ? 0.5 : 0.0;
      q.cov(2 * j, 2 * k) = dm.real() + dn.real() + delta;
      q.cov(2 * j + 1, 2 * k + 1) = -dm.real() + dn.real() + delta;
      q.cov(2 * j, 2 * k + 1) = dm.imag() + dn.imag();
      q.cov(2 * k + 1, 2 * j) = dm.imag() + dn.imag();
    }
  }
  return q;
}

Eigen::MatrixXcd reduced_density(const FockState& state,
                                 std::span<const int> subset) {
  const int nm = state.n_modes();
  const int c = state.cutoff();
  std::vector<int> keep(static_cast<std::size_t>(nm), -1);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const int m = subset[i];
    if (m < 0 || m >= nm || keep[static_cast<std::size_t>(m)] != -1) {
      throw Error(ErrorKind::InvalidArgument,
                  "subset modes must be distinct and in range");
    }
    keep[static_cast<std::size_t>(m)] = static_cast<int>(i);
  }
  std::vector<int> rest;
  for (int m = 0; m < nm; ++m) {
    if (keep[static_cast<std::size_t>(m)] == -1) rest.push_back(m);
  }

  Eigen::Index sub_dim = 1;
  for (std::size_t i = 0; i < subset.size(); ++i) sub_dim *= c;
  const auto rest_dim = static_cast<Eigen::Index>(state.size()) / sub_dim;

  Eigen::MatrixXcd psi(sub_dim, rest_dim);
  std::vector<int> occ(static_cast<std::size_t>(nm));
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    std::size_t rem = i;
    for (int m = nm - 1; m >= 0; --m) {
      occ[static_cast<std::size_t>(m)] = static_cast<int>(rem % static_cast<std::size_t>(c));
      rem /= static_cast<std::size_t>(c);
    }
    Eigen::Index row = 0;
    for (int m : subset) row = row * c + occ[static_cast<std::size_t>(m)];
    Eigen::Index col = 0;
    for (int m : rest) col = col * c + occ[static_cast<std::size_t>(m)];
    psi(row, col) = amps[i];
  }
  Eigen::MatrixXcd rho = psi * psi.adjoint();
  return 0.5 * (rho + rho.adjoint());
}

double state_fidelity(const Eigen::MatrixXcd& rho, const FockState& target) {
  if (rho.rows() != rho.cols() ||
      static_cast<std::size_t>(rho.rows()) != target.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "density matrix and target state sizes differ");
  }
  const Vec t = as_vector(target);
  return t.dot(rho * t).real();
}

double purity(const Eigen::MatrixXcd& rho) {
  return (rho * rho).trace().real();
}

OracleRun run_dilation(const LossyBeamSplitter& bs,
                       const SqueezedCoherentState& in1,
                       const SqueezedCoherentState& in2, const Options& opts) {
  const GateDecomposition gates = decompose_unitary(dilation(bs));

  // Both inputs need one shared cutoff; grow it until each fits the budget
  // and the gates do not push more than tail_tol past it.
  int cutoff = opts.cutoff;
  while (true) {
    Options o = opts;
    o.cutoff = cutoff;
    FockState s1 = prepare_squeezed_coherent_adaptive(in1, o);
    o.cutoff = s1.cutoff();
    FockState s2 = prepare_squeezed_coherent_adaptive(in2, o);
    if (s2.cutoff() != s1.cutoff()) {
      cutoff = s2.cutoff();
      continue;
    }
    const FockState vac(1, s1.cutoff());
    const FockState factors[] = {s1, s2, vac, vac};
    FockState input = FockState::product(factors);
    const double deficit = 1.0 - input.norm_squared();
    try {
      OracleRun run{apply_gates(std::move(input), gates, opts.tail_tol), {},
                    deficit, 0.0};
      run.leakage = run.output.leakage();
      run.moments = measure(run.output);
      return run;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CutoffTooSmall ||
          s1.cutoff() + 10 > opts.max_cutoff) {
        throw;
      }
      cutoff = s1.cutoff() + 10;
    }
  }
}

}  // namespace cpa::fock
