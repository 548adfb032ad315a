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

#include <cmath>
#include <sstream>

#include "cpa/errors.hpp"
#include "cpa/fock.hpp"

namespace cpa::fock {

namespace {

std::size_t checked_size(int n_modes, int cutoff) {
  if (n_modes < 1 || n_modes > kMaxModes) {
    throw Error(ErrorKind::InvalidArgument,
                "Fock states support 1 to 4 modes");
  }
  if (cutoff < 1) {
    throw Error(ErrorKind::InvalidArgument, "cutoff must be at least 1");
  }
  std::size_t n = 1;
  for (int k = 0; k < n_modes; ++k) n *= static_cast<std::size_t>(cutoff);
  return n;
}

void throw_cutoff(double deficit, int cutoff, double tail_tol) {
  std::ostringstream msg;
  msg << "cutoff " << cutoff << " leaves norm deficit " << deficit
      << " above tail tolerance " << tail_tol;
  throw Error(ErrorKind::CutoffTooSmall, msg.str());
}

// Two-mode register used by the generator-form evaluation.
struct TwoMode {
  int dim;
  std::vector<cd> v;

  cd& at(int n1, int n2) { return v[static_cast<std::size_t>(n1 * dim + n2)]; }
  cd at(int n1, int n2) const {
    return v[static_cast<std::size_t>(n1 * dim + n2)];
  }
};

TwoMode lower(const TwoMode& s, int mode) {
  TwoMode out{s.dim, std::vector<cd>(s.v.size())};
  for (int n1 = 0; n1 < s.dim; ++n1) {
    for (int n2 = 0; n2 < s.dim; ++n2) {
      const int src = (mode == 0 ? n1 : n2) + 1;
      if (src >= s.dim) continue;
      const cd amp = mode == 0 ? s.at(n1 + 1, n2) : s.at(n1, n2 + 1);
      out.at(n1, n2) = std::sqrt(static_cast<double>(src)) * amp;
    }
  }
  return out;
}

TwoMode raise(const TwoMode& s, int mode) {
  TwoMode out{s.dim, std::vector<cd>(s.v.size())};
  for (int n1 = 0; n1 < s.dim; ++n1) {
    for (int n2 = 0; n2 < s.dim; ++n2) {
      const int dst = (mode == 0 ? n1 : n2) + 1;
      if (dst >= s.dim) continue;
      const cd amp = s.at(n1, n2);
      if (mode == 0) {
        out.at(n1 + 1, n2) = std::sqrt(static_cast<double>(dst)) * amp;
      } else {
        out.at(n1, n2 + 1) = std::sqrt(static_cast<double>(dst)) * amp;
      }
    }
  }
  return out;
}

TwoMode diff_lower(const TwoMode& s) {
  TwoMode a = lower(s, 0);
  const TwoMode b = lower(s, 1);
  for (std::size_t i = 0; i < a.v.size(); ++i) a.v[i] -= b.v[i];
  return a;
}

TwoMode diff_raise(const TwoMode& s) {
  TwoMode a = raise(s, 0);
  const TwoMode b = raise(s, 1);
  for (std::size_t i = 0; i < a.v.size(); ++i) a.v[i] -= b.v[i];
  return a;
}

// G psi with G = [zeta^* (b1 - b2)^2 - zeta (b1^dag - b2^dag)^2] / 4.
TwoMode apply_generator(const TwoMode& s, cd zeta) {
  const TwoMode down = diff_lower(diff_lower(s));
  const TwoMode up = diff_raise(diff_raise(s));
  TwoMode out{s.dim, std::vector<cd>(s.v.size())};
  for (std::size_t i = 0; i < s.v.size(); ++i) {
    out.v[i] = 0.25 * (std::conj(zeta) * down.v[i] - zeta * up.v[i]);
  }
  return out;
}

double norm2(const std::vector<cd>& v) {
  double s = 0.0;
  for (const cd& x : v) s += std::norm(x);
  return s;
}

}  // namespace

FockState::FockState(int n_modes, int cutoff)
    : n_modes_(n_modes),
      cutoff_(cutoff),
      amps_(checked_size(n_modes, cutoff), cd(0.0, 0.0)) {
  amps_[0] = 1.0;
}

FockState::FockState(int n_modes, int cutoff, std::vector<cd> amplitudes)
    : n_modes_(n_modes), cutoff_(cutoff), amps_(std::move(amplitudes)) {
  if (amps_.size() != checked_size(n_modes, cutoff)) {
    throw Error(ErrorKind::DimensionMismatch,
                "amplitude count must equal cutoff^n_modes");
  }
}

FockState FockState::product(std::span<const FockState> factors) {
  if (factors.empty()) {
    throw Error(ErrorKind::InvalidArgument, "empty tensor product");
  }
  const int cutoff = factors.front().cutoff();
  int modes = 0;
  for (const auto& f : factors) {
    if (f.cutoff() != cutoff) {
      throw Error(ErrorKind::DimensionMismatch,
                  "tensor factors must share one cutoff");
    }
    modes += f.n_modes();
  }
  std::vector<cd> amps{cd(1.0, 0.0)};
  double leak = 0.0;
  for (const auto& f : factors) {
    std::vector<cd> next;
    next.reserve(amps.size() * f.size());
    for (const cd& a : amps) {
      for (const cd& b : f.amplitudes()) next.push_back(a * b);
    }
    amps = std::move(next);
    leak += f.leakage();
  }
  FockState out(modes, cutoff, std::move(amps));
  out.add_leakage(leak);
  return out;
}

std::size_t FockState::index(std::span<const int> occupation) const {
  if (static_cast<int>(occupation.size()) != n_modes_) {
    throw Error(ErrorKind::DimensionMismatch, "occupation length mismatch");
  }
  std::size_t idx = 0;
  for (int n : occupation) {
    if (n < 0 || n >= cutoff_) {
      throw Error(ErrorKind::InvalidArgument, "occupation outside cutoff");
    }
    idx = idx * static_cast<std::size_t>(cutoff_) + static_cast<std::size_t>(n);
  }
  return idx;
}

cd FockState::amplitude(std::span<const int> occupation) const {
  return amps_[index(occupation)];
}

double FockState::norm_squared() const { return norm2(amps_); }

Eigen::MatrixXcd squeeze_matrix(const SqueezeParam& zeta, int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw Error(ErrorKind::InvalidArgument, "squeeze matrix needs rows, cols >= 1");
  }
  const double ch = std::cosh(zeta.xi());
  const double sh = std::sinh(zeta.xi());
  const cd e = std::polar(1.0, zeta.phi());
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(rows, cols);
  auto sq = [](int k) { return std::sqrt(static_cast<double>(k)); };

  // S_{m+1,n} = (sqrt(n) S_{m,n-1} - e sh sqrt(m) S_{m-1,n}) / (ch sqrt(m+1))
  // S_{0,n}   = e^* sh S_{1,n-1} / sqrt(n)
  for (int n = 0; n < cols; ++n) {
    if (n == 0) {
      s(0, 0) = 1.0 / std::sqrt(ch);
    } else if (rows > 1) {
      s(0, n) = std::conj(e) * sh * s(1, n - 1) / sq(n);
    }
    for (int m = 0; m + 1 < rows; ++m) {
      cd acc = 0.0;
      if (n > 0) acc += sq(n) * s(m, n - 1);
      if (m > 0) acc -= e * sh * sq(m) * s(m - 1, n);
      s(m + 1, n) = acc / (ch * sq(m + 1));
    }
  }
  return s;
}

std::vector<cd> coherent_amplitudes(cd alpha, int count) {
  std::vector<cd> c(static_cast<std::size_t>(std::max(count, 0)));
  if (count <= 0) return c;
  const double mag = std::abs(alpha);
  const double theta = std::arg(alpha);
  if (mag == 0.0) {
    c[0] = 1.0;
    return c;
  }
  const double log_mag = std::log(mag);
  for (int n = 0; n < count; ++n) {
    const double log_r =
        -0.5 * mag * mag + n * log_mag - 0.5 * std::lgamma(n + 1.0);
    c[static_cast<std::size_t>(n)] = std::polar(std::exp(log_r), n * theta);
  }
  return c;
}

FockState prepare_squeezed_coherent(const SqueezedCoherentState& state,
                                    int cutoff, double tail_tol) {
  checked_size(1, cutoff);
  const double mag_sq = state.alpha.magnitude() * state.alpha.magnitude();
  // Enough coherent columns that the dropped Poisson tail is negligible.
  int columns = cutoff;
  constexpr int kMaxColumns = 2000;
  while (columns < kMaxColumns) {
    const double log_p =
        -mag_sq + columns * std::log(std::max(mag_sq, 1e-300)) -
        std::lgamma(columns + 1.0);
    if (columns > mag_sq && log_p < std::log(1e-34)) break;
    columns += 8;
  }
  const std::vector<cd> coh = coherent_amplitudes(state.alpha.value(), columns);
  const Eigen::MatrixXcd s = squeeze_matrix(state.zeta, cutoff, columns);
  const Eigen::VectorXcd c =
      Eigen::Map<const Eigen::VectorXcd>(coh.data(), columns);
  const Eigen::VectorXcd out = s * c;

  std::vector<cd> amps(out.data(), out.data() + out.size());
  FockState result(1, cutoff, std::move(amps));
  const double deficit = 1.0 - result.norm_squared();
  if (deficit > tail_tol) throw_cutoff(deficit, cutoff, tail_tol);
  return result;
}

FockState prepare_squeezed_coherent_adaptive(const SqueezedCoherentState& state,
                                             const Options& opts) {
  int cutoff = opts.cutoff;
  while (true) {
    try {
      return prepare_squeezed_coherent(state, cutoff, opts.tail_tol);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CutoffTooSmall || cutoff + 10 > opts.max_cutoff) {
        throw;
      }
      cutoff += 10;
    }
  }
}

FockState cpa_optical_output(const SqueezeParam& zeta, int cutoff,
                             double tail_tol) {
  checked_size(2, cutoff);
  const int dim = cutoff + 10;
  TwoMode psi{dim, std::vector<cd>(static_cast<std::size_t>(dim * dim))};
  psi.at(0, 0) = 1.0;

  // ||G|| <= 2 |xi| dim in the padded space; keep each step's norm <= 1/2.
  const int steps =
      std::max(1, static_cast<int>(std::ceil(4.0 * std::abs(zeta.xi()) * dim)));
  const cd z = zeta.value() / static_cast<double>(steps);
  for (int step = 0; step < steps; ++step) {
    TwoMode term = psi;
    TwoMode acc = psi;
    for (int k = 1; k < 200; ++k) {
      term = apply_generator(term, z);
      for (auto& x : term.v) x /= static_cast<double>(k);
      for (std::size_t i = 0; i < acc.v.size(); ++i) acc.v[i] += term.v[i];
      if (norm2(term.v) < 1e-36) break;
    }
    psi = std::move(acc);
  }

  std::vector<cd> amps(static_cast<std::size_t>(cutoff * cutoff));
  for (int n1 = 0; n1 < cutoff; ++n1) {
    for (int n2 = 0; n2 < cutoff; ++n2) {
      amps[static_cast<std::size_t>(n1 * cutoff + n2)] = psi.at(n1, n2);
    }
  }
  FockState result(2, cutoff, std::move(amps));
  const double deficit = 1.0 - result.norm_squared();
  if (deficit > tail_tol) throw_cutoff(deficit, cutoff, tail_tol);
  return result;
}

}  // namespace cpa::fock
