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

#include <gtest/gtest.h>

#include "cpa/absorption.hpp"
#include "cpa/errors.hpp"
#include "oracles.hpp"
#include "verify.hpp"

namespace cpa {
namespace {

using tools::scaled_diff;

SqueezedCoherentState make(double mag, double theta, double xi, double phi) {
  return {ComplexAmplitude(mag, theta), SqueezeParam(xi, phi)};
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no cpa::Error thrown";
  return ErrorKind::InvalidArgument;
}

TEST(Interference, Examples) {
  EXPECT_NEAR(interference_term(make(1.5, 0.2, 0.0, 0.0), make(0.8, 1.1, 0.0, 0.0)),
              2.0 * 1.5 * 0.8 * std::cos(0.9), 1e-15);
  EXPECT_EQ(interference_term(make(1.0, 0.3, 0.4, 0.1), SqueezedCoherentState::vacuum()),
            0.0);
  EXPECT_NEAR(interference_term(make(1.0, 0.0, 0.5, 0.0), make(1.0, 0.0, 0.0, 0.0)),
              1.2130613194252668, 1e-15);  // 2 e^{-1/2}
}

TEST(Interference, MatchesExpandedTrigonometricForm) {
  tools::Sampler rng(21);
  for (int i = 0; i < 1000; ++i) {
    const auto s1 = rng.state(10.0, 3.0);
    const auto s2 = rng.state(10.0, 3.0);
    EXPECT_LE(scaled_diff(interference_term(s1, s2), oracle::expanded_gamma(s1, s2)),
              1e-12)
        << i;
  }
}

TEST(Analyze, CoherentCpa) {
  const auto bs = cpa_splitter();
  const auto s = make(1.3, 0.7, 0.0, 0.0);
  const auto rep = analyze(bs, s, s);
  EXPECT_NEAR(rep.coeff_c, 1.0, 1e-12);
  EXPECT_NEAR(rep.coeff_i, 1.0, 1e-12);

  const auto single = analyze(bs, s, SqueezedCoherentState::vacuum());
  EXPECT_NEAR(single.coeff_c, 0.5, 1e-12);
  EXPECT_NEAR(single.coeff_i, 0.5, 1e-12);
}

TEST(Analyze, SqueezedCpaLeavesSqueezePhotons) {
  const auto s = make(1.0, 0.0, 0.5, 0.0);
  const auto rep = analyze(cpa_splitter(), s, s);
  EXPECT_NEAR(rep.coeff_c, 1.0, 1e-15);
  EXPECT_NEAR(rep.i_out, std::pow(std::sinh(0.5), 2), 1e-15);
  EXPECT_NEAR(rep.i_out, 0.27154031740762186, 1e-15);
}

// Output intensity from product-state moments: b1 = t a1 + r a2 + noise, with
// <n>, <a> of each input taken from dense matrix exponentials.
TEST(Analyze, IntensityMatchesDenseMoments) {
  constexpr int kDim = 80;
  const Eigen::MatrixXcd a = oracle::lowering(kDim);
  const Eigen::MatrixXcd n = a.adjoint() * a;
  tools::Sampler rng(22);
  for (int i = 0; i < 10; ++i) {
    const auto s1 = make(rng.uniform(0.1, 1.5), rng.angle(), rng.uniform(-0.6, 0.6), rng.angle());
    const auto s2 = make(rng.uniform(0.1, 1.5), rng.angle(), rng.uniform(-0.6, 0.6), rng.angle());
    const auto bs = rng.splitter();
    const Eigen::VectorXcd v1 = oracle::dense_state(s1, kDim);
    const Eigen::VectorXcd v2 = oracle::dense_state(s2, kDim);
    const cd m1 = v1.dot(a * v1);
    const cd m2 = v2.dot(a * v2);
    const double n1 = v1.dot(n * v1).real();
    const double n2 = v2.dot(n * v2).real();
    const cd t = bs.t();
    const cd r = bs.r();
    const double out1 = std::norm(t) * n1 + std::norm(r) * n2 +
                        2.0 * (std::conj(t) * r * std::conj(m1) * m2).real();
    const double out2 = std::norm(r) * n1 + std::norm(t) * n2 +
                        2.0 * (std::conj(r) * t * std::conj(m1) * m2).real();
    const auto rep = analyze(bs, s1, s2);
    EXPECT_NEAR(rep.i_in, n1 + n2, 1e-10) << i;
    EXPECT_NEAR(rep.i_out, out1 + out2, 1e-10) << i;
    EXPECT_NEAR(rep.c_out, std::norm(t * m1 + r * m2) + std::norm(r * m1 + t * m2), 1e-10)
        << i;
  }
}

TEST(Analyze, ReportInvariants) {
  tools::Sampler rng(23);
  for (int i = 0; i < 1000; ++i) {
    const auto bs = rng.splitter();
    const auto s1 = rng.state(10.0, 3.0);
    const auto s2 = rng.state(10.0, 3.0);
    const auto rep = analyze(bs, s1, s2);
    EXPECT_EQ(rep.delta_c, rep.c_in - rep.c_out);
    EXPECT_EQ(rep.delta_i, rep.i_in - rep.i_out);
    EXPECT_LE(std::abs(rep.identity_residual) / std::max(1.0, rep.i_in), 1e-12) << i;
    EXPECT_LE(rep.c_in, rep.i_in * (1.0 + 1e-15));
    EXPECT_LE(rep.c_out, rep.i_out + 1e-12 * std::max(1.0, rep.i_out));
  }
}

TEST(Analyze, RejectsDegenerateInputs) {
  const auto bs = cpa_splitter();
  const auto vac = SqueezedCoherentState::vacuum();
  EXPECT_EQ(kind_of([&] { analyze(bs, vac, vac); }), ErrorKind::ZeroCoherenceInput);
  // Squeezed vacua carry intensity but no coherence.
  EXPECT_EQ(kind_of([&] { analyze(bs, make(0.0, 0.0, 0.5, 0.0), vac); }),
            ErrorKind::ZeroCoherenceInput);
}

TEST(Fidelity, Examples) {
  const ComplexAmplitude one(1.0, 0.0);
  const ComplexAmplitude zero(0.0, 0.0);
  const ComplexAmplitude minus(1.0, kPi);
  EXPECT_EQ(coherent_fidelity(one, one), 1.0);
  EXPECT_NEAR(coherent_fidelity(one, zero), std::exp(-1.0), 1e-16);
  EXPECT_NEAR(coherent_fidelity(one, minus), std::exp(-4.0), 1e-16);

  const auto bs = cpa_splitter();
  EXPECT_NEAR(coeff_from_fidelity(bs, one, one), 1.0, 1e-15);
  EXPECT_NEAR(coeff_from_fidelity(bs, one, zero), 0.5, 1e-15);
  EXPECT_NEAR(coeff_from_fidelity(bs, one, minus), 0.0, 1e-15);
  EXPECT_EQ(kind_of([&] { coeff_from_fidelity(bs, zero, zero); }),
            ErrorKind::ZeroCoherenceInput);
}

TEST(Fidelity, MatchesAnalyzeForCoherentInputs) {
  tools::Sampler rng(24);
  for (int i = 0; i < 1000; ++i) {
    const auto bs = i % 4 == 0 ? cpa_splitter() : rng.splitter();
    const auto a = rng.amplitude(10.0);
    const auto b = rng.amplitude(10.0);
    const auto rep = analyze(bs, SqueezedCoherentState::coherent(a),
                             SqueezedCoherentState::coherent(b));
    EXPECT_LE(std::abs(coeff_from_fidelity(bs, a, b) - rep.coeff_c), 1e-12) << i;
    EXPECT_LE(std::abs(rep.coeff_c - rep.coeff_i), 1e-12) << i;
  }
}

TEST(ClosedForms, EqualSqueezingExamples) {
  for (double xi : {-4.0, -0.3, 0.0, 0.7, 5.0}) {
    EXPECT_NEAR(coeff_c_equal_squeezing(xi, 0.0), 1.0, 1e-15);
  }
  EXPECT_NEAR(coeff_c_equal_squeezing(0.0, kPi), 0.0, 1e-15);
  EXPECT_NEAR(coeff_c_equal_squeezing(5.0, kPi / 2.0), 0.5, 1e-8);
}

TEST(ClosedForms, EqualSqueezingMatchesLiteralForm) {
  tools::Sampler rng(25);
  for (int i = 0; i < 2000; ++i) {
    const double xi = rng.uniform(-5.0, 5.0);
    const double theta = rng.angle();
    EXPECT_NEAR(coeff_c_equal_squeezing(xi, theta),
                oracle::literal_coeff_c_equal_squeezing(xi, theta), 1e-9)
        << xi << " " << theta;
  }
}

TEST(ClosedForms, EqualSqueezingMatchesAnalyze) {
  tools::Sampler rng(26);
  const auto bs = cpa_splitter();
  for (int i = 0; i < 1000; ++i) {
    const double mag = rng.uniform(0.01, 10.0);
    const double xi = rng.uniform(-3.0, 3.0);
    const double theta = rng.angle();
    const auto rep = analyze(bs, make(mag, theta, xi, 0.0), make(mag, 0.0, xi, 0.0));
    EXPECT_LE(std::abs(coeff_c_equal_squeezing(xi, theta) - rep.coeff_c), 1e-12) << i;
  }
}

TEST(ClosedForms, UnequalSqueezing) {
  for (double xi : {-2.0, 0.0, 0.4, 3.0}) {
    EXPECT_NEAR(coeff_c_unequal_squeezing(xi, xi), 1.0, 1e-15);
    EXPECT_NEAR(coeff_c_unequal_squeezing(xi, -xi), 0.5 + 0.5 / std::cosh(2.0 * xi), 1e-15);
  }
  EXPECT_NEAR(coeff_c_unequal_squeezing(0.5, 0.0), 0.943409441985037, 1e-15);
  EXPECT_NEAR(coeff_c_unequal_squeezing(0.5, 0.0), coeff_c_one_squeezed(0.5), 1e-15);

  tools::Sampler rng(27);
  const auto bs = cpa_splitter();
  for (int i = 0; i < 1000; ++i) {
    const double mag = rng.uniform(0.01, 10.0);
    const double xi1 = rng.uniform(-3.0, 3.0);
    const double xi2 = rng.uniform(-3.0, 3.0);
    const auto rep = analyze(bs, make(mag, 0.0, xi1, 0.0), make(mag, 0.0, xi2, 0.0));
    EXPECT_LE(std::abs(coeff_c_unequal_squeezing(xi1, xi2) - rep.coeff_c), 1e-12) << i;
  }
}

TEST(ClosedForms, CommonPhaseMatchesAnalyze) {
  tools::Sampler rng(28);
  for (int i = 0; i < 1000; ++i) {
    const auto bs = rng.splitter();
    const double mag = rng.uniform(0.01, 10.0);
    const double xi1 = rng.uniform(-3.0, 3.0);
    const double xi2 = rng.uniform(-3.0, 3.0);
    const double delta = rng.angle();
    const double phi = rng.angle();
    const auto rep = analyze(bs, make(mag, delta, xi1, phi), make(mag, delta, xi2, phi));
    EXPECT_LE(std::abs(coeff_c_common_phase(bs, xi1, xi2, delta, phi) - rep.coeff_c), 1e-12)
        << i;
  }
  EXPECT_NEAR(coeff_c_common_phase(cpa_splitter(), 0.3, -0.8, 0.0, 0.0),
              coeff_c_unequal_squeezing(0.3, -0.8), 1e-15);
}

TEST(ClosedForms, OneSqueezed) {
  EXPECT_EQ(coeff_c_one_squeezed(0.0), 1.0);
  EXPECT_NEAR(coeff_c_one_squeezed(0.5), 0.943409441985037, 1e-15);
  EXPECT_EQ(coeff_c_one_squeezed(0.5), coeff_c_one_squeezed(-0.5));
  EXPECT_NEAR(coeff_c_one_squeezed(20.0), 0.5, 1e-8);
  EXPECT_NEAR(coeff_c_one_squeezed(-20.0), 0.5, 1e-8);
  EXPECT_GT(coeff_c_one_squeezed(20.0), 0.5);

  EXPECT_EQ(coeff_i_one_squeezed(0.0, 3.0), 1.0);
  EXPECT_NEAR(coeff_i_one_squeezed(0.5, 1.0), 0.8699666644486048, 1e-15);
  EXPECT_LT(std::abs(coeff_i_one_squeezed(-2.0, 1e6) - coeff_i_one_squeezed(2.0, 1e6)), 3e-5);
  // A weak beam is strongly asymmetric relative to the offset from 1/2.
  const double gp = coeff_i_one_squeezed(2.0, 1e-3) - 0.5;
  const double gm = coeff_i_one_squeezed(-2.0, 1e-3) - 0.5;
  EXPECT_GT(std::abs(gp - gm) / std::max(std::abs(gp), std::abs(gm)), 0.9);
  EXPECT_EQ(kind_of([] { coeff_i_one_squeezed(0.5, 0.0); }), ErrorKind::DegenerateInput);
  EXPECT_EQ(kind_of([] { coeff_i_one_squeezed(0.5, -1.0); }), ErrorKind::InvalidArgument);
}

TEST(ClosedForms, OneSqueezedMatchesAnalyze) {
  tools::Sampler rng(29);
  const auto bs = cpa_splitter();
  for (int i = 0; i < 1000; ++i) {
    const double mag = rng.uniform(0.01, 10.0);
    const double xi = rng.uniform(-3.0, 3.0);
    const auto rep = analyze(bs, make(mag, 0.0, xi, 0.0), make(mag, 0.0, 0.0, 0.0));
    EXPECT_LE(std::abs(coeff_c_one_squeezed(xi) - rep.coeff_c), 1e-12) << i;
    EXPECT_LE(std::abs(coeff_i_one_squeezed(xi, mag * mag) - rep.coeff_i), 1e-12) << i;
  }
}

TEST(ClosedForms, IntensityEqualSqueezing) {
  EXPECT_EQ(coeff_i_equal_squeezing(0.0, 0.0, 2.5), 1.0);
  EXPECT_NEAR(coeff_i_equal_squeezing(20.0, 0.0, 1.0), 0.5, 1e-8);
  // 1/2 + e^{-1}/2 / (e^{-1} + sinh^2(1/2))
  EXPECT_NEAR(coeff_i_equal_squeezing(0.5, 0.0, 1.0), 0.7876666198030492, 1e-15);
  EXPECT_EQ(kind_of([] { coeff_i_equal_squeezing(0.5, 0.0, 0.0); }),
            ErrorKind::DegenerateInput);

  const auto s = make(1.0, 0.0, 0.5, 0.0);
  EXPECT_NEAR(coeff_i_equal_squeezing(0.5, 0.0, 1.0), analyze(cpa_splitter(), s, s).coeff_i,
              1e-12);

  tools::Sampler rng(30);
  const auto bs = cpa_splitter();
  for (int i = 0; i < 1000; ++i) {
    const double mag = rng.uniform(0.01, 10.0);
    const double xi = rng.uniform(-3.0, 3.0);
    const double theta = rng.angle();
    const auto rep = analyze(bs, make(mag, theta, xi, 0.0), make(mag, 0.0, xi, 0.0));
    EXPECT_LE(std::abs(coeff_i_equal_squeezing(xi, theta, mag * mag) - rep.coeff_i), 1e-12)
        << i;
  }
}

TEST(ClosedForms, EqualCoefficientCriterion) {
  tools::Sampler rng(31);
  const auto bs = cpa_splitter();
  for (int i = 0; i < 500; ++i) {
    const double mag = rng.uniform(0.1, 5.0);
    double xi = rng.uniform(0.1, 2.0);
    if (i % 2 == 1) xi = -xi;
    const auto rep = analyze(bs, make(mag, rng.angle(), xi, rng.angle()),
                             make(mag, rng.angle(), 0.0, 0.0));
    if (std::abs(rep.coeff_c - rep.incoherent) > 1e-6) {
      EXPECT_NE(rep.coeff_c, rep.coeff_i) << i;
      EXPECT_GT(std::abs(rep.coeff_c - rep.coeff_i), 1e-12) << i;
    }
  }
}

TEST(ClosedForms, CoefficientsStayInUnitInterval) {
  tools::Sampler rng(32);
  const auto bs = cpa_splitter();
  for (int i = 0; i < 2000; ++i) {
    const auto rep = analyze(bs, rng.state(10.0, 3.0), rng.state(10.0, 3.0));
    EXPECT_GE(rep.coeff_c, -1e-12);
    EXPECT_LE(rep.coeff_c, 1.0 + 1e-12);
    EXPECT_GE(rep.coeff_i, -1e-12);
    EXPECT_LE(rep.coeff_i, 1.0 + 1e-12);
  }
  for (double xi = -5.0; xi <= 5.0; xi += 0.01) {
    if (std::abs(xi) > 1e-9) {
      EXPECT_LT(coeff_i_one_squeezed(xi, 1.0), 1.0);
    }
  }
}

}  // namespace
}  // namespace cpa
