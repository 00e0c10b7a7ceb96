// Copyright 2026 The qslcert Authors
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

#include "qslcert/stirap.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "qslcert/propagator.hpp"
#include "qslcert/qsl.hpp"

namespace qslcert::stirap {
namespace {

using std::numbers::pi;

// From tests/oracles/frozen_values.py.
constexpr double kPulsePeakEps001 = 31.41487933136535;
constexpr double kOmegaMaxEps001 = 31.41592653589793;
constexpr double kStokesHalfAtStart = 1.5655568450526451;
constexpr double kExactBoundD05 = 0.8791725949589744;
constexpr double kPaperStatedD05 = 0.5458889034537938;
constexpr double kTrueOverlapD05 = 0.9997148527243113;

const StirapParams kBase{0.5, 0.1, 10.0, 1.0};

TEST(Params, Validation) {
  EXPECT_NO_THROW(kBase.validate());
  EXPECT_THROW((StirapParams{0.5, 0.0, 10.0, 1.0}.validate()), DomainError);
  EXPECT_THROW((StirapParams{0.5, 1.0, 10.0, 1.0}.validate()), DomainError);
  EXPECT_THROW((StirapParams{0.5, 0.1, -1.0, 1.0}.validate()), DomainError);
  EXPECT_NEAR(kBase.omega_max(), pi, 1e-15);
}

TEST(Angles, Protocol) {
  EXPECT_EQ(angles(kBase, 0.0).gamma, 0.1);
  EXPECT_EQ(angles(kBase, 0.0).beta, 0.0);
  EXPECT_NEAR(angles(kBase, 10.0).beta, pi / 2, 1e-15);
  EXPECT_NEAR(angles(kBase, 5.0).beta, pi / 4, 1e-15);
  EXPECT_THROW(angles(kBase, -0.1), DomainError);
  EXPECT_THROW(angles(kBase, 10.1), DomainError);
}

TEST(Pulses, Endpoints) {
  const double peak = (pi / 10.0) / std::tan(0.1);
  Pulses start = pulses(kBase, 0.0);
  EXPECT_EQ(start.pump, 0.0);
  EXPECT_NEAR(start.stokes, peak, 1e-14);
  Pulses end = pulses(kBase, 10.0);
  EXPECT_NEAR(end.pump, peak, 1e-14);
  EXPECT_NEAR(end.stokes, 0.0, 1e-14);

  const StirapParams small{0.0, 0.01, 10.0, 1.0};
  EXPECT_NEAR(pulses(small, 10.0).pump, kPulsePeakEps001, 1e-11);
  EXPECT_NEAR(small.omega_max(), kOmegaMaxEps001, 1e-12);
}

TEST(Pulses, ZeroGammaIsSingular) {
  const StirapParams p{0.5, 0.0, 10.0, 1.0};
  EXPECT_THROW(pulses(p, 1.0), ScheduleSingularityError);
}

TEST(Hamiltonians, DifferOnlyByDetuning) {
  const StirapParams resonant{0.0, 0.1, 10.0, 1.0};
  for (double t : {0.0, 2.5, 7.0, 10.0}) {
    EXPECT_EQ((h1(resonant, t).matrix() - h2(resonant, t).matrix()).norm(), 0.0);
    const Matrix diff = h1(kBase, t).matrix() - h2(kBase, t).matrix();
    EXPECT_EQ((diff - delta_h(kBase).matrix()).norm(), 0.0);
    EXPECT_EQ(diff(1, 1), Complex(0.5, 0.0));
  }
  const HermitianOperator h = h1(kBase, 0.0);
  EXPECT_NEAR(h(1, 2).real(), kStokesHalfAtStart, 1e-14);
  EXPECT_EQ(h(1, 1).real(), 0.5);
  EXPECT_EQ(h(0, 1).real(), 0.0);
}

TEST(DesignedState, Endpoints) {
  const StirapParams tiny{0.0, 1e-8, 10.0, 1.0};
  EXPECT_NEAR(std::abs(designed_state(tiny, 0.0)[0]), 1.0, 1e-15);

  const QuantumState end = designed_state(kBase, 10.0);
  EXPECT_NEAR(std::abs(end[0]), 0.0, 1e-15);
  EXPECT_NEAR(end[1].imag(), -std::sin(0.1), 1e-15);
  EXPECT_NEAR(end[2].real(), -std::cos(0.1), 1e-15);

  const QuantumState mid = designed_state(kBase, 5.0);
  EXPECT_NEAR(mid[0].real(), std::cos(0.1) * std::cos(pi / 4), 1e-15);
  EXPECT_NEAR(mid[1].imag(), -std::sin(0.1), 1e-15);
  EXPECT_NEAR(mid[2].real(), -std::cos(0.1) * std::sin(pi / 4), 1e-15);
}

TEST(DesignedState, FinalFidelityIsCosSquared) {
  for (double eps : {0.01, 0.1, 0.3, pi / 4}) {
    const StirapParams p{0.0, eps, 7.0, 1.0};
    const double fidelity = std::norm(designed_state(p, 7.0)[2]);
    EXPECT_NEAR(fidelity, std::cos(eps) * std::cos(eps), 1e-12);
  }
}

TEST(Invariant, SpectrumIsTimeIndependent) {
  const StirapParams p{0.5, 0.1, 10.0, 2.0};
  for (int k = 0; k < 10; ++k) {
    const double t = 10.0 * k / 9.0;
    const HermitianOperator f = invariant_operator(p, t);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(f.matrix());
    EXPECT_NEAR(eig.eigenvalues()(0), -1.0, 1e-12);
    EXPECT_NEAR(eig.eigenvalues()(1), 0.0, 1e-12);
    EXPECT_NEAR(eig.eigenvalues()(2), 1.0, 1e-12);
    // The designed state is the zero-eigenvalue eigenvector.
    EXPECT_LE(f.apply(designed_state(p, t).amplitudes()).norm(), 1e-10);
  }
}

TEST(Invariant, SatisfiesInvariantEquation) {
  const TimeGrid grid(0, 10, 4000);
  const HamiltonianFn f = [](double t) { return invariant_operator(kBase, t); };
  const HamiltonianFn h = [](double t) { return h2(kBase, t); };
  EXPECT_LE(qsl::invariant_residual(f, h, grid), 1e-5);

  const HamiltonianFn perturbed = [](double t) {
    Angles a = angles(kBase, t);
    a.gamma += 0.01 * std::sin(pi * t / kBase.t_final);
    return invariant_operator(a, kBase.omega0);
  };
  EXPECT_GT(qsl::invariant_residual(perturbed, h, grid), 1e-3);
}

TEST(Invariant, LewisRiesenfeldPhaseVanishes) {
  const double kappa = qsl::lewis_riesenfeld_phase(
      [](double t) { return designed_state(kBase, t); },
      [](double t) { return h2(kBase, t); }, TimeGrid(0, 10, 4000));
  EXPECT_NEAR(kappa, 0.0, 1e-6);
}

TEST(AnalyticBound, Values) {
  const AnalyticBound resonant = analytic_bound(StirapParams{0.0, 0.1, 10.0, 1.0});
  EXPECT_EQ(resonant.exact, 1.0);
  EXPECT_EQ(resonant.approx, 1.0);
  EXPECT_EQ(resonant.stated_closed_form, 1.0);

  const AnalyticBound b = analytic_bound(kBase);
  EXPECT_NEAR(b.exact, kExactBoundD05, 1e-14);
  EXPECT_NEAR(b.stated_closed_form, kPaperStatedD05, 1e-14);
  EXPECT_NEAR(b.approx, std::cos(pi * 0.5 / kBase.omega_max()), 1e-15);
}

TEST(Run, ResonanceIsExact) {
  const qsl::BoundReport r = run(StirapParams{0.0, 0.1, 10.0, 1.0});
  EXPECT_EQ(r.lower_bound, 1.0);
  EXPECT_NEAR(*r.true_overlap, 1.0, 1e-7);
}

TEST(Run, DetunedMatchesOracle) {
  const qsl::BoundReport r = run(kBase);
  EXPECT_NEAR(r.lower_bound, kExactBoundD05, 1e-8);
  EXPECT_NEAR(*r.true_overlap, kTrueOverlapD05, 1e-7);
  EXPECT_GE(*r.margin, 0.0);
  EXPECT_NEAR(r.diagnostics.at("stated_closed_form"), kPaperStatedD05, 1e-14);
  EXPECT_NEAR(r.diagnostics.at("stated_closed_form_action") / r.action, 2.0, 1e-8);
  EXPECT_NEAR(r.diagnostics.at("designed_fidelity"), std::pow(std::cos(0.1), 2), 1e-12);
}

TEST(Run, SmallDetuningGivesTightBound) {
  StirapParams p{0.0, 0.01, 10.0, 1.0};
  p.delta = 0.01 * p.omega_max();
  const qsl::BoundReport r = run(p);
  EXPECT_GE(r.lower_bound, 0.995);
  EXPECT_GE(*r.true_overlap, r.lower_bound);
}

TEST(Run, LargeDetuningSaturates) {
  StirapParams p{0.0, 0.1, 10.0, 1.0};
  p.delta = p.omega_max();
  const qsl::BoundReport r = run(p);
  EXPECT_TRUE(r.trivial);
  EXPECT_EQ(r.lower_bound, 0.0);
  ASSERT_TRUE(r.true_overlap.has_value());
  EXPECT_GE(*r.true_overlap, 0.0);
}

TEST(Properties, DesignedStateIsExactSolutionIncludingPhase) {
  for (double eps : {0.05, 0.1, 0.4}) {
    const StirapParams p{0.0, eps, 10.0, 1.0};
    const TimeGrid grid(0, 10, 4000);
    const Trajectory traj = propagate([p](double t) { return h2(p, t); },
                                      designed_state(p, 0.0), grid);
    for (int k = 0; k <= grid.steps(); k += 400) {
      const Complex c = inner_product(traj.states()[k], designed_state(p, grid.time(k)));
      EXPECT_NEAR(c.real(), 1.0, 1e-6);
      EXPECT_NEAR(c.imag(), 0.0, 1e-6);
    }
  }
}

TEST(Properties, DeltaHIsDetuningProjector) {
  for (double t : {0.0, 1.0, 3.3, 9.9}) {
    const Matrix d = h1(kBase, t).matrix() - h2(kBase, t).matrix();
    Matrix expected = Matrix::Zero(3, 3);
    expected(1, 1) = kBase.delta;
    EXPECT_EQ(d, expected);
  }
}

TEST(Properties, ExactBoundMonotone) {
  double prev = 1.0;
  for (int k = 0; k <= 50; ++k) {
    const double lb = analytic_bound(StirapParams{0.05 * k, 0.1, 10.0, 1.0}).exact;
    EXPECT_LE(lb, prev);
    prev = lb;
  }
  prev = 1.0;
  for (int k = 1; k <= 50; ++k) {
    const double lb = analytic_bound(StirapParams{0.3, 0.1, 0.5 * k, 1.0}).exact;
    EXPECT_LE(lb, prev);
    prev = lb;
  }
}

TEST(Properties, PulseMirrorSymmetry) {
  for (int k = 0; k <= 20; ++k) {
    const double t = 10.0 * k / 20.0;
    EXPECT_NEAR(pulses(kBase, t).pump, pulses(kBase, 10.0 - t).stokes, 1e-12);
  }
}

}  // namespace
}  // namespace qslcert::stirap
