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

#include "qslcert/qsl.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "qslcert/stirap.hpp"
#include "test_support.hpp"

namespace qslcert::qsl {
namespace {

using std::numbers::pi;

// From tests/oracles/frozen_values.py (adaptive quadrature of the moment
// definition of sigma).
constexpr double kConstantStateAction = 0.9933466539753061;
constexpr double kStirapAction = 0.49667332698765304;

HamiltonianFn constant(HermitianOperator h) {
  return [h = std::move(h)](double) { return h; };
}

TEST(Simpson, ExactForCubics) {
  std::vector<double> f;
  const int n = 10;
  const double dt = 2.0 / n;
  for (int k = 0; k <= n; ++k) {
    const double x = k * dt;
    f.push_back(x * x * x - x + 1.0);
  }
  EXPECT_NEAR(simpson(f, dt), 4.0 - 2.0 + 2.0, 1e-13);
  f.pop_back();
  EXPECT_THROW(simpson(f, dt), GridError);
}

TEST(QslAction, ZeroDifference) {
  std::mt19937_64 rng(3);
  const QuantumState s = testing::random_state(rng, 3);
  EXPECT_EQ(qsl_action(constant(HermitianOperator::zero(3)),
                       [&](double) { return s; }, TimeGrid(0, 1, 10)),
            0.0);
}

TEST(QslAction, ConstantIntegrand) {
  const QuantumState frozen = stirap::designed_state(stirap::Angles{0.1, 0.4});
  const HermitianOperator dh =
      HermitianOperator::diagonal(Eigen::Vector3d(0.0, 1.0, 0.0));
  const double action =
      qsl_action(constant(dh), [&](double) { return frozen; }, TimeGrid(0, 10, 10));
  EXPECT_NEAR(action, kConstantStateAction, 1e-13);
}

TEST(QslAction, StirapDesignedTrajectory) {
  const stirap::StirapParams p{0.5, 0.1, 10.0, 1.0};
  const TimeGrid grid(0, 10, 4000);
  const Trajectory designed =
      sample_trajectory([&](double t) { return stirap::designed_state(p, t); }, grid);
  const double action = qsl_action(constant(stirap::delta_h(p)), designed);
  EXPECT_NEAR(action / kStirapAction, 1.0, 1e-8);
}

TEST(QslAction, GridAndSingularityErrors) {
  const QuantumState s = QuantumState::basis(2, 0);
  const HamiltonianFn zero = constant(HermitianOperator::zero(2));
  EXPECT_THROW(qsl_action(zero, [&](double) { return s; }, TimeGrid(0, 1, 7)),
               GridError);
  const HamiltonianFn bad = [](double t) {
    return HermitianOperator::diagonal(Eigen::Vector2d(t > 0.5 ? INFINITY : 0.0, 0.0));
  };
  EXPECT_THROW(qsl_action(bad, [&](double) { return s; }, TimeGrid(0, 1, 8)),
               ScheduleSingularityError);
}

TEST(LowerBound, FromAction) {
  BoundReport r = lower_bound_from_action(0.0);
  EXPECT_EQ(r.lower_bound, 1.0);
  EXPECT_FALSE(r.trivial);
  EXPECT_FALSE(r.true_overlap.has_value());
  EXPECT_NEAR(lower_bound_from_action(pi / 3).lower_bound, 0.5, 1e-15);
  r = lower_bound_from_action(2.0);
  EXPECT_EQ(r.lower_bound, 0.0);
  EXPECT_TRUE(r.trivial);
  EXPECT_TRUE(lower_bound_from_action(pi / 2).trivial);
  EXPECT_THROW(lower_bound_from_action(-1e-3), DomainError);
}

TEST(LowerBound, MonotoneInAction) {
  double previous = 1.0;
  for (int k = 0; k <= 400; ++k) {
    const double lb = lower_bound_from_action(k * 0.01).lower_bound;
    EXPECT_LE(lb, previous);
    previous = lb;
  }
}

TEST(Certify, IdenticalHamiltonians) {
  const stirap::StirapParams p{0.0, 0.1, 10.0, 1.0};
  const TimeGrid grid(0, 10, 2000);
  const HamiltonianFn h = [p](double t) { return stirap::h2(p, t); };
  const Trajectory designed =
      sample_trajectory([&](double t) { return stirap::designed_state(p, t); }, grid);
  const BoundReport r = certify(h, h, designed, grid);
  EXPECT_EQ(r.lower_bound, 1.0);
  EXPECT_NEAR(*r.true_overlap, 1.0, 1e-7);
  EXPECT_NEAR(*r.margin, 0.0, 1e-7);
}

TEST(Certify, DetunedStirapRespectsBound) {
  const stirap::StirapParams p{0.5, 0.1, 10.0, 1.0};
  const TimeGrid grid(0, 10, 4000);
  const Trajectory designed =
      sample_trajectory([&](double t) { return stirap::designed_state(p, t); }, grid);
  const BoundReport r = certify([p](double t) { return stirap::h1(p, t); },
                                [p](double t) { return stirap::h2(p, t); },
                                designed, grid);
  EXPECT_GE(*r.true_overlap, r.lower_bound);
  EXPECT_GE(r.lower_bound, std::cos(kStirapAction) - 1e-9);
  EXPECT_LE(*r.true_overlap, 1.0);
  EXPECT_GE(*r.margin, -1e-6);
}

TEST(Certify, WrongDesignedPathIsAViolation) {
  // A "designed" path that is not generated by h2 breaks the theorem's premise;
  // certify must refuse to hand out a bound of 1 for it.
  const TimeGrid grid(0, 1, 100);
  const HermitianOperator h = HermitianOperator::zero(2);
  const Trajectory drifting = sample_trajectory(
      [](double t) {
        Vector v(2);
        v << std::cos(t), std::sin(t);
        return QuantumState(v);
      },
      grid);
  EXPECT_THROW(certify(constant(h), constant(h), drifting, grid),
               CertificationViolationError);
  EXPECT_THROW(certify(constant(h), constant(h), drifting, TimeGrid(0, 1, 50)),
               GridError);
}

TEST(DualAction, IdenticalHamiltonians) {
  std::mt19937_64 rng(8);
  const HermitianOperator h = testing::random_hermitian_with_norm(rng, 3, 2.0);
  const DualAction d =
      dual_action(constant(h), constant(h), testing::random_state(rng, 3), TimeGrid(0, 1, 100));
  EXPECT_EQ(d.action_true, 0.0);
  EXPECT_EQ(d.action_approx, 0.0);
  EXPECT_NEAR(d.overlap, 1.0, 1e-9);
}

TEST(DualAction, RandomConstantPairShortTime) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const HermitianOperator h1 = testing::random_hermitian_with_norm(rng, 3, 2.0);
    const HermitianOperator h2 = testing::random_hermitian_with_norm(rng, 3, 2.0);
    const DualAction d = dual_action(constant(h1), constant(h2),
                                     testing::random_state(rng, 3), TimeGrid(0, 0.1, 200));
    const double angle = std::acos(d.overlap);
    EXPECT_GE(d.action_true, angle - 1e-6);
    EXPECT_GE(d.action_approx, angle - 1e-6);
  }
}

TEST(DualAction, CommonEigenstateHasNoAction) {
  // dH = diag(1, 2, 3) commutes with diagonal H1 and H2; psi0 = |0>.
  const HermitianOperator h2 = HermitianOperator::diagonal(Eigen::Vector3d(0.3, -1.0, 2.0));
  const HermitianOperator dh = HermitianOperator::diagonal(Eigen::Vector3d(1.0, 2.0, 3.0));
  const DualAction d = dual_action(constant(h2 + dh), constant(h2),
                                   QuantumState::basis(3, 0), TimeGrid(0, 2, 200));
  // Only integrator error remains: RK4 leaks ~1e-11 out of the eigenstate.
  EXPECT_NEAR(d.action_true, 0.0, 1e-9);
  EXPECT_NEAR(d.action_approx, 0.0, 1e-9);
  EXPECT_NEAR(d.overlap, 1.0, 1e-9);
}

TEST(InvariantResidual, StaticCommutingPair) {
  const HermitianOperator f = HermitianOperator::diagonal(Eigen::Vector3d(1.0, 2.0, 3.0));
  const HermitianOperator h = HermitianOperator::diagonal(Eigen::Vector3d(-1.0, 0.5, 4.0));
  EXPECT_EQ(invariant_residual(constant(f), constant(h), TimeGrid(0, 1, 10)), 0.0);
}

TEST(LewisRiesenfeldPhase, DynamicalPhaseOfStationaryState) {
  const HermitianOperator h = HermitianOperator::diagonal(Eigen::Vector3d(0.0, 1.7, -2.0));
  const QuantumState v = QuantumState::basis(3, 1);
  EXPECT_NEAR(lewis_riesenfeld_phase([&](double) { return v; }, constant(h),
                                     TimeGrid(0, 3, 100)),
              -1.7 * 3.0, 1e-12);
}

TEST(Properties, ActionInvariantUnderIdentityShift) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index dim = 3 + trial % 3;
    const HermitianOperator a = testing::random_hermitian_with_norm(rng, dim, 2.0);
    const HermitianOperator b = testing::random_hermitian_with_norm(rng, dim, 2.0);
    const HamiltonianFn dh = [&](double t) { return a * std::cos(t) + b * t; };
    const HamiltonianFn shifted = [&](double t) {
      return dh(t) + HermitianOperator::identity(dim) * (5.0 * std::sin(3 * t) - 2.0);
    };
    const Trajectory traj =
        propagate([&](double t) { return b * std::sin(t); },
                  testing::random_state(rng, dim), TimeGrid(0, 2, 200));
    EXPECT_NEAR(qsl_action(dh, traj), qsl_action(shifted, traj), 1e-10);
  }
}

// Random piecewise-constant Hamiltonian paths; each piece gets its own grid.
TEST(Properties, SpeedLimitHoldsOnRandomPiecewisePaths) {
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<int> dims(3, 4);
  std::uniform_int_distribution<int> pieces(1, 4);
  std::uniform_real_distribution<double> duration(0.05, 5.0);
  std::uniform_real_distribution<double> strength(0.1, 2.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int dim = dims(rng);
    const int count = pieces(rng);
    const double total = duration(rng);
    std::vector<Segment> segments;
    for (int k = 0; k < count; ++k) {
      const double t0 = total * k / count;
      const double t1 = total * (k + 1) / count;
      segments.push_back(Segment{
          TimeGrid(t0, t1, 400),
          constant(testing::random_hermitian_with_norm(rng, dim, strength(rng))),
          constant(testing::random_hermitian_with_norm(rng, dim, strength(rng)))});
    }
    const DualAction d = dual_action(segments, testing::random_state(rng, dim));
    const double angle = std::acos(d.overlap);
    EXPECT_LE(angle, d.action_true + 1e-6) << "trial " << trial;
    EXPECT_LE(angle, d.action_approx + 1e-6) << "trial " << trial;
  }
}

}  // namespace
}  // namespace qslcert::qsl
