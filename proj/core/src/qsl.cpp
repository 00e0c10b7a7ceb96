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
#include <string>
#include <vector>

namespace qslcert::qsl {
namespace {

HamiltonianFn difference(const HamiltonianFn& h1_at, const HamiltonianFn& h2_at) {
  return [&h1_at, &h2_at](double t) { return h1_at(t) - h2_at(t); };
}

double sigma_sample(const HamiltonianFn& delta_h_at, const QuantumState& s,
                    double t) {
  const HermitianOperator dh = delta_h_at(t);
  if (!dh.all_finite()) {
    throw ScheduleSingularityError("qsl_action: non-finite dH", t);
  }
  const double sigma = variance_sigma(dh, s);
  if (!std::isfinite(sigma)) {
    throw ScheduleSingularityError("qsl_action: non-finite sigma", t);
  }
  return sigma;
}

void require_even(const TimeGrid& grid) {
  if (grid.steps() % 2 != 0) {
    throw GridError("Simpson quadrature needs an even step count, got " +
                    std::to_string(grid.steps()));
  }
}

}  // namespace

double simpson(std::span<const double> samples, double dt) {
  const std::size_t n = samples.size();
  if (n < 3 || (n - 1) % 2 != 0) {
    throw GridError("simpson: need an even, positive number of intervals");
  }
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    (k % 2 == 1 ? odd : even) += samples[k];
  }
  return dt / 3.0 * (samples.front() + 4.0 * odd + 2.0 * even + samples.back());
}

double qsl_action(const HamiltonianFn& delta_h_at, const Trajectory& traj) {
  const TimeGrid& grid = traj.grid();
  require_even(grid);
  std::vector<double> sigma(traj.size());
  for (int k = 0; k <= grid.steps(); ++k) {
    sigma[k] = sigma_sample(delta_h_at, traj.states()[k], grid.time(k));
  }
  return simpson(sigma, grid.dt());
}

double qsl_action(const HamiltonianFn& delta_h_at, const StateFn& state_at,
                  const TimeGrid& grid) {
  require_even(grid);
  std::vector<double> sigma(grid.steps() + 1);
  for (int k = 0; k <= grid.steps(); ++k) {
    const double t = grid.time(k);
    sigma[k] = sigma_sample(delta_h_at, state_at(t), t);
  }
  return simpson(sigma, grid.dt());
}

BoundReport lower_bound_from_action(double action) {
  if (!(action >= 0.0)) {
    throw DomainError("lower_bound_from_action: action must be >= 0");
  }
  BoundReport report;
  report.action = action;
  if (action >= std::numbers::pi / 2) {
    report.lower_bound = 0.0;
    report.trivial = true;
  } else {
    report.lower_bound = std::cos(action);
  }
  return report;
}

void attach_overlap(BoundReport& report, double true_overlap,
                    double violation_tolerance) {
  report.true_overlap = true_overlap;
  report.margin = true_overlap - report.lower_bound;
  if (*report.margin < -violation_tolerance) {
    throw CertificationViolationError(
        "certify: true overlap " + std::to_string(true_overlap) +
        " below the lower bound " + std::to_string(report.lower_bound));
  }
}

Certificate certify_detailed(const HamiltonianFn& h1_at,
                             const HamiltonianFn& h2_at,
                             const Trajectory& designed, const TimeGrid& grid,
                             const CertifyOptions& options) {
  const TimeGrid& dg = designed.grid();
  if (dg.steps() != grid.steps() || dg.t_start() != grid.t_start() ||
      dg.t_end() != grid.t_end()) {
    throw GridError("certify: designed trajectory does not cover the grid");
  }
  const HamiltonianFn delta = difference(h1_at, h2_at);
  BoundReport report = lower_bound_from_action(qsl_action(delta, designed));

  FinalState truth =
      propagate_final(h1_at, designed.front(), grid, options.propagation);
  Tolerances tol;
  tol.overlap_clamp = 2 * options.propagation.norm_tolerance;
  attach_overlap(report, overlap_magnitude(truth.state, designed.back(), tol),
                 options.violation_tolerance);
  report.diagnostics["norm_drift"] = truth.max_norm_drift;
  return Certificate{std::move(report), std::move(truth.state)};
}

BoundReport certify(const HamiltonianFn& h1_at, const HamiltonianFn& h2_at,
                    const Trajectory& designed, const TimeGrid& grid,
                    const CertifyOptions& options) {
  return certify_detailed(h1_at, h2_at, designed, grid, options).report;
}

DualAction dual_action(std::span<const Segment> segments,
                       const QuantumState& psi0,
                       const PropagationOptions& options) {
  if (segments.empty()) throw GridError("dual_action: no segments");
  DualAction result;
  QuantumState psi1 = psi0;
  QuantumState psi2 = psi0;
  for (const Segment& seg : segments) {
    const HamiltonianFn delta = difference(seg.h1, seg.h2);
    const Trajectory t1 = propagate(seg.h1, psi1, seg.grid, options);
    const Trajectory t2 = propagate(seg.h2, psi2, seg.grid, options);
    result.action_true += qsl_action(delta, t1);
    result.action_approx += qsl_action(delta, t2);
    psi1 = t1.back();
    psi2 = t2.back();
  }
  Tolerances tol;
  tol.overlap_clamp = 2 * options.norm_tolerance;
  result.overlap = overlap_magnitude(psi1, psi2, tol);
  return result;
}

DualAction dual_action(const HamiltonianFn& h1_at, const HamiltonianFn& h2_at,
                       const QuantumState& psi0, const TimeGrid& grid,
                       const PropagationOptions& options) {
  const Segment seg{grid, h1_at, h2_at};
  return dual_action(std::span<const Segment>(&seg, 1), psi0, options);
}

double invariant_residual(const HamiltonianFn& f_at, const HamiltonianFn& h2_at,
                          const TimeGrid& grid) {
  if (grid.steps() < 2) {
    throw GridError("invariant_residual: need at least one interior point");
  }
  const double dt = grid.dt();
  const Complex i{0.0, 1.0};
  double worst = 0.0;
  for (int k = 1; k < grid.steps(); ++k) {
    const double t = grid.time(k);
    const HermitianOperator f = f_at(t);
    const HermitianOperator h = h2_at(t);
    const HermitianOperator f_prev = f_at(grid.time(k - 1));
    const HermitianOperator f_next = f_at(grid.time(k + 1));
    if (!f.all_finite() || !h.all_finite() || !f_prev.all_finite() ||
        !f_next.all_finite()) {
      throw ScheduleSingularityError("invariant_residual: non-finite entry", t);
    }
    const Matrix dfdt = (f_next.matrix() - f_prev.matrix()) / (2.0 * dt);
    const Matrix commutator =
        h.matrix() * f.matrix() - f.matrix() * h.matrix();
    const double scale = f.matrix().norm();
    if (scale == 0.0) continue;
    worst = std::max(worst, (i * dfdt - commutator).norm() / scale);
  }
  return worst;
}

double lewis_riesenfeld_phase(const StateFn& phi_at, const HamiltonianFn& h2_at,
                              const TimeGrid& grid) {
  require_even(grid);
  const int n = grid.steps();
  const double dt = grid.dt();
  std::vector<Vector> phi;
  phi.reserve(n + 1);
  for (int k = 0; k <= n; ++k) phi.push_back(phi_at(grid.time(k)).amplitudes());

  const Complex i{0.0, 1.0};
  std::vector<double> integrand(n + 1);
  for (int k = 0; k <= n; ++k) {
    // Second-order differences everywhere: central inside, one-sided at ends.
    Vector dphi;
    if (k == 0) {
      dphi = (-3.0 * phi[0] + 4.0 * phi[1] - phi[2]) / (2.0 * dt);
    } else if (k == n) {
      dphi = (3.0 * phi[n] - 4.0 * phi[n - 1] + phi[n - 2]) / (2.0 * dt);
    } else {
      dphi = (phi[k + 1] - phi[k - 1]) / (2.0 * dt);
    }
    const double t = grid.time(k);
    const HermitianOperator h = h2_at(t);
    if (!h.all_finite()) {
      throw ScheduleSingularityError("lewis_riesenfeld_phase: non-finite H2", t);
    }
    const Complex value = phi[k].dot(i * dphi - h.apply(phi[k]));
    if (!std::isfinite(value.real())) {
      throw ScheduleSingularityError("lewis_riesenfeld_phase: non-finite", t);
    }
    integrand[k] = value.real();
  }
  return simpson(integrand, dt);
}

}  // namespace qslcert::qsl
