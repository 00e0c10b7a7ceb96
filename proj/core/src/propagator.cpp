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

#include "qslcert/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace qslcert {
namespace {

constexpr Complex kMinusI{0.0, -1.0};

class Sampler {
 public:
  Sampler(const HamiltonianFn& fn, const QuantumState& psi0,
          const TimeGrid& grid, const PropagationOptions& options)
      : fn_(fn), dim_(psi0.dim()) {
    if (options.clip_endpoints) {
      const double clip = options.clip < 0.0 ? grid.dt() / 2 : options.clip;
      lo_ = grid.t_start() + clip;
      hi_ = grid.t_end() - clip;
    } else {
      lo_ = grid.t_start();
      hi_ = grid.t_end();
    }
  }

  HermitianOperator operator()(double t) const {
    const double at = std::clamp(t, lo_, hi_);
    HermitianOperator h = fn_(at);
    if (h.dim() != dim_) {
      throw DimensionError("propagate: Hamiltonian dimension " +
                           std::to_string(h.dim()) + " does not match state " +
                           std::to_string(dim_));
    }
    if (!h.all_finite()) {
      throw ScheduleSingularityError("propagate: non-finite Hamiltonian entry",
                                     at);
    }
    return h;
  }

 private:
  const HamiltonianFn& fn_;
  Eigen::Index dim_;
  double lo_;
  double hi_;
};

// Drives the RK4 loop and hands every new state to `sink`.
template <typename Sink>
double integrate(const HamiltonianFn& hamiltonian_at, const QuantumState& psi0,
                 const TimeGrid& grid, const PropagationOptions& options,
                 Sink&& sink) {
  const Sampler sample(hamiltonian_at, psi0, grid, options);
  const double dt = grid.dt();
  Vector psi = psi0.amplitudes();
  Vector k1, k2, k3, k4, tmp;
  double max_drift = std::abs(psi.norm() - 1.0);

  HermitianOperator h_start = sample(grid.time(0));
  for (int k = 0; k < grid.steps(); ++k) {
    const double t = grid.time(k);
    const HermitianOperator h_mid = sample(t + dt / 2);
    HermitianOperator h_end = sample(grid.time(k + 1));

    k1.noalias() = kMinusI * (h_start.matrix() * psi);
    tmp = psi + (dt / 2) * k1;
    k2.noalias() = kMinusI * (h_mid.matrix() * tmp);
    tmp = psi + (dt / 2) * k2;
    k3.noalias() = kMinusI * (h_mid.matrix() * tmp);
    tmp = psi + dt * k3;
    k4.noalias() = kMinusI * (h_end.matrix() * tmp);
    psi += (dt / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double drift = std::abs(psi.norm() - 1.0);
    if (!std::isfinite(drift) || drift > options.norm_tolerance) {
      throw AccuracyError("propagate: norm drift " + std::to_string(drift) +
                          " at t = " + std::to_string(grid.time(k + 1)) +
                          " with " + std::to_string(grid.steps()) +
                          " steps; increase the step count");
    }
    max_drift = std::max(max_drift, drift);
    sink(psi);
    h_start = std::move(h_end);
  }
  return max_drift;
}

// Propagated states are close to, but not exactly, unit norm; the trajectory
// stores them with the drift tolerance instead of the construction tolerance.
QuantumState store(const Vector& psi, const PropagationOptions& options) {
  Tolerances tol;
  tol.norm = options.norm_tolerance;
  return QuantumState(psi, tol);
}

}  // namespace

TimeGrid::TimeGrid(double t_start, double t_end, int steps)
    : t_start_(t_start), t_end_(t_end), steps_(steps) {
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_end > t_start)) {
    throw GridError("TimeGrid: require finite t_end > t_start");
  }
  if (steps < 1) throw GridError("TimeGrid: steps must be >= 1");
}

Trajectory::Trajectory(TimeGrid grid, std::vector<QuantumState> states,
                       double max_norm_drift)
    : grid_(grid), states_(std::move(states)), max_norm_drift_(max_norm_drift) {
  if (states_.size() != static_cast<std::size_t>(grid_.steps()) + 1) {
    throw GridError("Trajectory: expected steps + 1 states");
  }
}

Trajectory sample_trajectory(const std::function<QuantumState(double)>& state_at,
                             const TimeGrid& grid) {
  std::vector<QuantumState> states;
  states.reserve(grid.steps() + 1);
  for (int k = 0; k <= grid.steps(); ++k) states.push_back(state_at(grid.time(k)));
  return Trajectory(grid, std::move(states));
}

Trajectory propagate(const HamiltonianFn& hamiltonian_at,
                     const QuantumState& psi0, const TimeGrid& grid,
                     const PropagationOptions& options) {
  std::vector<QuantumState> states;
  states.reserve(grid.steps() + 1);
  states.push_back(psi0);
  const double drift =
      integrate(hamiltonian_at, psi0, grid, options,
                [&](const Vector& psi) { states.push_back(store(psi, options)); });
  return Trajectory(grid, std::move(states), drift);
}

FinalState propagate_final(const HamiltonianFn& hamiltonian_at,
                           const QuantumState& psi0, const TimeGrid& grid,
                           const PropagationOptions& options) {
  Vector last = psi0.amplitudes();
  const double drift = integrate(hamiltonian_at, psi0, grid, options,
                                 [&](const Vector& psi) { last = psi; });
  return FinalState{store(last, options), drift, grid.steps()};
}

double convergence_check(const HamiltonianFn& hamiltonian_at,
                         const QuantumState& psi0, const TimeGrid& grid,
                         const PropagationOptions& options) {
  const FinalState coarse = propagate_final(hamiltonian_at, psi0, grid, options);
  const FinalState fine =
      propagate_final(hamiltonian_at, psi0, grid.refined(2), options);
  Tolerances tol;
  tol.overlap_clamp = 2 * options.norm_tolerance;
  return 1.0 - overlap_magnitude(coarse.state, fine.state, tol);
}

ConvergedRun propagate_converged(const HamiltonianFn& hamiltonian_at,
                                 const QuantumState& psi0, const TimeGrid& grid,
                                 double tolerance, int max_steps,
                                 const PropagationOptions& options) {
  Tolerances tol;
  tol.overlap_clamp = 2 * options.norm_tolerance;
  std::optional<FinalState> previous;
  for (int steps = grid.steps(); steps <= max_steps; steps *= 2) {
    const TimeGrid g(grid.t_start(), grid.t_end(), steps);
    std::optional<FinalState> current;
    try {
      current = propagate_final(hamiltonian_at, psi0, g, options);
    } catch (const AccuracyError&) {
      previous.reset();
      continue;
    }
    if (previous) {
      const double deviation =
          1.0 - overlap_magnitude(previous->state, current->state, tol);
      if (deviation <= tolerance) return ConvergedRun{*current, deviation};
    }
    previous = std::move(current);
  }
  throw AccuracyError("propagate_converged: no convergence up to " +
                      std::to_string(max_steps) + " steps");
}

}  // namespace qslcert
