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

#pragma once

#include <functional>
#include <vector>

#include "qslcert/core.hpp"

namespace qslcert {

/// Time-parametrized Hamiltonian, t -> H(t).
using HamiltonianFn = std::function<HermitianOperator(double)>;

/// Uniform grid on [t_start, t_end] with `steps` intervals.
class TimeGrid {
 public:
  TimeGrid(double t_start, double t_end, int steps);

  double t_start() const noexcept { return t_start_; }
  double t_end() const noexcept { return t_end_; }
  int steps() const noexcept { return steps_; }
  double dt() const noexcept { return (t_end_ - t_start_) / steps_; }
  double duration() const noexcept { return t_end_ - t_start_; }

  /// Time of grid point k; point `steps` is exactly t_end.
  double time(int k) const noexcept {
    return k == steps_ ? t_end_ : t_start_ + k * dt();
  }

  TimeGrid refined(int factor) const {
    return TimeGrid(t_start_, t_end_, steps_ * factor);
  }

 private:
  double t_start_;
  double t_end_;
  int steps_;
};

struct PropagationOptions {
  // Largest tolerated | ||psi|| - 1 | along the trajectory.
  double norm_tolerance = 1e-6;
  // Set by models whose schedules diverge at the interval ends. Hamiltonian
  // samples are then taken inside [t_start + clip, t_end - clip].
  bool clip_endpoints = false;
  // Negative selects dt / 2.
  double clip = -1.0;
};

/// States at every grid point; states[k] lives at grid.time(k).
class Trajectory {
 public:
  Trajectory(TimeGrid grid, std::vector<QuantumState> states,
             double max_norm_drift = 0.0);

  const TimeGrid& grid() const noexcept { return grid_; }
  const std::vector<QuantumState>& states() const noexcept { return states_; }
  const QuantumState& front() const { return states_.front(); }
  const QuantumState& back() const { return states_.back(); }
  std::size_t size() const noexcept { return states_.size(); }
  double max_norm_drift() const noexcept { return max_norm_drift_; }

 private:
  TimeGrid grid_;
  std::vector<QuantumState> states_;
  double max_norm_drift_;
};

/// Builds a trajectory by sampling a closed-form state path on the grid.
Trajectory sample_trajectory(const std::function<QuantumState(double)>& state_at,
                             const TimeGrid& grid);

struct FinalState {
  QuantumState state;
  double max_norm_drift;
  int steps;
};

/// Integrates i d|psi>/dt = H(t)|psi> with classical fourth-order Runge-Kutta.
/// No renormalization is applied; the norm drift is monitored instead and an
/// AccuracyError is raised when it exceeds the tolerance.
Trajectory propagate(const HamiltonianFn& hamiltonian_at,
                     const QuantumState& psi0, const TimeGrid& grid,
                     const PropagationOptions& options = {});

/// Same integration as propagate(), keeping only the final state.
FinalState propagate_final(const HamiltonianFn& hamiltonian_at,
                           const QuantumState& psi0, const TimeGrid& grid,
                           const PropagationOptions& options = {});

/// 1 - |<psi_steps(T)|psi_2steps(T)>| between runs at `grid.steps()` and
/// twice as many steps.
double convergence_check(const HamiltonianFn& hamiltonian_at,
                         const QuantumState& psi0, const TimeGrid& grid,
                         const PropagationOptions& options = {});

struct ConvergedRun {
  FinalState final;
  double deviation;
};

/// Doubles the step count, starting from `grid.steps()`, until two successive
/// final states agree to `tolerance` (in the convergence_check measure) or
/// `max_steps` is reached. Runs that fail the norm-drift monitor count as not
/// converged. Throws AccuracyError if no step count up to `max_steps` works.
ConvergedRun propagate_converged(const HamiltonianFn& hamiltonian_at,
                                 const QuantumState& psi0,
                                 const TimeGrid& grid, double tolerance = 1e-8,
                                 int max_steps = 1 << 21,
                                 const PropagationOptions& options = {});

}  // namespace qslcert
