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
#include <map>
#include <optional>
#include <span>
#include <string>

#include "qslcert/core.hpp"
#include "qslcert/propagator.hpp"

namespace qslcert::qsl {

using StateFn = std::function<QuantumState(double)>;

/// Two-sided speed-limit certificate: the action budget, the overlap bound it
/// implies, and (when the true dynamics was propagated) the realized overlap.
struct BoundReport {
  double action = 0.0;
  double lower_bound = 1.0;
  bool trivial = false;
  std::optional<double> true_overlap;
  std::optional<double> margin;
  // Named auxiliary numbers (closed forms, fidelities, step counts). Ordered so
  // serialized output is deterministic.
  std::map<std::string, double> diagnostics;
};

/// Composite Simpson rule over equally spaced samples. The number of intervals
/// (samples.size() - 1) must be even and positive.
double simpson(std::span<const double> samples, double dt);

/// Action integral of sigma[dH(t), psi(t)] along a stored trajectory.
double qsl_action(const HamiltonianFn& delta_h_at, const Trajectory& traj);

/// Action integral along a closed-form state path sampled on `grid`.
double qsl_action(const HamiltonianFn& delta_h_at, const StateFn& state_at,
                  const TimeGrid& grid);

/// cos(action), saturating to the trivial bound 0 once action >= pi/2.
BoundReport lower_bound_from_action(double action);

/// Fills true_overlap and margin. Throws CertificationViolationError when
/// margin < -violation_tolerance, since the speed limit is a theorem.
void attach_overlap(BoundReport& report, double true_overlap,
                    double violation_tolerance = 1e-6);

struct CertifyOptions {
  PropagationOptions propagation;
  double violation_tolerance = 1e-6;
};

struct Certificate {
  BoundReport report;
  QuantumState true_final;
};

/// Action along the designed trajectory (approximate branch) plus a direct
/// propagation of the true Hamiltonian from designed.front().
Certificate certify_detailed(const HamiltonianFn& h1_at,
                             const HamiltonianFn& h2_at,
                             const Trajectory& designed, const TimeGrid& grid,
                             const CertifyOptions& options = {});

BoundReport certify(const HamiltonianFn& h1_at, const HamiltonianFn& h2_at,
                    const Trajectory& designed, const TimeGrid& grid,
                    const CertifyOptions& options = {});

/// One interval of a piecewise-defined Hamiltonian pair.
struct Segment {
  TimeGrid grid;
  HamiltonianFn h1;
  HamiltonianFn h2;
};

struct DualAction {
  double action_true = 0.0;    // along psi_1, generated by h1
  double action_approx = 0.0;  // along psi_2, generated by h2
  double overlap = 1.0;        // |<psi_1(T)|psi_2(T)>|
};

/// Propagates both branches from psi0 and integrates both actions. Segments
/// are consecutive; each is integrated on its own grid so that Hamiltonians
/// may jump at segment boundaries.
DualAction dual_action(std::span<const Segment> segments,
                       const QuantumState& psi0,
                       const PropagationOptions& options = {});

DualAction dual_action(const HamiltonianFn& h1_at, const HamiltonianFn& h2_at,
                       const QuantumState& psi0, const TimeGrid& grid,
                       const PropagationOptions& options = {});

/// max_k ||i dF/dt - [H2, F]||_F / ||F||_F over interior grid points, with
/// dF/dt from central differences on the grid.
double invariant_residual(const HamiltonianFn& f_at, const HamiltonianFn& h2_at,
                          const TimeGrid& grid);

/// Integral of <phi|(i d/dt - H2)|phi> over the grid, in radians.
double lewis_riesenfeld_phase(const StateFn& phi_at, const HamiltonianFn& h2_at,
                              const TimeGrid& grid);

}  // namespace qslcert::qsl
