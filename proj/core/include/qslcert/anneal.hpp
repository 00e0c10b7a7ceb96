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

#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qslcert/core.hpp"
#include "qslcert/qsl.hpp"

// Quantum annealing of the infinite-range Ising model, restricted to the
// maximum-spin (permutation-symmetric) sector of N qubits. The true dynamics
// is A(t) H_P + B(t) H_V; the designed dynamics replaces H_P by its mean-field
// form. hbar = 1.
namespace qslcert::anneal {

enum class Protocol {
  Linear,     // beta linear in t
  SmoothEnd,  // cubic smoothstep, beta'(0) = beta'(T) = 0
};

struct AnnealParams {
  int n_qubits = 100;
  double coupling = 1.0;      // J
  double longitudinal = 1.0;  // h
  double transverse = 1.0;    // Gamma
  double eps_gamma = std::numbers::pi / 8;
  double eps_beta = 0.01;
  double t_final = 1.0;
  Protocol protocol = Protocol::Linear;
  double h0 = 1.0;  // invariant scale

  void validate() const;

  /// Non-fatal advisories: eps_beta not small against 1/sqrt(N), or h/J in
  /// the range where J cos(beta) + h vanishes on the schedule.
  std::vector<std::string> warnings() const;
};

/// Spin-N/2 matrices in the basis |m>, m = -N/2, ..., N/2 (index n = m + N/2).
struct CollectiveSpin {
  HermitianOperator sx;
  HermitianOperator sy;
  HermitianOperator sz;
};

CollectiveSpin collective_ops(int n_qubits);

struct Angles {
  double beta;
  double gamma;
};

struct AngleRates {
  double beta_dot;
  double gamma_dot;
};

/// beta(0) = pi/2, beta(T) = eps_beta, gamma = eps_gamma throughout.
Angles beta_gamma(const AnnealParams& p, double t);
AngleRates angle_rates(const AnnealParams& p, double t);

/// Time at which J cos(beta(t)) + h = 0, if the schedule crosses it.
std::optional<double> singular_time(const AnnealParams& p);

/// M_Z = (N/2) cos(beta).
double mean_field(const AnnealParams& p, double t);

struct Schedules {
  double a;
  double b;
};

/// A(t) = -(gamma' + beta' cot(beta) cot(gamma)) / (2 (J cos(beta) + h)),
/// B(t) = -beta' / (2 Gamma sin(gamma)).
/// Throws ScheduleSingularityError when J cos(beta) + h or sin(gamma) vanish.
Schedules schedules(const AnnealParams& p, double t);

/// Spin coherent state pointing along (sin b cos g, -sin b sin g, cos b).
/// See invariant_operator() for the sign of the azimuth.
QuantumState designed_state(int n_qubits, const Angles& a);
QuantumState designed_state(const AnnealParams& p, double t);

/// Closed-form integrand of the overlap bound,
/// |beta'| cos(b) |cot eps_gamma| / (2 sqrt2 (cos b + h/J))
///   * sqrt(sin^2 b - (sin^2 b - 2 cos^2 b) / N).
double sigma_closed_form(const AnnealParams& p, double t);

/// sigma[dH, psi_2] from raw moments: |A| (2J/N) sqrt(E[X^4] - E[X^2]^2),
/// X = S_Z - M_Z, summed over the binomial distribution of the designed state.
double sigma_moment_oracle(const AnnealParams& p, double t);

struct ProblemHamiltonians {
  HermitianOperator problem;  // H_P = -(2J/N) S_Z^2 - 2h S_Z
  HermitianOperator driver;   // H_V = -2 Gamma S_X
};

/// Operators of one annealing instance with the spin matrices cached.
class Model {
 public:
  explicit Model(AnnealParams params);

  const AnnealParams& params() const noexcept { return params_; }
  const CollectiveSpin& spin() const noexcept { return spin_; }
  const HermitianOperator& problem() const noexcept { return ops_.problem; }
  const HermitianOperator& driver() const noexcept { return ops_.driver; }

  /// -2(2J M_Z / N + h) S_Z + (2J M_Z^2 / N) 1.
  HermitianOperator mean_field_problem(double m_z) const;

  HermitianOperator h1(double t) const;
  HermitianOperator h2(double t) const;
  /// h1 - h2 = -A(t) (2J/N) (S_Z - M_Z)^2.
  HermitianOperator delta_h(double t) const;

  HermitianOperator invariant_operator(const Angles& a) const;
  HermitianOperator invariant_operator(double t) const;

  QuantumState designed_state(double t) const {
    return anneal::designed_state(params_, t);
  }

 private:
  AnnealParams params_;
  CollectiveSpin spin_;
  ProblemHamiltonians ops_;
};

ProblemHamiltonians problem_hamiltonians(const AnnealParams& p);

struct BoundOptions {
  int steps = 4000;  // quadrature grid; also the first propagation attempt
  bool certify = false;
  double convergence_tolerance = 1e-8;
  int max_steps = 1 << 20;
  double violation_tolerance = 1e-5;
};

/// Simpson quadrature of sigma_closed_form over [0, T]. With `certify`, also
/// integrates the moment-based sigma along the designed path and propagates
/// the true Hamiltonian until the final state converges.
qsl::BoundReport bound(const AnnealParams& p, const BoundOptions& options = {});

struct SweepRow {
  double eps_gamma;
  qsl::BoundReport report;
  bool singular = false;
  std::string error;
};

/// bound() across eps_gamma values, in parallel, rows in input order. Rows
/// that hit a schedule singularity become trivial rows with `singular` set.
std::vector<SweepRow> sweep_eps_gamma(const AnnealParams& p,
                                      std::span<const double> eps_gamma_values,
                                      const BoundOptions& options = {},
                                      unsigned threads = 0);

}  // namespace qslcert::anneal
