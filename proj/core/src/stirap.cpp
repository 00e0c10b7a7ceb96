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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qslcert/propagator.hpp"

namespace qslcert::stirap {
namespace {

using std::numbers::pi;

void require_time(const StirapParams& p, double t) {
  if (!(t >= 0.0 && t <= p.t_final)) {
    throw DomainError("stirap: time " + std::to_string(t) +
                      " outside [0, T]");
  }
}

double saturated_cos(double action) {
  return std::cos(std::min(pi / 2, action));
}

}  // namespace

void StirapParams::validate() const {
  if (!std::isfinite(delta)) throw DomainError("stirap: delta must be finite");
  if (!(epsilon > 0.0 && epsilon <= pi / 4)) {
    throw DomainError(
        "stirap: epsilon must lie in (0, pi/4]; epsilon = 0 makes cot(gamma) "
        "and the pulses diverge");
  }
  if (!(t_final > 0.0) || !std::isfinite(t_final)) {
    throw DomainError("stirap: t_final must be positive and finite");
  }
  if (!std::isfinite(omega0)) throw DomainError("stirap: omega0 must be finite");
}

Angles angles(const StirapParams& p, double t) {
  require_time(p, t);
  return Angles{p.epsilon, pi * t / (2.0 * p.t_final)};
}

Pulses pulses(const StirapParams& p, double t) {
  const Angles a = angles(p, t);
  const double gamma_dot = 0.0;
  const double beta_dot = pi / (2.0 * p.t_final);
  const double tan_gamma = std::tan(a.gamma);
  if (tan_gamma == 0.0 || !std::isfinite(tan_gamma)) {
    throw ScheduleSingularityError("stirap: cot(gamma) diverges", t);
  }
  const double cot_gamma = 1.0 / tan_gamma;
  return Pulses{
      2.0 * (beta_dot * cot_gamma * std::sin(a.beta) + gamma_dot * std::cos(a.beta)),
      2.0 * (beta_dot * cot_gamma * std::cos(a.beta) + gamma_dot * std::sin(a.beta)),
  };
}

HermitianOperator hamiltonian(const Pulses& pl, double detuning) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 1) = m(1, 0) = 0.5 * pl.pump;
  m(1, 2) = m(2, 1) = 0.5 * pl.stokes;
  m(1, 1) = detuning;
  return HermitianOperator(std::move(m));
}

HermitianOperator h1(const StirapParams& p, double t) {
  return hamiltonian(pulses(p, t), p.delta);
}

HermitianOperator h2(const StirapParams& p, double t) {
  return hamiltonian(pulses(p, t), 0.0);
}

HermitianOperator delta_h(const StirapParams& p) {
  return HermitianOperator::diagonal(Eigen::Vector3d(0.0, p.delta, 0.0));
}

QuantumState designed_state(const Angles& a) {
  Vector v(3);
  v << std::cos(a.gamma) * std::cos(a.beta),
      Complex(0.0, -std::sin(a.gamma)),
      -std::cos(a.gamma) * std::sin(a.beta);
  return QuantumState(std::move(v));
}

QuantumState designed_state(const StirapParams& p, double t) {
  return designed_state(angles(p, t));
}

HermitianOperator invariant_operator(const Angles& a, double omega0) {
  const double cg = std::cos(a.gamma);
  const double sg = std::sin(a.gamma);
  const double cb = std::cos(a.beta);
  const double sb = std::sin(a.beta);
  Matrix m = Matrix::Zero(3, 3);
  m(0, 1) = m(1, 0) = cg * sb;
  m(1, 2) = m(2, 1) = cg * cb;
  m(0, 2) = Complex(0.0, -sg);
  m(2, 0) = Complex(0.0, sg);
  return HermitianOperator(0.5 * omega0 * m);
}

HermitianOperator invariant_operator(const StirapParams& p, double t) {
  return invariant_operator(angles(p, t), p.omega0);
}

double closed_form_action(const StirapParams& p) {
  return 0.5 * std::abs(p.delta) * p.t_final * std::sin(2.0 * p.epsilon);
}

AnalyticBound analytic_bound(const StirapParams& p) {
  p.validate();
  const double action = closed_form_action(p);
  return AnalyticBound{
      saturated_cos(action),
      saturated_cos(pi * std::abs(p.delta) / p.omega_max()),
      saturated_cos(2.0 * action),
  };
}

qsl::BoundReport run(const StirapParams& p, const RunOptions& options) {
  p.validate();
  const TimeGrid grid(0.0, p.t_final, options.steps);
  const Trajectory designed = sample_trajectory(
      [&p](double t) { return designed_state(p, t); }, grid);
  const HamiltonianFn true_h = [&p](double t) { return h1(p, t); };
  const HamiltonianFn approx_h = [&p](double t) { return h2(p, t); };
  const QuantumState target = QuantumState::basis(3, 2);

  qsl::BoundReport report;
  if (options.certify) {
    qsl::Certificate cert = qsl::certify_detailed(
        true_h, approx_h, designed, grid, options.certify_options);
    report = std::move(cert.report);
    report.diagnostics["true_fidelity"] =
        std::norm(inner_product(target, cert.true_final));
  } else {
    const HamiltonianFn dh = [&p](double) { return delta_h(p); };
    report = qsl::lower_bound_from_action(qsl::qsl_action(dh, designed));
  }

  const AnalyticBound closed = analytic_bound(p);
  report.diagnostics["analytic_exact"] = closed.exact;
  report.diagnostics["analytic_approx"] = closed.approx;
  report.diagnostics["stated_closed_form"] = closed.stated_closed_form;
  report.diagnostics["action_closed_form"] = closed_form_action(p);
  report.diagnostics["stated_closed_form_action"] = 2.0 * closed_form_action(p);
  report.diagnostics["designed_fidelity"] =
      std::norm(inner_product(target, designed.back()));
  report.diagnostics["omega_max"] = p.omega_max();
  return report;
}

}  // namespace qslcert::stirap
