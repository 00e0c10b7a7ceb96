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

#include "qslcert/anneal.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qslcert/parallel.hpp"
#include "qslcert/propagator.hpp"

namespace qslcert::anneal {
namespace {

using std::numbers::pi;

void require_time(const AnnealParams& p, double t) {
  if (!(t >= 0.0 && t <= p.t_final)) {
    throw DomainError("anneal: time " + std::to_string(t) + " outside [0, T]");
  }
}

// Fraction of the beta ramp completed at t, and its time derivative.
struct Ramp {
  double s;
  double s_dot;
};

Ramp ramp(const AnnealParams& p, double t) {
  const double u = t / p.t_final;
  switch (p.protocol) {
    case Protocol::Linear:
      return Ramp{u, 1.0 / p.t_final};
    case Protocol::SmoothEnd:
      return Ramp{u * u * (3.0 - 2.0 * u), 6.0 * u * (1.0 - u) / p.t_final};
  }
  return Ramp{u, 1.0 / p.t_final};
}

// J cos(beta) + h, rejecting values that make A(t) blow up.
double field_denominator(const AnnealParams& p, double beta, double t) {
  const double d = p.coupling * std::cos(beta) + p.longitudinal;
  const double scale = std::abs(p.coupling) + std::abs(p.longitudinal);
  if (std::abs(d) <= 1e-12 * scale || !std::isfinite(d)) {
    throw ScheduleSingularityError(
        "anneal: J cos(beta) + h vanishes (h/J < 1 regime)", t);
  }
  return d;
}

}  // namespace

void AnnealParams::validate() const {
  if (n_qubits < 1) throw DomainError("anneal: n_qubits must be >= 1");
  if (!(coupling > 0.0) || !std::isfinite(coupling)) {
    throw DomainError("anneal: coupling J must be positive");
  }
  if (!std::isfinite(longitudinal)) {
    throw DomainError("anneal: longitudinal field h must be finite");
  }
  if (!(transverse > 0.0) || !std::isfinite(transverse)) {
    throw DomainError("anneal: transverse field Gamma must be positive");
  }
  if (!(eps_gamma > 0.0 && eps_gamma <= pi / 2)) {
    throw DomainError(
        "anneal: eps_gamma must lie in (0, pi/2]; at 0 the schedules "
        "diverge through 1/sin(gamma) and cot(gamma)");
  }
  if (!(eps_beta > 0.0 && eps_beta < pi / 4)) {
    throw DomainError(
        "anneal: eps_beta must lie in (0, pi/4); at 0 cot(beta) diverges at "
        "the final time");
  }
  if (!(t_final > 0.0) || !std::isfinite(t_final)) {
    throw DomainError("anneal: t_final must be positive and finite");
  }
  if (!std::isfinite(h0)) throw DomainError("anneal: h0 must be finite");
}

std::vector<std::string> AnnealParams::warnings() const {
  std::vector<std::string> out;
  if (n_qubits >= 1 && eps_beta >= 1.0 / std::sqrt(double(n_qubits))) {
    out.push_back("eps_beta is not small against 1/sqrt(N); final fidelity " +
                  std::to_string(std::pow(std::cos(eps_beta / 2), 2 * n_qubits)));
  }
  if (coupling > 0.0) {
    const double ratio = -longitudinal / coupling;
    if (ratio >= 0.0 && ratio <= std::cos(eps_beta)) {
      out.push_back("J cos(beta) + h vanishes at beta = " +
                    std::to_string(std::acos(ratio)) +
                    "; schedules are singular there");
    }
  }
  return out;
}

CollectiveSpin collective_ops(int n_qubits) {
  if (n_qubits < 1) throw DomainError("collective_ops: N must be >= 1");
  const Eigen::Index dim = n_qubits + 1;
  const double s = n_qubits / 2.0;
  Matrix raise = Matrix::Zero(dim, dim);
  Eigen::VectorXd m(dim);
  for (Eigen::Index n = 0; n < dim; ++n) {
    m(n) = -s + double(n);
    if (n + 1 < dim) raise(n + 1, n) = std::sqrt(s * (s + 1) - m(n) * (m(n) + 1));
  }
  const Matrix lower = raise.adjoint();
  return CollectiveSpin{
      HermitianOperator(0.5 * (raise + lower)),
      HermitianOperator(Complex(0.0, -0.5) * (raise - lower)),
      HermitianOperator::diagonal(m),
  };
}

Angles beta_gamma(const AnnealParams& p, double t) {
  require_time(p, t);
  const Ramp r = ramp(p, t);
  return Angles{pi / 2 - (pi / 2 - p.eps_beta) * r.s, p.eps_gamma};
}

AngleRates angle_rates(const AnnealParams& p, double t) {
  require_time(p, t);
  return AngleRates{-(pi / 2 - p.eps_beta) * ramp(p, t).s_dot, 0.0};
}

std::optional<double> singular_time(const AnnealParams& p) {
  // beta decreases monotonically from pi/2 to eps_beta in both protocols.
  const double target = -p.longitudinal / p.coupling;
  if (!(target >= 0.0 && target <= std::cos(p.eps_beta))) return std::nullopt;
  const double beta_star = std::acos(target);
  const double fraction = (pi / 2 - beta_star) / (pi / 2 - p.eps_beta);
  double lo = 0.0;
  double hi = p.t_final;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * p.t_final; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ramp(p, mid).s < fraction ? lo : hi) = mid;
  }
  return p.protocol == Protocol::Linear ? fraction * p.t_final : 0.5 * (lo + hi);
}

double mean_field(const AnnealParams& p, double t) {
  return 0.5 * p.n_qubits * std::cos(beta_gamma(p, t).beta);
}

Schedules schedules(const AnnealParams& p, double t) {
  const Angles a = beta_gamma(p, t);
  const AngleRates r = angle_rates(p, t);
  const double sin_gamma = std::sin(a.gamma);
  if (sin_gamma == 0.0) {
    throw ScheduleSingularityError("anneal: sin(gamma) vanishes", t);
  }
  const double denom = field_denominator(p, a.beta, t);
  const double cot_beta = std::cos(a.beta) / std::sin(a.beta);
  const double cot_gamma = std::cos(a.gamma) / sin_gamma;
  const double sa = -(r.gamma_dot + r.beta_dot * cot_beta * cot_gamma) / (2.0 * denom);
  const double sb = -r.beta_dot / (2.0 * p.transverse * sin_gamma);
  if (!std::isfinite(sa) || !std::isfinite(sb)) {
    throw ScheduleSingularityError("anneal: non-finite schedule", t);
  }
  return Schedules{sa, sb};
}

QuantumState designed_state(int n_qubits, const Angles& a) {
  const int n_total = n_qubits;
  const double c = std::cos(a.beta / 2);
  const double s = std::sin(a.beta / 2);
  const double log_c = std::log(std::abs(c));
  const double log_s = std::log(std::abs(s));
  const double lg_n = std::lgamma(n_total + 1.0);
  Vector v(n_total + 1);
  for (int n = 0; n <= n_total; ++n) {
    const int down = n_total - n;
    double magnitude;
    if ((c == 0.0 && n > 0) || (s == 0.0 && down > 0)) {
      magnitude = 0.0;
    } else {
      const double log_binom =
          lg_n - std::lgamma(n + 1.0) - std::lgamma(down + 1.0);
      magnitude = std::exp(0.5 * log_binom + (n > 0 ? n * log_c : 0.0) +
                           (down > 0 ? down * log_s : 0.0));
    }
    const double sign = ((c < 0.0 && n % 2 == 1) != (s < 0.0 && down % 2 == 1)) ? -1.0 : 1.0;
    v(n) = std::polar(sign * magnitude, -down * a.gamma);
  }
  return QuantumState(std::move(v));
}

QuantumState designed_state(const AnnealParams& p, double t) {
  return designed_state(p.n_qubits, beta_gamma(p, t));
}

double sigma_closed_form(const AnnealParams& p, double t) {
  const Angles a = beta_gamma(p, t);
  const AngleRates r = angle_rates(p, t);
  field_denominator(p, a.beta, t);
  const double cb = std::cos(a.beta);
  const double sb2 = std::sin(a.beta) * std::sin(a.beta);
  const double cot_gamma = std::cos(p.eps_gamma) / std::sin(p.eps_gamma);
  const double radicand = sb2 - (sb2 - 2.0 * cb * cb) / p.n_qubits;
  const double value = std::abs(r.beta_dot) * std::abs(cb) * std::abs(cot_gamma) /
                       (2.0 * std::numbers::sqrt2 *
                        std::abs(cb + p.longitudinal / p.coupling)) *
                       std::sqrt(std::max(0.0, radicand));
  if (!std::isfinite(value)) {
    throw ScheduleSingularityError("anneal: non-finite integrand", t);
  }
  return value;
}

double sigma_moment_oracle(const AnnealParams& p, double t) {
  const Schedules sch = schedules(p, t);
  const QuantumState phi = designed_state(p, t);
  const double m_z = mean_field(p, t);
  const int n_total = p.n_qubits;
  double m2 = 0.0;
  double m4 = 0.0;
  for (int n = 0; n <= n_total; ++n) {
    const double weight = std::norm(phi[n]);
    const double x = (-0.5 * n_total + n) - m_z;
    const double x2 = x * x;
    m2 += weight * x2;
    m4 += weight * x2 * x2;
  }
  return std::abs(sch.a) * (2.0 * p.coupling / n_total) *
         std::sqrt(std::max(0.0, m4 - m2 * m2));
}

ProblemHamiltonians problem_hamiltonians(const AnnealParams& p) {
  const CollectiveSpin spin = collective_ops(p.n_qubits);
  const Matrix& sz = spin.sz.matrix();
  return ProblemHamiltonians{
      HermitianOperator(-(2.0 * p.coupling / p.n_qubits) * sz * sz -
                        2.0 * p.longitudinal * sz),
      spin.sx * (-2.0 * p.transverse),
  };
}

Model::Model(AnnealParams params)
    : params_(params),
      spin_(collective_ops(params.n_qubits)),
      ops_(problem_hamiltonians(params)) {
  params_.validate();
}

HermitianOperator Model::mean_field_problem(double m_z) const {
  const double n = params_.n_qubits;
  const double j = params_.coupling;
  return spin_.sz * (-2.0 * (2.0 * j * m_z / n + params_.longitudinal)) +
         HermitianOperator::identity(spin_.sz.dim()) * (2.0 * j * m_z * m_z / n);
}

HermitianOperator Model::h1(double t) const {
  const Schedules s = schedules(params_, t);
  return ops_.problem * s.a + ops_.driver * s.b;
}

HermitianOperator Model::h2(double t) const {
  const Schedules s = schedules(params_, t);
  return mean_field_problem(mean_field(params_, t)) * s.a + ops_.driver * s.b;
}

HermitianOperator Model::delta_h(double t) const {
  const Schedules s = schedules(params_, t);
  return (ops_.problem - mean_field_problem(mean_field(params_, t))) * s.a;
}

// The azimuth enters with a minus sign so that the designed state and this
// invariant solve the mean-field dynamics under the A(t), B(t) above with the
// standard S_Y = (S_+ - S_-) / 2i.
HermitianOperator Model::invariant_operator(const Angles& a) const {
  const double sb = std::sin(a.beta);
  return (spin_.sx * (sb * std::cos(a.gamma)) -
          spin_.sy * (sb * std::sin(a.gamma)) + spin_.sz * std::cos(a.beta)) *
         params_.h0;
}

HermitianOperator Model::invariant_operator(double t) const {
  return invariant_operator(beta_gamma(params_, t));
}

qsl::BoundReport bound(const AnnealParams& p, const BoundOptions& options) {
  p.validate();
  if (const auto t_sing = singular_time(p)) {
    throw ScheduleSingularityError(
        "anneal: J cos(beta) + h vanishes on the schedule", *t_sing);
  }
  const TimeGrid grid(0.0, p.t_final, options.steps);
  if (grid.steps() % 2 != 0) {
    throw GridError("anneal::bound: step count must be even");
  }
  std::vector<double> sigma(grid.steps() + 1);
  for (int k = 0; k <= grid.steps(); ++k) {
    sigma[k] = sigma_closed_form(p, grid.time(k));
  }
  qsl::BoundReport report =
      qsl::lower_bound_from_action(qsl::simpson(sigma, grid.dt()));

  const double final_cos = std::cos(p.eps_beta / 2);
  report.diagnostics["designed_fidelity"] = std::pow(final_cos, 2 * p.n_qubits);

  if (options.certify) {
    const Model model(p);
    const HamiltonianFn true_h = [&model](double t) { return model.h1(t); };
    const HamiltonianFn delta = [&model](double t) { return model.delta_h(t); };
    const qsl::StateFn designed = [&model](double t) {
      return model.designed_state(t);
    };
    report.diagnostics["action_moment_quadrature"] =
        qsl::qsl_action(delta, designed, grid);

    const QuantumState psi0 = model.designed_state(0.0);
    const ConvergedRun run =
        propagate_converged(true_h, psi0, grid, options.convergence_tolerance,
                            options.max_steps);
    Tolerances tol;
    tol.overlap_clamp = 2e-6;
    const QuantumState target = model.designed_state(p.t_final);
    qsl::attach_overlap(report, overlap_magnitude(run.final.state, target, tol),
                        options.violation_tolerance);
    report.diagnostics["propagation_steps"] = run.final.steps;
    report.diagnostics["convergence_deviation"] = run.deviation;
    report.diagnostics["norm_drift"] = run.final.max_norm_drift;
    report.diagnostics["true_fidelity"] = std::norm(run.final.state[p.n_qubits]);
  }
  return report;
}

std::vector<SweepRow> sweep_eps_gamma(const AnnealParams& p,
                                      std::span<const double> eps_gamma_values,
                                      const BoundOptions& options,
                                      unsigned threads) {
  std::vector<SweepRow> rows(eps_gamma_values.size());
  parallel_for(
      rows.size(),
      [&](std::size_t i) {
        AnnealParams q = p;
        q.eps_gamma = eps_gamma_values[i];
        SweepRow& row = rows[i];
        row.eps_gamma = q.eps_gamma;
        try {
          row.report = bound(q, options);
        } catch (const ScheduleSingularityError& e) {
          row.report = qsl::BoundReport{};
          row.report.action = std::numeric_limits<double>::infinity();
          row.report.lower_bound = 0.0;
          row.report.trivial = true;
          row.singular = true;
          row.error = e.what();
        }
      },
      threads);
  return rows;
}

}  // namespace qslcert::anneal
