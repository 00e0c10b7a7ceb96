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

#include "qslcert/core.hpp"
#include "qslcert/qsl.hpp"

// Three-level STIRAP (basis |1>, |2>, |3>). The true Hamiltonian carries a
// one-photon detuning on |2>; the approximate one is resonant and admits the
// invariant used to design the pulses. hbar = 1.
namespace qslcert::stirap {

struct StirapParams {
  double delta = 0.0;    // one-photon detuning
  double epsilon = 0.1;  // constant mixing angle gamma, in (0, pi/4]
  double t_final = 10.0;
  double omega0 = 1.0;  // invariant scale; drops out of every observable

  /// Throws DomainError on invalid values.
  void validate() const;

  /// pi / (T epsilon), the peak pulse amplitude for small epsilon.
  double omega_max() const { return std::numbers::pi / (t_final * epsilon); }
};

struct Angles {
  double gamma;
  double beta;
};

struct Pulses {
  double pump;
  double stokes;
};

/// gamma(t) = epsilon, beta(t) = pi t / 2T. Requires 0 <= t <= T.
Angles angles(const StirapParams& p, double t);

/// Pump and Stokes pulses that make the invariant exact for H2. Throws
/// ScheduleSingularityError when tan(gamma) vanishes.
Pulses pulses(const StirapParams& p, double t);

/// (1/2)[[0, P, 0], [P, 2 detuning, S], [0, S, 0]].
HermitianOperator hamiltonian(const Pulses& pulses, double detuning);

HermitianOperator h1(const StirapParams& p, double t);
HermitianOperator h2(const StirapParams& p, double t);

/// h1 - h2 = diag(0, delta, 0), independent of time.
HermitianOperator delta_h(const StirapParams& p);

/// Invariant eigenvector (cos g cos b, -i sin g, -cos g sin b).
QuantumState designed_state(const Angles& a);
QuantumState designed_state(const StirapParams& p, double t);

/// (omega0/2)[[0, cg sb, -i sg], [cg sb, 0, cg cb], [i sg, cg cb, 0]].
HermitianOperator invariant_operator(const Angles& a, double omega0);
HermitianOperator invariant_operator(const StirapParams& p, double t);

struct AnalyticBound {
  double exact;         // cos(min(pi/2, (|delta| T / 2) sin 2 epsilon))
  double approx;        // cos(min(pi/2, pi |delta| / omega_max))
  double stated_closed_form;  // cos(min(pi/2, |delta| T sin 2 epsilon))
};

AnalyticBound analytic_bound(const StirapParams& p);

/// Closed-form action (|delta| T / 2) sin 2 epsilon.
double closed_form_action(const StirapParams& p);

struct RunOptions {
  int steps = 4000;
  bool certify = true;
  qsl::CertifyOptions certify_options;
};

/// Quadrature bound along the designed trajectory and, when certifying, the
/// overlap with the propagated detuned dynamics. Diagnostics carry the closed
/// forms and the transfer fidelities to |3>.
qsl::BoundReport run(const StirapParams& p, const RunOptions& options = {});

}  // namespace qslcert::stirap
