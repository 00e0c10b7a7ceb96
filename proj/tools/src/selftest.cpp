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

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "qslcert/cli.hpp"

namespace qslcert::cli {

namespace {

using Check = std::function<SelfTestResult()>;

SelfTestResult result(std::string name, bool passed, std::string detail) {
  return SelfTestResult{std::move(name), passed, std::move(detail)};
}

SelfTestResult stirap_resonance() {
  stirap::StirapParams p;
  p.delta = 0.0;
  const auto r = stirap::run(p);
  const double ov = r.true_overlap.value_or(0.0);
  return result("stirap_resonance", r.lower_bound == 1.0 && ov >= 1.0 - 1e-7,
                fmt::format("bound {:.12f}, overlap {:.12f}", r.lower_bound, ov));
}

SelfTestResult stirap_action() {
  stirap::StirapParams p;
  p.delta = 0.5;
  const auto r = stirap::run(p, {.steps = 4000, .certify = false, .certify_options = {}});
  const double ref = stirap::closed_form_action(p);
  const double rel = std::abs(r.action - ref) / ref;
  return result("stirap_action_closed_form", rel <= 1e-8,
                fmt::format("relative deviation {:.2e}", rel));
}

SelfTestResult stirap_invariant() {
  const stirap::StirapParams p;
  const double res = qsl::invariant_residual(
      [&](double t) { return stirap::invariant_operator(p, t); },
      [&](double t) { return stirap::h2(p, t); }, TimeGrid(0, p.t_final, 4000));
  const double phase = qsl::lewis_riesenfeld_phase(
      [&](double t) { return stirap::designed_state(p, t); },
      [&](double t) { return stirap::h2(p, t); }, TimeGrid(0, p.t_final, 4000));
  return result("stirap_invariant", res <= 1e-5 && std::abs(phase) <= 1e-6,
                fmt::format("residual {:.2e}, phase {:.2e}", res, phase));
}

SelfTestResult anneal_sigma() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    anneal::AnnealParams p;
    p.n_qubits = 1 + static_cast<int>(u(rng) * 60);
    p.eps_gamma = 0.05 + u(rng) * 1.5;
    p.t_final = 0.5 + 2.0 * u(rng);
    const double t = u(rng) * p.t_final;
    const double a = anneal::sigma_closed_form(p, t);
    const double b = anneal::sigma_moment_oracle(p, t);
    worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 1e-300));
  }
  return result("anneal_sigma_oracle", worst <= 1e-10,
                fmt::format("worst relative deviation {:.2e}", worst));
}

SelfTestResult anneal_invariant() {
  anneal::AnnealParams p;
  p.n_qubits = 10;
  const anneal::Model model(p);
  const double res = qsl::invariant_residual(
      [&](double t) { return model.invariant_operator(t); },
      [&](double t) { return model.h2(t); }, TimeGrid(0, p.t_final, 4000));
  double mf = 0.0;
  for (double t : {0.0, 0.3, 0.7, 1.0}) {
    const QuantumState s = model.designed_state(t);
    mf = std::max(mf, std::abs(expectation(model.spin().sz, s) - anneal::mean_field(p, t)));
  }
  return result("anneal_invariant", res <= 1e-5 && mf <= 1e-9,
                fmt::format("residual {:.2e}, mean-field deviation {:.2e}", res, mf));
}

SelfTestResult anneal_certificate() {
  anneal::AnnealParams p;
  p.n_qubits = 10;
  const auto r = anneal::bound(p, {.certify = true});
  const double margin = r.margin.value_or(-1.0);
  return result("anneal_certificate", margin >= -1e-5,
                fmt::format("bound {:.8f}, overlap {:.8f}", r.lower_bound,
                            r.true_overlap.value_or(0.0)));
}

SelfTestResult random_piecewise() {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  auto herm = [&](int d) {
    Matrix m(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
    }
    return HermitianOperator(Matrix((m + m.adjoint()) / 2.0));
  };
  double worst = -1.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 3 + trial % 3;
    std::vector<qsl::Segment> segs;
    double t0 = 0.0;
    for (int s = 0; s < 3; ++s) {
      const HermitianOperator a = herm(d);
      const HermitianOperator b = a + herm(d) * 0.2;
      segs.push_back({TimeGrid(t0, t0 + 0.5, 400), [a](double) { return a; },
                      [b](double) { return b; }});
      t0 += 0.5;
    }
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(g(rng), g(rng));
    const auto da = qsl::dual_action(segs, QuantumState::normalized(v));
    const double angle = std::acos(std::min(1.0, da.overlap));
    worst = std::max(worst, angle - std::min(da.action_true, da.action_approx));
  }
  return result("qsl_random_piecewise", worst <= 1e-6,
                fmt::format("max(angle - action) {:.2e}", worst));
}

}  // namespace

std::vector<SelfTestResult> selftest() {
  const std::vector<Check> checks = {stirap_resonance, stirap_action,  stirap_invariant,
                                     anneal_sigma,     anneal_invariant, anneal_certificate,
                                     random_piecewise};
  std::vector<SelfTestResult> out;
  for (const auto& c : checks) {
    try {
      out.push_back(c());
    } catch (const std::exception& e) {
      out.push_back({"exception", false, e.what()});
    }
  }
  return out;
}

}  // namespace qslcert::cli
