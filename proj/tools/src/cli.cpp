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

#include "qslcert/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "qslcert/parallel.hpp"

namespace qslcert::cli {

namespace {

constexpr double kStirapViolationTolerance = 1e-6;
constexpr double kAnnealViolationTolerance = 1e-5;

std::string normalize(std::string name) {
  std::replace(name.begin(), name.end(), '-', '_');
  return name;
}

std::string number(double v) { return fmt::format("{:.11e}", v); }

std::string model_name(Model m) { return m == Model::Stirap ? "stirap" : "anneal"; }

std::string protocol_name(anneal::Protocol p) {
  return p == anneal::Protocol::Linear ? "linear" : "smooth";
}

double* parameter_slot(RunConfig& cfg, const std::string& name) {
  if (cfg.model == Model::Stirap) {
    auto& s = cfg.stirap;
    if (name == "delta") return &s.delta;
    if (name == "epsilon") return &s.epsilon;
    if (name == "t_final") return &s.t_final;
    if (name == "omega0") return &s.omega0;
    return nullptr;
  }
  auto& a = cfg.anneal;
  if (name == "j") return &a.coupling;
  if (name == "h") return &a.longitudinal;
  if (name == "gamma_field") return &a.transverse;
  if (name == "eps_gamma") return &a.eps_gamma;
  if (name == "eps_beta") return &a.eps_beta;
  if (name == "t_final") return &a.t_final;
  if (name == "h0") return &a.h0;
  return nullptr;
}

void validate_model(const RunConfig& cfg) {
  if (cfg.model == Model::Stirap) {
    cfg.stirap.validate();
  } else {
    cfg.anneal.validate();
  }
}

qsl::BoundReport evaluate(const RunConfig& cfg) {
  if (cfg.model == Model::Stirap) {
    stirap::RunOptions opts;
    opts.steps = cfg.steps;
    opts.certify = cfg.certify;
    opts.certify_options.violation_tolerance = std::numeric_limits<double>::infinity();
    return stirap::run(cfg.stirap, opts);
  }
  anneal::BoundOptions opts;
  opts.steps = cfg.steps;
  opts.certify = cfg.certify;
  opts.violation_tolerance = std::numeric_limits<double>::infinity();
  return anneal::bound(cfg.anneal, opts);
}

double violation_tolerance(Model m) {
  return m == Model::Stirap ? kStirapViolationTolerance : kAnnealViolationTolerance;
}

}  // namespace

SweepSpec SweepSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4 && parts.size() != 5) {
    throw UsageError("--sweep expects name:start:stop:count[:log], got '" + text + "'");
  }
  SweepSpec spec;
  spec.parameter = normalize(parts[0]);
  try {
    std::size_t used = 0;
    spec.start = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    spec.stop = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
    spec.count = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument(parts[3]);
  } catch (const std::logic_error&) {
    throw UsageError("--sweep has a malformed number in '" + text + "'");
  }
  if (parts.size() == 5) {
    if (parts[4] != "log") throw UsageError("--sweep scale must be 'log', got '" + parts[4] + "'");
    spec.log_scale = true;
  }
  if (spec.count < 2) throw UsageError("--sweep count must be at least 2");
  if (!std::isfinite(spec.start) || !std::isfinite(spec.stop)) {
    throw UsageError("--sweep bounds must be finite");
  }
  if (spec.log_scale && !(spec.start > 0.0 && spec.stop > 0.0)) {
    throw UsageError("--sweep log scale needs positive bounds");
  }
  return spec;
}

std::vector<double> SweepSpec::values() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double u = static_cast<double>(k) / (count - 1);
    out[k] = log_scale ? std::exp(std::log(start) + u * (std::log(stop) - std::log(start)))
                       : start + u * (stop - start);
  }
  out.front() = start;
  out.back() = stop;
  return out;
}

std::vector<std::string> sweepable_parameters(Model model) {
  if (model == Model::Stirap) return {"delta", "epsilon", "t_final", "omega0"};
  return {"j", "h", "gamma_field", "eps_gamma", "eps_beta", "t_final", "h0"};
}

RunConfig with_parameter(const RunConfig& cfg, const std::string& name, double value) {
  RunConfig out = cfg;
  double* slot = parameter_slot(out, normalize(name));
  if (slot == nullptr) {
    throw UsageError("'" + name + "' is not a real-valued " + model_name(cfg.model) +
                     " parameter");
  }
  *slot = value;
  return out;
}

std::vector<std::pair<std::string, std::string>> parameter_columns(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> cols;
  if (cfg.model == Model::Anneal) {
    cols.emplace_back("n", std::to_string(cfg.anneal.n_qubits));
  }
  RunConfig copy = cfg;
  for (const auto& name : sweepable_parameters(cfg.model)) {
    cols.emplace_back(name, number(*parameter_slot(copy, name)));
  }
  if (cfg.model == Model::Anneal) {
    cols.emplace_back("protocol", protocol_name(cfg.anneal.protocol));
  }
  return cols;
}

Invocation parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Quantum speed limit certificates for STIRAP and quantum annealing", "qslcert"};
  app.set_config("--config", "", "Read options from a TOML/INI file; flags override it");
  app.require_subcommand(1, 1);
  app.fallthrough();

  RunConfig cfg;
  std::string sweep_text;
  std::string format_text = "csv";
  std::string protocol_text = "linear";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--steps", cfg.steps, "Time steps (even, >= 2)")->capture_default_str();
    sub->add_flag("--certify", cfg.certify, "Propagate the true dynamics and attach the overlap");
    sub->add_option("--sweep", sweep_text, "Sweep name:start:stop:count[:log]");
    sub->add_option("--format", format_text, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--output", cfg.output, "Output file (default: standard output)");
    sub->add_option("--threads", cfg.threads, "Sweep worker threads (0: all cores)");
  };

  CLI::App* st = app.add_subcommand("stirap", "Three-level STIRAP with detuning");
  st->add_option("--delta", cfg.stirap.delta, "One-photon detuning")->capture_default_str();
  st->add_option("--epsilon", cfg.stirap.epsilon, "Mixing angle, in (0, pi/4]")
      ->capture_default_str();
  st->add_option("--t-final", cfg.stirap.t_final, "Protocol duration")->capture_default_str();
  st->add_option("--omega0", cfg.stirap.omega0, "Invariant scale")->capture_default_str();
  add_common(st);

  CLI::App* an = app.add_subcommand("anneal", "Collective-spin annealing");
  an->set_help_flag("--help", "Print this help message and exit");  // frees --h
  an->add_option("--n", cfg.anneal.n_qubits, "Number of qubits")->capture_default_str();
  an->add_option("--j", cfg.anneal.coupling, "Ising coupling J")->capture_default_str();
  an->add_option("--h", cfg.anneal.longitudinal, "Longitudinal field h")->capture_default_str();
  an->add_option("--gamma-field", cfg.anneal.transverse, "Transverse field Gamma")
      ->capture_default_str();
  an->add_option("--eps-gamma", cfg.anneal.eps_gamma, "Final azimuth, in (0, pi/2]")
      ->capture_default_str();
  an->add_option("--eps-beta", cfg.anneal.eps_beta, "Final polar angle, in (0, pi/4)")
      ->capture_default_str();
  an->add_option("--t-final", cfg.anneal.t_final, "Annealing time")->capture_default_str();
  an->add_option("--h0", cfg.anneal.h0, "Invariant scale")->capture_default_str();
  an->add_option("--protocol", protocol_text, "Polar-angle ramp")
      ->check(CLI::IsMember({"linear", "smooth"}))
      ->capture_default_str();
  add_common(an);

  CLI::App* self = app.add_subcommand("selftest", "Run the built-in consistency checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    Invocation inv;
    inv.command = Command::Help;
    const auto subs = app.get_subcommands();
    inv.help = subs.empty() ? app.help() : subs.front()->help();
    return inv;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  Invocation inv;
  if (self->parsed()) {
    inv.command = Command::SelfTest;
    return inv;
  }
  inv.command = Command::Run;
  cfg.model = st->parsed() ? Model::Stirap : Model::Anneal;
  cfg.format = format_text == "json" ? Format::Json : Format::Csv;
  cfg.anneal.protocol =
      protocol_text == "smooth" ? anneal::Protocol::SmoothEnd : anneal::Protocol::Linear;

  if (cfg.steps < 2 || cfg.steps % 2 != 0) {
    throw UsageError("--steps must be an even integer >= 2 (Simpson quadrature)");
  }
  try {
    validate_model(cfg);
    if (!sweep_text.empty()) {
      cfg.sweep = SweepSpec::parse(sweep_text);
      for (double v : cfg.sweep->values()) validate_model(with_parameter(cfg, cfg.sweep->parameter, v));
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  inv.config = cfg;
  return inv;
}

Outcome execute(const RunConfig& cfg) {
  std::vector<std::optional<double>> points;
  if (cfg.sweep) {
    for (double v : cfg.sweep->values()) points.emplace_back(v);
  } else {
    points.emplace_back(std::nullopt);
  }

  Outcome outcome;
  outcome.rows.resize(points.size());
  parallel_for(
      points.size(),
      [&](std::size_t i) {
        Row& row = outcome.rows[i];
        row.swept_value = points[i];
        row.config = points[i] ? with_parameter(cfg, cfg.sweep->parameter, *points[i]) : cfg;
        row.config.sweep.reset();
        try {
          row.report = evaluate(row.config);
        } catch (const ScheduleSingularityError& e) {
          row.singular = true;
          row.error = fmt::format("{} (t = {:.11e})", e.what(), e.time());
          row.report = qsl::BoundReport{};
          row.report.action = std::numeric_limits<double>::infinity();
          row.report.lower_bound = 0.0;
          row.report.trivial = true;
        }
      },
      cfg.threads);

  const double tol = violation_tolerance(cfg.model);
  for (const Row& row : outcome.rows) {
    const std::string where =
        row.swept_value ? fmt::format(" at {} = {:.11e}", cfg.sweep->parameter, *row.swept_value)
                        : std::string();
    if (row.singular) {
      outcome.messages.push_back("schedule singularity" + where + ": " + row.error);
      outcome.status = std::max<int>(outcome.status, kExitSingularity);
    }
    if (row.report.margin && *row.report.margin < -tol) {
      outcome.messages.push_back(fmt::format("certification violation{}: margin {:.3e}", where,
                                             *row.report.margin));
      outcome.status = kExitViolation;
    }
  }
  if (cfg.model == Model::Anneal) {
    for (const auto& w : cfg.anneal.warnings()) outcome.messages.push_back("warning: " + w);
  }
  return outcome;
}

void write_csv(std::ostream& os, const RunConfig& cfg, std::span<const Row> rows) {
  os << "model,swept_param,swept_value,action,lower_bound,trivial,true_overlap,margin,steps";
  for (const auto& [name, value] : parameter_columns(cfg)) os << ',' << name;
  os << ",singular\n";
  for (const Row& row : rows) {
    const auto& r = row.report;
    os << model_name(cfg.model) << ',' << (cfg.sweep ? cfg.sweep->parameter : "") << ','
       << (row.swept_value ? number(*row.swept_value) : "") << ',' << number(r.action) << ','
       << number(r.lower_bound) << ',' << (r.trivial ? "true" : "false") << ','
       << (r.true_overlap ? number(*r.true_overlap) : "") << ','
       << (r.margin ? number(*r.margin) : "") << ',' << row.config.steps;
    for (const auto& [name, value] : parameter_columns(row.config)) os << ',' << value;
    os << ',' << (row.singular ? "true" : "false") << '\n';
  }
}

void write_json(std::ostream& os, const RunConfig& cfg, std::span<const Row> rows) {
  using nlohmann::json;
  auto num = [](double v) -> json { return std::isfinite(v) ? json(v) : json(nullptr); };
  json out = json::array();
  for (const Row& row : rows) {
    const auto& r = row.report;
    json j = json::object();
    j["model"] = model_name(cfg.model);
    j["swept_param"] = cfg.sweep ? json(cfg.sweep->parameter) : json(nullptr);
    j["swept_value"] = row.swept_value ? num(*row.swept_value) : json(nullptr);
    j["action"] = num(r.action);
    j["lower_bound"] = num(r.lower_bound);
    j["trivial"] = r.trivial;
    j["true_overlap"] = r.true_overlap ? num(*r.true_overlap) : json(nullptr);
    j["margin"] = r.margin ? num(*r.margin) : json(nullptr);
    j["steps"] = row.config.steps;
    json params = json::object();
    RunConfig copy = row.config;
    if (cfg.model == Model::Anneal) params["n"] = copy.anneal.n_qubits;
    for (const auto& name : sweepable_parameters(cfg.model)) {
      params[name] = num(*parameter_slot(copy, name));
    }
    if (cfg.model == Model::Anneal) params["protocol"] = protocol_name(copy.anneal.protocol);
    j["parameters"] = params;
    j["singular"] = row.singular;
    if (!row.error.empty()) j["error"] = row.error;
    json diag = json::object();
    for (const auto& [k, v] : r.diagnostics) diag[k] = num(v);
    j["diagnostics"] = diag;
    out.push_back(std::move(j));
  }
  os << out.dump(2) << '\n';
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Invocation inv;
  try {
    inv = parse_config(args);
  } catch (const UsageError& e) {
    err << "qslcert: " << e.what() << '\n';
    return kExitUsage;
  }

  if (inv.command == Command::Help) {
    out << inv.help;
    return kExitOk;
  }
  if (inv.command == Command::SelfTest) {
    bool ok = true;
    for (const auto& r : selftest()) {
      out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
      ok = ok && r.passed;
    }
    return ok ? kExitOk : kExitViolation;
  }

  const RunConfig& cfg = inv.config;
  Outcome outcome;
  try {
    outcome = execute(cfg);
  } catch (const Error& e) {
    err << "qslcert: " << e.what() << '\n';
    return kExitNumerical;
  }
  for (const auto& m : outcome.messages) err << "qslcert: " << m << '\n';

  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output, std::ios::binary);
    if (!file) {
      err << "qslcert: cannot open output file '" << cfg.output << "'\n";
      return kExitUsage;
    }
  }
  std::ostream& sink = cfg.output.empty() ? out : file;
  if (cfg.format == Format::Json) {
    write_json(sink, cfg, outcome.rows);
  } else {
    write_csv(sink, cfg, outcome.rows);
  }
  return outcome.status;
}

}  // namespace qslcert::cli
