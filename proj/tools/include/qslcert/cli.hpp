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

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qslcert/anneal.hpp"
#include "qslcert/qsl.hpp"
#include "qslcert/stirap.hpp"

namespace qslcert::cli {

enum class Model { Stirap, Anneal };
enum class Format { Csv, Json };

enum ExitStatus : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitSingularity = 2,
  kExitViolation = 3,
  kExitNumerical = 4,  // propagation could not reach the accuracy target
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  bool log_scale = false;

  /// Parses "name:start:stop:count[:log]".
  static SweepSpec parse(const std::string& text);
  std::vector<double> values() const;
};

struct RunConfig {
  Model model = Model::Stirap;
  stirap::StirapParams stirap;
  anneal::AnnealParams anneal;
  int steps = 4000;
  bool certify = false;
  std::optional<SweepSpec> sweep;
  Format format = Format::Csv;
  std::string output;  // empty: standard output
  unsigned threads = 0;
};

/// Real-valued parameters of a model, in output column order.
std::vector<std::string> sweepable_parameters(Model model);

/// Returns a copy of cfg with the named parameter set to value.
RunConfig with_parameter(const RunConfig& cfg, const std::string& name,
                         double value);

/// Every parameter of the resolved model as (column, formatted value).
std::vector<std::pair<std::string, std::string>> parameter_columns(
    const RunConfig& cfg);

enum class Command { Run, SelfTest, Help };

struct Invocation {
  Command command = Command::Help;
  RunConfig config;
  std::string help;
};

/// Parses arguments (without the program name). A --config file supplies
/// defaults that explicit flags override. Throws UsageError.
Invocation parse_config(const std::vector<std::string>& args);

struct Row {
  std::optional<double> swept_value;
  RunConfig config;  // fully resolved parameters for this row
  qsl::BoundReport report;
  bool singular = false;
  std::string error;
};

struct Outcome {
  std::vector<Row> rows;  // grid order
  int status = kExitOk;
  std::vector<std::string> messages;
};

Outcome execute(const RunConfig& cfg);

void write_csv(std::ostream& os, const RunConfig& cfg, std::span<const Row> rows);
void write_json(std::ostream& os, const RunConfig& cfg, std::span<const Row> rows);

struct SelfTestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<SelfTestResult> selftest();

/// Full command-line entry point; returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qslcert::cli
