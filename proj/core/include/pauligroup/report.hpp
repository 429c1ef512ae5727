// Copyright 2026 The pauligroup Authors
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

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pauligroup/optimizers.hpp"

namespace pauligroup {

/// Monte Carlo statistics of the energy estimator over repeated runs.
struct SampleSummary {
  std::size_t budget = 0;
  std::size_t repetitions = 0;
  std::string sampler;
  std::vector<std::size_t> shots_per_group;
  double empirical_mean = 0.0;
  /// Sample variance of the R energy estimates.
  double empirical_variance = 0.0;
  /// Unit-budget variance implied by the integer shot counts, divided by M.
  double analytic_variance = 0.0;
  double reference_energy = 0.0;

  friend bool operator==(const SampleSummary&, const SampleSummary&) = default;
};

struct MethodResult {
  /// Unit-budget estimator variance; empty when the method failed.
  std::optional<double> variance;
  std::string error;
  std::size_t groups = 0;
  /// Optimization variables: group count for allocation methods, free
  /// split coefficients for coefficient splitting, 0 otherwise.
  std::size_t variables = 0;
  std::vector<double> allocation;
  std::vector<TraceEntry> trace;
  bool regularized = false;
  std::optional<double> seconds;
  std::optional<SampleSummary> sample;

  friend bool operator==(const MethodResult&, const MethodResult&) = default;
};

struct Report {
  std::optional<std::string> hamiltonian;
  std::optional<std::string> relation;
  std::optional<std::size_t> n_qubits;
  std::optional<std::size_t> n_terms;
  std::optional<double> energy;
  std::map<std::string, MethodResult> methods;
  /// Emit wall-clock fields; off by default so reports are reproducible.
  bool timing = false;

  friend bool operator==(const Report&, const Report&) = default;
};

/// JSON with sorted keys; an empty report is {"methods":{}}.
std::string write_report(const Report& r, int indent = -1);
/// Inverse of write_report. Throws ParseError on malformed input.
Report parse_report(std::string_view json);

}  // namespace pauligroup
