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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pauligroup/covariance.hpp"
#include "pauligroup/ground_state.hpp"
#include "pauligroup/grouping.hpp"
#include "pauligroup/hamiltonian.hpp"
#include "pauligroup/optimizers.hpp"
#include "pauligroup/report.hpp"
#include "pauligroup/statevector.hpp"

namespace pauligroup {

enum class Method { kLF, kSI, kIMA, kGMA, kICS };
inline constexpr std::array<Method, 5> kAllMethods = {
    Method::kLF, Method::kSI, Method::kIMA, Method::kGMA, Method::kICS};

/// "LF", "SI", "IMA", "GMA", "ICS".
std::string_view to_string(Method m);
/// Case-insensitive inverse of to_string; ValidationError otherwise.
Method parse_method(std::string_view text);

enum class Sampler { kCollapse, kRotation };
std::string_view to_string(Sampler s);
Sampler parse_sampler(std::string_view text);

struct RunConfig {
  std::filesystem::path hamiltonian;
  /// State to evaluate on; the ground state is computed when empty.
  std::optional<std::filesystem::path> wavefunction;
  /// Optional approximate state used only to choose groups' coefficients and
  /// allocations; variances are then evaluated on the main state.
  std::optional<std::filesystem::path> proxy_wavefunction;
  Relation relation = Relation::kFull;
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  ImaOptions ima;
  GmaOptions gma;
  IcsOptions ics;
  LanczosOptions lanczos;
  /// Total shots M; 0 means analytic results only.
  std::size_t budget = 0;
  std::size_t repetitions = 200;
  std::uint64_t seed = 0;
  Sampler sampler = Sampler::kCollapse;
  bool timing = false;
  /// Worker threads for independent methods; 0 picks the hardware count.
  std::size_t threads = 0;
};

/// Groups, split coefficients and allocation chosen by one method.
struct MethodPlan {
  Method method = Method::kSI;
  FragmentSet fragments;
  std::vector<double> m;
  /// True when each term is estimated by averaging all of its measurements
  /// over every group containing it; false when each group estimates its own
  /// fragment with the set's split coefficients.
  bool averaged = false;
  /// Unit-budget variance on the state the plan was made with.
  double variance = 0.0;
  std::size_t variables = 0;
  OptimizerTrace trace;
};

/// Shared grouping state for planning several methods on one state.
class Planner {
 public:
  Planner(const Hamiltonian& h, Relation relation,
          const CovarianceOracle& oracle);

  /// Computes what the listed methods need. Call before planning from
  /// several threads.
  void prepare(std::span<const Method> methods);

  MethodPlan plan(Method method, const RunConfig& cfg);

  const FragmentSet& largest_first();
  const FragmentSet& sorted_insertion();
  /// Sorted insertion extended to overlapping groups.
  const FragmentSet& overlapping();
  /// Optimal allocation of the sorted-insertion groups.
  const std::vector<double>& si_allocation();

 private:
  const Hamiltonian& h_;
  Relation relation_;
  const CovarianceOracle& oracle_;
  std::optional<FragmentSet> lf_, si_, ext_;
  std::optional<GroupCovariances> lf_cov_, si_cov_, ext_cov_;
  std::vector<double> si_m_;
};

/// Unit-budget variance of a plan under another state's covariances.
double evaluate_plan(const Hamiltonian& h, const MethodPlan& plan,
                     const CovarianceOracle& oracle);

/// Integer shots: floor(M m_a), the remainder one by one to the largest
/// m_a (ties to the lower index), then every required group lifted to at
/// least one shot by taking from the best-served group. Throws
/// InfeasibleError when M is smaller than the number of required groups.
std::vector<std::size_t> distribute_shots(std::span<const double> m,
                                          const std::vector<bool>& required,
                                          std::size_t budget);

/// Repeats the simulated measurement campaign `repetitions` times and
/// reports the spread of the energy estimates.
SampleSummary sample_plan(const Hamiltonian& h, const MethodPlan& plan,
                          const StateVector& state, std::size_t budget,
                          std::size_t repetitions, std::uint64_t seed,
                          Sampler sampler = Sampler::kCollapse);

/// <psi|H|psi>.
double energy(const Hamiltonian& h, const CovarianceOracle& oracle);

/// Runs every configured method; failures are recorded per method. When
/// `cfg.budget > 0` each successful method is also sampled.
Report run_methods(const Hamiltonian& h, const StateVector& state,
                   const RunConfig& cfg, const StateVector* proxy = nullptr);

/// Output of a CLI subcommand.
struct CommandResult {
  std::string json;
  std::string table;
  std::vector<std::string> warnings;
  int exit_code = 0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitConvergence = 4;

/// Group counts and split-variable counts for cfg.relation.
CommandResult cmd_group(const RunConfig& cfg, bool largest_first = false,
                        bool members = false);
CommandResult cmd_variance(const RunConfig& cfg);
CommandResult cmd_sample(const RunConfig& cfg);
/// Diagonalizing circuits for the sorted-insertion groups.
CommandResult cmd_synth(const RunConfig& cfg, bool largest_first = false);
/// Ground state; writes the amplitudes to `state_out` when given.
CommandResult cmd_ground(const RunConfig& cfg,
                         const std::optional<std::filesystem::path>& state_out);

}  // namespace pauligroup
