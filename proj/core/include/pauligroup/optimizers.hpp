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
#include <span>
#include <string>
#include <vector>

#include "pauligroup/grouping.hpp"
#include "pauligroup/hamiltonian.hpp"
#include "pauligroup/variance.hpp"

namespace pauligroup {

struct TraceEntry {
  /// Estimator variance after this step (unit budget).
  double variance = 0.0;
  /// Gradient norm (GMA), largest allocation change (IMA, ICS allocation
  /// step) or largest coefficient change (ICS coefficient step).
  double step = 0.0;
  double seconds = 0.0;
  /// "initial", "cycle", "gradient", "coefficients", "allocation".
  std::string kind;
  bool feasible = true;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct OptimizerTrace {
  std::vector<TraceEntry> entries;
  /// Set when a linear solve needed the ridge fallback.
  bool regularized = false;
  /// Set when GMA stopped on the divergence guard.
  bool diverged = false;
};

struct ImaOptions {
  std::size_t n_cycles = 10;
};

struct ImaResult {
  AllocationState allocation;
  double variance = 0.0;
  /// Cycle that produced the returned allocation (0 = the initial guess).
  std::size_t best_cycle = 0;
  OptimizerTrace trace;
};

/// Iterative measurement allocation. Starting from `initial`, each cycle
/// rebuilds the splitting c_k m_a / M_k and resets m_a proportional to the
/// square root of the split fragment variances. Returns the iterate with
/// the lowest overlapping-estimator variance, the initial one included.
/// An update that leaves some term unmeasured is recorded as infeasible
/// and ends the cycle sequence.
ImaResult ima_optimize(const Hamiltonian& h, const FragmentSet& frags,
                       const GroupCovariances& cov,
                       std::span<const double> initial,
                       const ImaOptions& opts = {});

struct GmaOptions {
  std::size_t steps = 400;
  /// Step size in softmax-parameter space, in units of the initial variance.
  double learning_rate = 1.0;
  /// Stop once a step improves the variance by less than this fraction.
  double tol = 1e-10;
};

struct GmaResult {
  AllocationState allocation;
  double variance = 0.0;
  OptimizerTrace trace;
};

/// Overlapping-estimator variance and its derivative with respect to each
/// group proportion m_a (m taken as given, not renormalized).
struct AllocationGradient {
  double variance = 0.0;
  std::vector<double> d_m;
};
AllocationGradient allocation_gradient(const Hamiltonian& h,
                                       const FragmentSet& frags,
                                       const GroupCovariances& cov,
                                       std::span<const double> m);

/// Softmax proportions for parameters p.
std::vector<double> softmax(std::span<const double> p);

/// d Var / d p_b for m = softmax(p), chained through
/// dm_a/dp_b = m_b (1 - m_b) when a == b and -m_a m_b otherwise.
std::vector<double> softmax_gradient(const Hamiltonian& h,
                                     const FragmentSet& frags,
                                     const GroupCovariances& cov,
                                     std::span<const double> p);

/// Gradient-based measurement allocation: descent on softmax parameters
/// with backtracking (halve on failure). Returns the best iterate; halts
/// when the variance exceeds ten times its initial value.
GmaResult gma_optimize(const Hamiltonian& h, const FragmentSet& frags,
                       const GroupCovariances& cov,
                       std::span<const double> initial,
                       const GmaOptions& opts = {});

struct IcsOptions {
  std::size_t max_outer = 40;
  /// Stop when an outer iteration lowers the variance by less than this
  /// fraction.
  double tol = 1e-7;
  /// Relative ridge added to the normal matrix when the plain solve fails.
  double ridge = 1e-10;
  /// Cap on free split coefficients per solve; beyond it only the terms
  /// with the largest c_k^2 Var(P_k) are optimized.
  std::size_t max_free_variables = 3000;
};

struct IcsResult {
  FragmentSet fragments;
  AllocationState allocation;
  double variance = 0.0;
  /// Gradient of the variance with respect to the free split coefficients
  /// at the returned point (one anchor per split term eliminated).
  std::vector<double> gradient;
  std::size_t free_variables = 0;
  OptimizerTrace trace;
};

/// Variance gradient with respect to the free split coefficients of `frags`
/// at allocation m: for each split term the anchor is the group holding its
/// largest-magnitude share, and every other active membership a yields
///   2 (C_a c^(a))_k / m_a - 2 (C_* c^(*))_k / m_*.
/// Groups with m_a = 0 are excluded.
std::vector<double> splitting_gradient(const FragmentSet& frags,
                                       const GroupCovariances& cov,
                                       std::span<const double> m);

/// sum_a Var(A_a)/m_a for the set's split coefficients.
double splitting_variance(const FragmentSet& frags, const GroupCovariances& cov,
                          std::span<const double> m);

/// Iterative coefficient splitting. Alternates an exact minimization over
/// the free split coefficients at fixed m (one linear solve) with the
/// optimal allocation at fixed coefficients. Returns the best point taken
/// right after a coefficient solve, so its gradient vanishes.
///
/// `initial` is the starting allocation; when empty, the optimal
/// allocation of the starting coefficients is used.
IcsResult ics_optimize(const Hamiltonian& h, const FragmentSet& frags,
                       const GroupCovariances& cov,
                       std::span<const double> initial = {},
                       const IcsOptions& opts = {});

}  // namespace pauligroup
