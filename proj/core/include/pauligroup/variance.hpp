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
#include <vector>

#include "pauligroup/covariance.hpp"
#include "pauligroup/grouping.hpp"
#include "pauligroup/hamiltonian.hpp"

namespace pauligroup {

/// Measurement proportions over groups under a unit shot budget.
struct AllocationState {
  std::vector<double> m;
  /// Softmax parameters p with m = exp(p)/sum(exp(p)); empty when the
  /// allocation was not produced by softmax.
  std::vector<double> logits;

  /// M_k = sum of m over the groups containing term k (0 for terms in no
  /// group, e.g. the identity).
  std::vector<double> totals(const FragmentSet& frags) const;
};

/// Estimator variance under a unit budget; divide by the shot count M.
struct VarianceReport {
  double total_variance = 0.0;
  std::vector<double> per_group;

  /// Standard error sqrt(Var/M) for a budget of M shots.
  double epsilon(double shots) const;
};

/// Covariance blocks Cov(P_j, P_k) for every group of a fragment set.
///
/// Blocks depend only on group membership, not on split coefficients or
/// allocations, so optimizers build them once.
class GroupCovariances {
 public:
  GroupCovariances(const Hamiltonian& h, const FragmentSet& frags,
                   const CovarianceOracle& oracle);

  std::size_t n_groups() const noexcept { return blocks_.size(); }
  /// Row-major |group a| x |group a| block.
  std::span<const double> block(std::size_t a) const { return blocks_[a]; }
  double entry(std::size_t a, std::size_t i, std::size_t j) const {
    return blocks_[a][i * sizes_[a] + j];
  }
  std::size_t group_size(std::size_t a) const { return sizes_[a]; }
  /// Var(P_k) = 1 - <P_k>^2 for measurable terms (0 for the identity).
  double term_variance(std::size_t k) const { return term_variance_[k]; }

 private:
  std::vector<std::vector<double>> blocks_;
  std::vector<std::size_t> sizes_;
  std::vector<double> term_variance_;
};

/// c^T C c for a group block; tiny negative round-off is clamped to 0.
double quadratic_variance(std::span<const double> coefficients,
                          std::span<const double> block);

/// Var(A) = sum_jk c_j c_k Cov(P_j, P_k) for one group.
double fragment_variance(const Hamiltonian& h,
                         std::span<const std::size_t> group,
                         std::span<const double> coefficients,
                         const CovarianceOracle& oracle);

/// Fragment variances using each group's own split coefficients.
std::vector<double> group_variances(const FragmentSet& frags,
                                    const GroupCovariances& cov);

/// m_a proportional to sqrt(Var_a), normalized. All-zero variances give the
/// uniform allocation. Negative or non-finite input is a ValidationError.
AllocationState optimal_allocation(std::span<const double> variances);

/// (sum_a sqrt(Var_a))^2, the variance reached by optimal_allocation.
double optimal_total_variance(std::span<const double> variances);

/// sum_a Var_a / m_a after normalizing m to unit sum. A zero-variance group
/// with m_a = 0 contributes nothing; a positive-variance one gives +inf.
VarianceReport nonoverlapping_variance(std::span<const double> variances,
                                       std::span<const double> m);

/// Variance of the estimator that averages every measurement of P_k across
/// all groups containing it:
///   sum_jk c_j c_k / (M_j M_k) sum_{a in I_j and I_k} m_a Cov(P_j, P_k),
/// with m normalized to unit sum. Uses Hamiltonian coefficients, not the
/// set's split coefficients. Throws InfeasibleError for a term with M_k = 0.
double overlapping_variance(const Hamiltonian& h, const FragmentSet& frags,
                            std::span<const double> m,
                            const GroupCovariances& cov);
double overlapping_variance(const Hamiltonian& h, const FragmentSet& frags,
                            const AllocationState& alloc,
                            const CovarianceOracle& oracle);

/// The coefficient splitting equivalent to an allocation:
/// c_k^(a) = c_k m_a / M_k. Throws InfeasibleError for a term with M_k = 0.
FragmentSet allocation_as_splitting(const Hamiltonian& h,
                                    const FragmentSet& frags,
                                    std::span<const double> m);

}  // namespace pauligroup
