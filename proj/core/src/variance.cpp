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

#include "pauligroup/variance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pauligroup/errors.hpp"

namespace pauligroup {
namespace {

std::vector<double> normalized(std::span<const double> m) {
  double sum = 0.0;
  for (const double v : m) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ValidationError("allocation entries must be finite and >= 0");
    }
    sum += v;
  }
  if (!(sum > 0.0)) throw ValidationError("allocation sums to zero");
  std::vector<double> out(m.begin(), m.end());
  for (auto& v : out) v /= sum;
  return out;
}

std::vector<double> term_totals(const FragmentSet& frags,
                                std::span<const double> m) {
  if (m.size() != frags.size()) {
    throw DimensionError("allocation has " + std::to_string(m.size()) +
                         " entries for " + std::to_string(frags.size()) +
                         " groups");
  }
  std::vector<double> totals(frags.n_terms, 0.0);
  for (std::size_t a = 0; a < frags.size(); ++a) {
    for (auto k : frags.groups[a]) totals[k] += m[a];
  }
  return totals;
}

void require_measured(const Hamiltonian& h, const FragmentSet& frags,
                      const std::vector<double>& totals) {
  for (const auto& g : frags.groups) {
    for (auto k : g) {
      if (!(totals[k] > 0.0)) {
        throw InfeasibleError("term " + std::to_string(k) + " (" +
                                  h.pauli(k).to_string() +
                                  ") is never measured",
                              k);
      }
    }
  }
}

}  // namespace

std::vector<double> AllocationState::totals(const FragmentSet& frags) const {
  return term_totals(frags, m);
}

double VarianceReport::epsilon(double shots) const {
  return std::sqrt(total_variance / shots);
}

GroupCovariances::GroupCovariances(const Hamiltonian& h,
                                   const FragmentSet& frags,
                                   const CovarianceOracle& oracle)
    : term_variance_(h.size(), 0.0) {
  if (frags.n_terms != h.size()) {
    throw ValidationError("fragment set does not match Hamiltonian");
  }
  blocks_.reserve(frags.size());
  sizes_.reserve(frags.size());
  std::vector<PauliProduct> members;
  for (const auto& g : frags.groups) {
    members.clear();
    for (auto k : g) members.push_back(h.pauli(k));
    blocks_.push_back(oracle.covariance_matrix(members));
    sizes_.push_back(g.size());
  }
  for (auto k : h.measurable_terms()) term_variance_[k] = oracle.variance(h.pauli(k));
}

double quadratic_variance(std::span<const double> coefficients,
                          std::span<const double> block) {
  const std::size_t n = coefficients.size();
  if (block.size() != n * n) {
    throw DimensionError("covariance block does not match coefficient count");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += block[i * n + j] * coefficients[j];
    acc += coefficients[i] * row;
  }
  return acc > 0.0 ? acc : 0.0;
}

double fragment_variance(const Hamiltonian& h,
                         std::span<const std::size_t> group,
                         std::span<const double> coefficients,
                         const CovarianceOracle& oracle) {
  if (group.size() != coefficients.size()) {
    throw DimensionError("fragment_variance: coefficient count mismatch");
  }
  std::vector<PauliProduct> members;
  members.reserve(group.size());
  for (auto k : group) members.push_back(h.pauli(k));
  return quadratic_variance(coefficients, oracle.covariance_matrix(members));
}

std::vector<double> group_variances(const FragmentSet& frags,
                                    const GroupCovariances& cov) {
  std::vector<double> out(frags.size());
  for (std::size_t a = 0; a < frags.size(); ++a) {
    out[a] = quadratic_variance(frags.coefficients[a], cov.block(a));
  }
  return out;
}

AllocationState optimal_allocation(std::span<const double> variances) {
  if (variances.empty()) throw ValidationError("no groups to allocate");
  AllocationState state;
  state.m.resize(variances.size());
  double sum = 0.0;
  for (std::size_t a = 0; a < variances.size(); ++a) {
    const double v = variances[a];
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ValidationError("group variance must be finite and >= 0");
    }
    state.m[a] = std::sqrt(v);
    sum += state.m[a];
  }
  if (sum == 0.0) {
    std::fill(state.m.begin(), state.m.end(),
              1.0 / static_cast<double>(variances.size()));
  } else {
    for (auto& v : state.m) v /= sum;
  }
  return state;
}

double optimal_total_variance(std::span<const double> variances) {
  double sum = 0.0;
  for (const double v : variances) sum += std::sqrt(std::max(v, 0.0));
  return sum * sum;
}

VarianceReport nonoverlapping_variance(std::span<const double> variances,
                                       std::span<const double> m) {
  if (variances.size() != m.size()) {
    throw DimensionError("variance and allocation lengths differ");
  }
  const auto unit = normalized(m);
  VarianceReport report;
  report.per_group.resize(m.size());
  for (std::size_t a = 0; a < m.size(); ++a) {
    double contribution = 0.0;
    if (variances[a] > 0.0) {
      contribution = unit[a] > 0.0 ? variances[a] / unit[a]
                                   : std::numeric_limits<double>::infinity();
    }
    report.per_group[a] = contribution;
    report.total_variance += contribution;
  }
  return report;
}

double overlapping_variance(const Hamiltonian& h, const FragmentSet& frags,
                            std::span<const double> m,
                            const GroupCovariances& cov) {
  const auto unit = normalized(m);
  const auto totals = term_totals(frags, unit);
  require_measured(h, frags, totals);
  double total = 0.0;
  std::vector<double> w;
  for (std::size_t a = 0; a < frags.size(); ++a) {
    if (unit[a] == 0.0) continue;
    const auto& g = frags.groups[a];
    w.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      w[i] = h.coefficient(g[i]) / totals[g[i]];
    }
    const auto block = cov.block(a);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < g.size(); ++j) row += block[i * g.size() + j] * w[j];
      acc += w[i] * row;
    }
    total += unit[a] * acc;
  }
  return total > 0.0 ? total : 0.0;
}

double overlapping_variance(const Hamiltonian& h, const FragmentSet& frags,
                            const AllocationState& alloc,
                            const CovarianceOracle& oracle) {
  return overlapping_variance(h, frags, alloc.m,
                              GroupCovariances(h, frags, oracle));
}

FragmentSet allocation_as_splitting(const Hamiltonian& h,
                                    const FragmentSet& frags,
                                    std::span<const double> m) {
  const auto totals = term_totals(frags, m);
  require_measured(h, frags, totals);
  FragmentSet out = frags;
  for (std::size_t a = 0; a < frags.size(); ++a) {
    const auto& g = frags.groups[a];
    for (std::size_t i = 0; i < g.size(); ++i) {
      out.coefficients[a][i] = h.coefficient(g[i]) * m[a] / totals[g[i]];
    }
  }
  return out;
}

}  // namespace pauligroup
