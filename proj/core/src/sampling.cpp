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

#include "pauligroup/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "pauligroup/errors.hpp"
#include "pauligroup/random.hpp"

namespace pauligroup {
namespace {

// Branch probabilities this close to 0 or 1 are snapped so that a
// numerically impossible outcome is never drawn.
constexpr double kSnap = 1e-12;
// Upper bound on amplitudes kept in the collapse tree.
constexpr std::size_t kTreeAmplitudeBudget = std::size_t{1} << 22;

double plus_probability(const PauliProduct& p, std::span<const Complex> amps) {
  const double e = expectation_value(p, amps).real();
  double prob = 0.5 * (1.0 + e);
  if (prob < kSnap) prob = 0.0;
  if (prob > 1.0 - kSnap) prob = 1.0;
  return prob;
}

// (I + sign P)/2 |psi>, renormalized by 1/sqrt(prob).
std::vector<Complex> project(const PauliProduct& p, std::span<const Complex> amps,
                             int sign, double prob) {
  std::vector<Complex> moved(amps.size());
  apply_pauli(p, amps, moved);
  const double scale = 0.5 / std::sqrt(prob);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    moved[i] = scale * (amps[i] + static_cast<double>(sign) * moved[i]);
  }
  return moved;
}

// Memoized outcome tree: a node holds the post-measurement state for one
// outcome prefix and the +1 probability of the next Pauli.
struct Node {
  std::vector<Complex> state;
  double p_plus = -1.0;
  int child[2] = {-1, -1};
};

}  // namespace

double OutcomeTable::mean(std::size_t k) const {
  if (shots == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t s = 0; s < shots; ++s) sum += at(s, k);
  return sum / static_cast<double>(shots);
}

double OutcomeTable::covariance(std::size_t j, std::size_t k) const {
  if (shots < 2) return 0.0;
  const double mj = mean(j), mk = mean(k);
  double sum = 0.0;
  for (std::size_t s = 0; s < shots; ++s) {
    sum += (at(s, j) - mj) * (at(s, k) - mk);
  }
  return sum / static_cast<double>(shots - 1);
}

OutcomeTable sample_group(std::span<const PauliProduct> group,
                          const StateVector& s, std::size_t shots,
                          std::uint64_t seed) {
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (group[i].n_qubits() != s.n_qubits()) {
      throw DimensionError("sample_group: Pauli and state qubit counts differ");
    }
    if (!group[i].is_hermitian()) {
      throw ValidationError("sample_group: " + group[i].to_string() +
                            " is not Hermitian");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!fully_commutes(group[i], group[j])) {
        throw ContractError("sample_group: " + group[i].to_string() + " and " +
                            group[j].to_string() + " do not commute");
      }
    }
  }

  OutcomeTable table;
  table.n_paulis = group.size();
  table.shots = shots;
  table.values.resize(shots * group.size());
  if (group.empty() || shots == 0) return table;

  Rng rng(seed);
  std::vector<Node> tree(1);
  tree[0].state.assign(s.amplitudes().begin(), s.amplitudes().end());
  std::size_t stored = s.dim();

  for (std::size_t shot = 0; shot < shots; ++shot) {
    int node = 0;
    // Once the tree budget is exhausted the walk continues on a scratch copy.
    std::vector<Complex> scratch;
    bool detached = false;
    for (std::size_t k = 0; k < group.size(); ++k) {
      const PauliProduct& p = group[k];
      double p_plus;
      if (!detached) {
        if (tree[node].p_plus < 0.0) {
          tree[node].p_plus = plus_probability(p, tree[node].state);
        }
        p_plus = tree[node].p_plus;
      } else {
        p_plus = plus_probability(p, scratch);
      }
      const int outcome = rng.uniform() < p_plus ? 1 : -1;
      table.values[shot * group.size() + k] = static_cast<std::int8_t>(outcome);
      if (k + 1 == group.size()) break;
      const double prob = outcome == 1 ? p_plus : 1.0 - p_plus;
      const int slot = outcome == 1 ? 0 : 1;
      if (detached) {
        scratch = project(p, scratch, outcome, prob);
        continue;
      }
      if (tree[node].child[slot] >= 0) {
        node = tree[node].child[slot];
        continue;
      }
      auto next = project(p, tree[node].state, outcome, prob);
      if (stored + next.size() <= kTreeAmplitudeBudget) {
        stored += next.size();
        tree.push_back(Node{std::move(next)});
        const int id = static_cast<int>(tree.size()) - 1;
        tree[node].child[slot] = id;
        node = id;
      } else {
        scratch = std::move(next);
        detached = true;
      }
    }
  }
  return table;
}

}  // namespace pauligroup
