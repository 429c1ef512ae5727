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
#include <cstdint>
#include <span>
#include <vector>

#include "pauligroup/pauli.hpp"
#include "pauligroup/statevector.hpp"

namespace pauligroup {

/// Per-shot +-1 outcomes, row-major: one row per shot, one column per Pauli.
struct OutcomeTable {
  std::size_t n_paulis = 0;
  std::size_t shots = 0;
  std::vector<std::int8_t> values;

  std::int8_t at(std::size_t shot, std::size_t k) const {
    return values[shot * n_paulis + k];
  }
  double mean(std::size_t k) const;
  /// Sample covariance (divisor shots - 1) of columns j and k.
  double covariance(std::size_t j, std::size_t k) const;
};

/// Simulates simultaneous measurement of a fully commuting group by
/// sequential projective collapse: for each Pauli in group order the outcome
/// is drawn with probability (1 +- <P>)/2 on the current state, which is then
/// projected and renormalized. Deterministic for a given seed.
///
/// Throws ContractError for a non-commuting group and ValidationError for a
/// non-Hermitian member.
OutcomeTable sample_group(std::span<const PauliProduct> group,
                          const StateVector& s, std::size_t shots,
                          std::uint64_t seed);

}  // namespace pauligroup
