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
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pauligroup/pauli.hpp"
#include "pauligroup/statevector.hpp"

namespace pauligroup {

/// Wavefunction-backed source of Pauli expectations and covariances.
///
/// Expectations of (phase-stripped) Pauli products are cached; a covariance
/// is assembled from three cached expectations. Lookups and fills are safe
/// from multiple threads: each cache entry is written once and every writer
/// computes the same value.
class CovarianceOracle {
 public:
  explicit CovarianceOracle(StateVector state);

  const StateVector& state() const noexcept { return state_; }
  std::size_t n_qubits() const noexcept { return state_.n_qubits(); }

  /// <P> for Hermitian P.
  double expectation(const PauliProduct& p) const;
  /// 1 - <P>^2.
  double variance(const PauliProduct& p) const;
  /// <PQ> - <P><Q>; ContractError unless P and Q fully commute.
  double covariance(const PauliProduct& p, const PauliProduct& q) const;

  /// Row-major matrix of pairwise covariances of a fully commuting group.
  std::vector<double> covariance_matrix(
      std::span<const PauliProduct> group) const;

  /// Computes and caches <P> for every listed product. Products sharing an
  /// X pattern are evaluated together with one fast Walsh-Hadamard transform
  /// when that is cheaper than evaluating them one by one.
  void prefetch(std::span<const PauliProduct> products) const;

  std::size_t cache_size() const;

 private:
  struct Key {
    std::uint64_t flip;
    std::uint64_t sign;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  static Key key_of(const BasisAction& a) { return {a.flip_mask, a.sign_mask}; }
  double unsigned_expectation(const PauliProduct& p, BasisAction& action) const;

  StateVector state_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<Key, double, KeyHash> cache_;
};

}  // namespace pauligroup
