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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pauligroup/pauli.hpp"

namespace pauligroup {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxStateQubits = 26;
inline constexpr double kNormTolerance = 1e-10;

/// A normalized pure state on n qubits.
///
/// Basis index convention is big-endian: qubit 0 is the most significant bit
/// of the amplitude index, so |q0 q1 ... q(n-1)> sits at index
/// q0*2^(n-1) + ... + q(n-1).
class StateVector {
 public:
  StateVector() = default;
  /// Throws DimensionError on a length mismatch and ValidationError when the
  /// norm is off by more than kNormTolerance.
  StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes);

  /// Rescales to unit norm; throws ValidationError for the zero vector.
  static StateVector normalized(std::size_t n_qubits,
                                std::vector<Complex> amplitudes);
  static StateVector basis_state(std::size_t n_qubits, std::size_t index);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  double norm() const noexcept;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<Complex> amplitudes_;
};

/// How a Pauli product acts on computational basis states:
/// P|i> = factor * (-1)^popcount(i & sign_mask) |i ^ flip_mask>.
struct BasisAction {
  std::uint64_t flip_mask = 0;
  std::uint64_t sign_mask = 0;
  Complex factor{1.0, 0.0};
};

BasisAction basis_action(const PauliProduct& p);

/// Returns P|s>. Permutes amplitudes with unit phases, so the norm is kept
/// exactly.
StateVector apply_pauli(const PauliProduct& p, const StateVector& s);

/// Writes P applied to `in` into `out` (both of length 2^n).
void apply_pauli(const PauliProduct& p, std::span<const Complex> in,
                 std::span<Complex> out);

/// <s|P|s> for Hermitian P (phase +1 or -1); ValidationError otherwise.
double expectation(const PauliProduct& p, const StateVector& s);

/// <s|P|s> from raw amplitudes; may be complex for non-Hermitian P.
Complex expectation_value(const PauliProduct& p, std::span<const Complex> amps);

/// <pq> - <p><q> for fully commuting p and q; ContractError otherwise.
double covariance(const PauliProduct& p, const PauliProduct& q,
                  const StateVector& s);

}  // namespace pauligroup
