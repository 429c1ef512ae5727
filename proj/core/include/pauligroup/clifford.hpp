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
#include <string>
#include <vector>

#include "pauligroup/pauli.hpp"
#include "pauligroup/sampling.hpp"
#include "pauligroup/statevector.hpp"

namespace pauligroup {

enum class GateKind : std::uint8_t { kH, kS, kCnot, kCz };

struct Gate {
  GateKind kind = GateKind::kH;
  std::size_t q0 = 0;
  /// Target (CNOT) or second qubit (CZ); unused for one-qubit gates.
  std::size_t q1 = 0;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Returns G P G^dagger with the sign tracked.
PauliProduct conjugate(const PauliProduct& p, const Gate& g);

/// Applies the gates in order: U = G_last ... G_first, returns U P U^dagger.
PauliProduct conjugate(const PauliProduct& p, std::span<const Gate> gates);

/// A Clifford unitary U stored as the images U X_q U^dagger and
/// U Z_q U^dagger, together with the gate list that built it.
class CliffordTableau {
 public:
  CliffordTableau() = default;
  /// The identity on n qubits.
  explicit CliffordTableau(std::size_t n_qubits);

  static CliffordTableau from_gates(std::size_t n_qubits,
                                    std::span<const Gate> gates);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  const PauliProduct& x_image(std::size_t q) const { return x_images_[q]; }
  const PauliProduct& z_image(std::size_t q) const { return z_images_[q]; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }

  /// Appends a gate: U becomes G U.
  void apply(const Gate& g);

  /// U P U^dagger assembled from the stored generator images.
  PauliProduct conjugate(const PauliProduct& p) const;

  /// True when the images satisfy the canonical (anti)commutation
  /// relations of the generators and are Hermitian.
  bool is_symplectic() const;

  friend bool operator==(const CliffordTableau&, const CliffordTableau&) = default;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<PauliProduct> x_images_;
  std::vector<PauliProduct> z_images_;
  std::vector<Gate> gates_;
};

/// One term of a fragment after rotation: coefficient times a product of
/// z operators (given by the set bits of `z_mask`, qubit 0 first).
struct ZTerm {
  double coefficient = 0.0;
  PauliProduct z_product;
};

struct DiagonalizedGroup {
  CliffordTableau tableau;
  /// U P U^dagger for each input Pauli: x-free, phase 0 or 2.
  std::vector<PauliProduct> z_images;
  /// The fragment sum_k c_k P_k rewritten over z products, signs absorbed
  /// into the coefficients, in input order.
  std::vector<ZTerm> z_poly;
};

/// Finds a Clifford circuit that maps every member of a fully commuting
/// group to a signed product of z operators.
///
/// Members are processed in order. A member whose current image still has
/// x support is reduced to a single X on its lowest such qubit (S to turn Y
/// into X, CNOTs out of that pivot, CZs to clear z factors) and then sent to
/// Z by an H; images of earlier members are left x-free by each of these
/// steps. Qubit-wise commuting groups need only H and S.
///
/// `coefficients`, when given, must match the group length and populate
/// z_poly; otherwise unit coefficients are used. Throws ContractError for
/// a non-commuting group.
DiagonalizedGroup synthesize(std::span<const PauliProduct> group,
                             std::span<const double> coefficients = {});

/// Applies the gates to a state vector.
StateVector apply_gates(std::span<const Gate> gates, const StateVector& s);

/// Rotates the state by the group's circuit, samples computational-basis
/// strings from |amplitude|^2 and decodes each member's +-1 outcome from its
/// z image parity and sign.
OutcomeTable rotate_and_sample(const DiagonalizedGroup& dg,
                               const StateVector& s, std::size_t shots,
                               std::uint64_t seed);

/// One gate per line: "H q", "S q", "CNOT c t", "CZ a b".
std::string gates_to_text(std::span<const Gate> gates);

}  // namespace pauligroup
