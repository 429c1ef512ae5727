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
#include <optional>
#include <vector>

#include "pauligroup/pauli.hpp"

namespace pauligroup {

struct Term {
  double coefficient = 0.0;
  PauliProduct pauli;
};

/// A real linear combination of distinct Pauli products.
///
/// Construction merges duplicate products (first occurrence keeps its
/// position), drops terms whose merged coefficient is exactly zero, and
/// rejects non-finite coefficients or non-trivial phases.
class Hamiltonian {
 public:
  Hamiltonian() = default;
  Hamiltonian(std::size_t n_qubits, std::vector<Term> terms);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  const Term& operator[](std::size_t k) const { return terms_[k]; }

  double coefficient(std::size_t k) const { return terms_[k].coefficient; }
  const PauliProduct& pauli(std::size_t k) const { return terms_[k].pauli; }

  /// Index of the all-identity term, if present.
  std::optional<std::size_t> identity_index() const noexcept {
    return identity_;
  }
  /// Coefficient of the identity term, or 0.
  double constant() const noexcept;

  /// Indices of every term except the identity, in term order.
  std::vector<std::size_t> measurable_terms() const;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<Term> terms_;
  std::optional<std::size_t> identity_;
};

}  // namespace pauligroup
