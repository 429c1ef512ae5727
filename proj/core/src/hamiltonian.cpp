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

#include "pauligroup/hamiltonian.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "pauligroup/errors.hpp"

namespace pauligroup {

Hamiltonian::Hamiltonian(std::size_t n_qubits, std::vector<Term> terms)
    : n_qubits_(n_qubits) {
  std::unordered_map<PauliProduct, std::size_t> position;
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (auto& term : terms) {
    if (term.pauli.n_qubits() != n_qubits) {
      throw DimensionError("term " + term.pauli.to_string() + " acts on " +
                           std::to_string(term.pauli.n_qubits()) +
                           " qubits, Hamiltonian has " +
                           std::to_string(n_qubits));
    }
    if (term.pauli.phase() != 0) {
      throw ValidationError("Hamiltonian terms must have phase +1: " +
                            term.pauli.to_string());
    }
    if (!std::isfinite(term.coefficient)) {
      throw ValidationError("non-finite coefficient for " +
                            term.pauli.to_string());
    }
    auto [it, inserted] = position.try_emplace(term.pauli, merged.size());
    if (inserted) {
      merged.push_back(std::move(term));
    } else {
      merged[it->second].coefficient += term.coefficient;
    }
  }
  terms_.reserve(merged.size());
  for (auto& term : merged) {
    if (term.coefficient == 0.0) continue;
    if (term.pauli.is_identity()) identity_ = terms_.size();
    terms_.push_back(std::move(term));
  }
}

double Hamiltonian::constant() const noexcept {
  return identity_ ? terms_[*identity_].coefficient : 0.0;
}

std::vector<std::size_t> Hamiltonian::measurable_terms() const {
  std::vector<std::size_t> out;
  out.reserve(terms_.size());
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (!identity_ || k != *identity_) out.push_back(k);
  }
  return out;
}

}  // namespace pauligroup
