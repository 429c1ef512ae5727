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

#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pauligroup {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);

/// A tensor product of single-qubit Paulis with a global phase i^k.
///
/// Stored in symplectic form: qubit q carries X when only x[q] is set, Z when
/// only z[q] is set, Y when both are set. The phase multiplies the product of
/// the letters as written (Y is Y, not XZ), so a Hamiltonian term always has
/// phase exponent 0.
class PauliProduct {
 public:
  PauliProduct() = default;
  explicit PauliProduct(std::size_t n_qubits);

  /// Builds from (qubit, letter) pairs; repeated qubits are rejected.
  static PauliProduct from_factors(
      std::size_t n_qubits,
      std::initializer_list<std::pair<std::size_t, Pauli>> factors);
  /// Dense label, one letter per qubit starting at qubit 0, e.g. "XIZY".
  static PauliProduct from_label(std::string_view label);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t n_words() const noexcept { return x_.size(); }

  Pauli at(std::size_t q) const;
  bool x(std::size_t q) const;
  bool z(std::size_t q) const;
  void set(std::size_t q, Pauli p);

  std::span<const std::uint64_t> x_words() const noexcept { return x_; }
  std::span<const std::uint64_t> z_words() const noexcept { return z_; }

  /// Exponent k of the global phase i^k, in [0, 4).
  int phase() const noexcept { return phase_; }
  void set_phase(int k) noexcept { phase_ = static_cast<std::uint8_t>(k & 3); }
  std::complex<double> phase_factor() const noexcept;
  bool is_hermitian() const noexcept { return (phase_ & 1) == 0; }

  /// True when every qubit is the identity (phase ignored).
  bool is_identity() const noexcept;
  /// True when no qubit carries X or Y.
  bool is_diagonal() const noexcept;
  std::size_t weight() const noexcept;

  /// Same letters with phase exponent 0.
  PauliProduct unsigned_copy() const;

  /// "X0 Z3" style, with a leading "-", "i", or "-i" for non-trivial phases.
  std::string to_string() const;
  /// One letter per qubit, e.g. "XIZ".
  std::string to_label() const;

  friend bool operator==(const PauliProduct&, const PauliProduct&) = default;
  /// Canonical order: qubit count, then x bits lexicographically from
  /// qubit 0 (clear before set), then z bits likewise, then phase.
  friend std::strong_ordering operator<=>(const PauliProduct& a,
                                          const PauliProduct& b);

  std::size_t hash() const noexcept;

 private:
  friend PauliProduct multiply(const PauliProduct&, const PauliProduct&);

  std::size_t n_qubits_ = 0;
  std::uint8_t phase_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
};

/// Operator product a*b with accumulated phase.
PauliProduct multiply(const PauliProduct& a, const PauliProduct& b);

/// Ordinary commutation: symplectic inner product is even.
bool fully_commutes(const PauliProduct& a, const PauliProduct& b);

/// Every qubit's factors are equal or one of them is the identity.
bool qubitwise_commutes(const PauliProduct& a, const PauliProduct& b);

/// Row-major complex matrix; only used for small-system checks.
struct ComplexMatrix {
  std::size_t dim = 0;
  std::vector<std::complex<double>> data;

  std::complex<double>& operator()(std::size_t r, std::size_t c) {
    return data[r * dim + c];
  }
  const std::complex<double>& operator()(std::size_t r, std::size_t c) const {
    return data[r * dim + c];
  }
};

inline constexpr std::size_t kMaxDenseQubits = 12;

/// Kronecker product of the single-qubit matrices, qubit 0 leftmost
/// (most significant bit of the basis index). Throws ResourceError above
/// kMaxDenseQubits.
ComplexMatrix to_dense_matrix(const PauliProduct& p);

}  // namespace pauligroup

template <>
struct std::hash<pauligroup::PauliProduct> {
  std::size_t operator()(const pauligroup::PauliProduct& p) const noexcept {
    return p.hash();
  }
};
