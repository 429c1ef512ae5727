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

#include "pauligroup/statevector.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "pauligroup/errors.hpp"

namespace pauligroup {
namespace {

void check_dims(const PauliProduct& p, std::size_t n_qubits, const char* op) {
  if (p.n_qubits() != n_qubits) {
    throw DimensionError(std::string(op) + ": Pauli acts on " +
                         std::to_string(p.n_qubits()) + " qubits, state has " +
                         std::to_string(n_qubits));
  }
}

inline double parity_sign(std::uint64_t bits) {
  return (std::popcount(bits) & 1) ? -1.0 : 1.0;
}

}  // namespace

StateVector::StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  if (n_qubits_ > kMaxStateQubits) {
    throw ResourceError("statevector limited to " +
                        std::to_string(kMaxStateQubits) + " qubits");
  }
  if (amplitudes_.size() != (std::size_t{1} << n_qubits_)) {
    throw DimensionError("expected " +
                         std::to_string(std::size_t{1} << n_qubits_) +
                         " amplitudes, got " +
                         std::to_string(amplitudes_.size()));
  }
  const double nrm = norm();
  if (std::abs(nrm - 1.0) > kNormTolerance) {
    throw ValidationError("state norm " + std::to_string(nrm) +
                          " is not 1");
  }
}

StateVector StateVector::normalized(std::size_t n_qubits,
                                    std::vector<Complex> amplitudes) {
  double sum = 0.0;
  for (const auto& a : amplitudes) sum += std::norm(a);
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw ValidationError("cannot normalize a zero or non-finite vector");
  }
  const double scale = 1.0 / std::sqrt(sum);
  for (auto& a : amplitudes) a *= scale;
  return StateVector(n_qubits, std::move(amplitudes));
}

StateVector StateVector::basis_state(std::size_t n_qubits, std::size_t index) {
  if (n_qubits > kMaxStateQubits) {
    throw ResourceError("statevector limited to " +
                        std::to_string(kMaxStateQubits) + " qubits");
  }
  std::vector<Complex> amps(std::size_t{1} << n_qubits);
  if (index >= amps.size()) throw DimensionError("basis index out of range");
  amps[index] = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

double StateVector::norm() const noexcept {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

BasisAction basis_action(const PauliProduct& p) {
  const std::size_t n = p.n_qubits();
  if (n > 64) throw ResourceError("basis_action supports at most 64 qubits");
  BasisAction action;
  int exponent = p.phase();
  for (std::size_t q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    const bool xb = p.x(q), zb = p.z(q);
    if (xb) action.flip_mask |= bit;
    if (zb) action.sign_mask |= bit;
    // Y = i X Z on a single qubit.
    if (xb && zb) ++exponent;
  }
  static constexpr Complex kPowers[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  action.factor = kPowers[exponent & 3];
  return action;
}

void apply_pauli(const PauliProduct& p, std::span<const Complex> in,
                 std::span<Complex> out) {
  if (in.size() != out.size() || in.size() != (std::size_t{1} << p.n_qubits())) {
    throw DimensionError("apply_pauli: buffer length does not match qubits");
  }
  const BasisAction a = basis_action(p);
  for (std::size_t i = 0; i < in.size(); ++i) {
    out[i ^ a.flip_mask] = a.factor * parity_sign(i & a.sign_mask) * in[i];
  }
}

StateVector apply_pauli(const PauliProduct& p, const StateVector& s) {
  check_dims(p, s.n_qubits(), "apply_pauli");
  std::vector<Complex> out(s.dim());
  apply_pauli(p, s.amplitudes(), out);
  return StateVector(s.n_qubits(), std::move(out));
}

Complex expectation_value(const PauliProduct& p,
                          std::span<const Complex> amps) {
  const BasisAction a = basis_action(p);
  Complex acc{0.0, 0.0};
  if (a.flip_mask == 0) {
    double re = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
      re += parity_sign(i & a.sign_mask) * std::norm(amps[i]);
    }
    acc = re;
  } else {
    for (std::size_t i = 0; i < amps.size(); ++i) {
      acc += parity_sign(i & a.sign_mask) * std::conj(amps[i ^ a.flip_mask]) *
             amps[i];
    }
  }
  return a.factor * acc;
}

double expectation(const PauliProduct& p, const StateVector& s) {
  check_dims(p, s.n_qubits(), "expectation");
  if (!p.is_hermitian()) {
    throw ValidationError("expectation: " + p.to_string() +
                          " is not Hermitian");
  }
  return expectation_value(p, s.amplitudes()).real();
}

double covariance(const PauliProduct& p, const PauliProduct& q,
                  const StateVector& s) {
  check_dims(p, s.n_qubits(), "covariance");
  check_dims(q, s.n_qubits(), "covariance");
  if (!fully_commutes(p, q)) {
    throw ContractError("covariance requested for anticommuting pair " +
                        p.to_string() + ", " + q.to_string());
  }
  const PauliProduct pq = multiply(p, q);
  return expectation(pq, s) - expectation(p, s) * expectation(q, s);
}

}  // namespace pauligroup
