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

#include "pauligroup/pauli.hpp"

#include <bit>
#include <sstream>

#include "pauligroup/errors.hpp"

namespace pauligroup {
namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

void require_same_size(const PauliProduct& a, const PauliProduct& b,
                       const char* op) {
  if (a.n_qubits() != b.n_qubits()) {
    throw DimensionError(std::string(op) + ": qubit counts differ (" +
                         std::to_string(a.n_qubits()) + " vs " +
                         std::to_string(b.n_qubits()) + ")");
  }
}

// Lexicographic comparison of two bitsets read from bit 0 upwards.
std::strong_ordering compare_bits(std::span<const std::uint64_t> a,
                                  std::span<const std::uint64_t> b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    const std::uint64_t diff = a[w] ^ b[w];
    if (diff == 0) continue;
    const std::uint64_t lowest = diff & (~diff + 1);
    return (a[w] & lowest) ? std::strong_ordering::greater
                           : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

}  // namespace

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I:
      return 'I';
    case Pauli::X:
      return 'X';
    case Pauli::Y:
      return 'Y';
    case Pauli::Z:
      return 'Z';
  }
  return '?';
}

PauliProduct::PauliProduct(std::size_t n_qubits)
    : n_qubits_(n_qubits),
      x_(words_for(n_qubits), 0),
      z_(words_for(n_qubits), 0) {}

PauliProduct PauliProduct::from_factors(
    std::size_t n_qubits,
    std::initializer_list<std::pair<std::size_t, Pauli>> factors) {
  PauliProduct p(n_qubits);
  for (const auto& [q, letter] : factors) {
    if (q >= n_qubits) {
      throw DimensionError("qubit " + std::to_string(q) + " out of range");
    }
    if (p.at(q) != Pauli::I) {
      throw ValidationError("qubit " + std::to_string(q) + " repeated");
    }
    p.set(q, letter);
  }
  return p;
}

PauliProduct PauliProduct::from_label(std::string_view label) {
  PauliProduct p(label.size());
  for (std::size_t q = 0; q < label.size(); ++q) {
    switch (label[q]) {
      case 'I':
        break;
      case 'X':
        p.set(q, Pauli::X);
        break;
      case 'Y':
        p.set(q, Pauli::Y);
        break;
      case 'Z':
        p.set(q, Pauli::Z);
        break;
      default:
        throw ParseError(0, std::string("bad Pauli letter '") + label[q] + "'");
    }
  }
  return p;
}

bool PauliProduct::x(std::size_t q) const {
  return (x_[q / kWordBits] >> (q % kWordBits)) & 1U;
}

bool PauliProduct::z(std::size_t q) const {
  return (z_[q / kWordBits] >> (q % kWordBits)) & 1U;
}

Pauli PauliProduct::at(std::size_t q) const {
  if (q >= n_qubits_) throw DimensionError("qubit index out of range");
  const bool xb = x(q);
  const bool zb = z(q);
  if (xb) return zb ? Pauli::Y : Pauli::X;
  return zb ? Pauli::Z : Pauli::I;
}

void PauliProduct::set(std::size_t q, Pauli p) {
  if (q >= n_qubits_) throw DimensionError("qubit index out of range");
  const std::uint64_t bit = std::uint64_t{1} << (q % kWordBits);
  const std::size_t w = q / kWordBits;
  const bool xb = p == Pauli::X || p == Pauli::Y;
  const bool zb = p == Pauli::Z || p == Pauli::Y;
  x_[w] = xb ? (x_[w] | bit) : (x_[w] & ~bit);
  z_[w] = zb ? (z_[w] | bit) : (z_[w] & ~bit);
}

std::complex<double> PauliProduct::phase_factor() const noexcept {
  static constexpr std::complex<double> kPowers[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  return kPowers[phase_];
}

bool PauliProduct::is_identity() const noexcept {
  for (std::size_t w = 0; w < x_.size(); ++w) {
    if (x_[w] | z_[w]) return false;
  }
  return true;
}

bool PauliProduct::is_diagonal() const noexcept {
  for (const auto w : x_) {
    if (w) return false;
  }
  return true;
}

std::size_t PauliProduct::weight() const noexcept {
  std::size_t n = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) n += std::popcount(x_[w] | z_[w]);
  return n;
}

PauliProduct PauliProduct::unsigned_copy() const {
  PauliProduct p = *this;
  p.phase_ = 0;
  return p;
}

std::string PauliProduct::to_string() const {
  std::ostringstream out;
  static constexpr const char* kPrefix[4] = {"", "i", "-", "-i"};
  out << kPrefix[phase_];
  bool first = true;
  for (std::size_t q = 0; q < n_qubits_; ++q) {
    const Pauli p = at(q);
    if (p == Pauli::I) continue;
    if (!first) out << ' ';
    out << to_char(p) << q;
    first = false;
  }
  if (first) out << 'I';
  return out.str();
}

std::string PauliProduct::to_label() const {
  std::string label(n_qubits_, 'I');
  for (std::size_t q = 0; q < n_qubits_; ++q) label[q] = to_char(at(q));
  return label;
}

std::strong_ordering operator<=>(const PauliProduct& a, const PauliProduct& b) {
  if (a.n_qubits_ != b.n_qubits_) return a.n_qubits_ <=> b.n_qubits_;
  if (auto c = compare_bits(a.x_, b.x_); c != 0) return c;
  if (auto c = compare_bits(a.z_, b.z_); c != 0) return c;
  return a.phase_ <=> b.phase_;
}

std::size_t PauliProduct::hash() const noexcept {
  // FNV-1a over the words, then a splitmix finalizer.
  std::uint64_t h = 0xcbf29ce484222325ULL ^ n_qubits_ ^ (std::uint64_t{phase_} << 56);
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ULL;
  };
  for (std::size_t w = 0; w < x_.size(); ++w) {
    mix(x_[w]);
    mix(z_[w]);
  }
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return static_cast<std::size_t>(h);
}

PauliProduct multiply(const PauliProduct& a, const PauliProduct& b) {
  require_same_size(a, b, "multiply");
  PauliProduct out(a.n_qubits_);
  // Single-qubit products follow the cyclic rule XY = iZ, YZ = iX, ZX = iY;
  // the reversed orders pick up -i.
  int exponent = a.phase_ + b.phase_;
  for (std::size_t w = 0; w < a.x_.size(); ++w) {
    const std::uint64_t ax = a.x_[w], az = a.z_[w];
    const std::uint64_t bx = b.x_[w], bz = b.z_[w];
    const std::uint64_t a_x = ax & ~az, a_y = ax & az, a_z = ~ax & az;
    const std::uint64_t b_x = bx & ~bz, b_y = bx & bz, b_z = ~bx & bz;
    const std::uint64_t plus = (a_x & b_y) | (a_y & b_z) | (a_z & b_x);
    const std::uint64_t minus = (a_y & b_x) | (a_z & b_y) | (a_x & b_z);
    exponent += std::popcount(plus) - std::popcount(minus);
    out.x_[w] = ax ^ bx;
    out.z_[w] = az ^ bz;
  }
  out.phase_ = static_cast<std::uint8_t>(((exponent % 4) + 4) % 4);
  return out;
}

bool fully_commutes(const PauliProduct& a, const PauliProduct& b) {
  require_same_size(a, b, "fully_commutes");
  const auto ax = a.x_words(), az = a.z_words();
  const auto bx = b.x_words(), bz = b.z_words();
  int parity = 0;
  for (std::size_t w = 0; w < ax.size(); ++w) {
    parity ^= std::popcount((ax[w] & bz[w]) ^ (az[w] & bx[w])) & 1;
  }
  return parity == 0;
}

bool qubitwise_commutes(const PauliProduct& a, const PauliProduct& b) {
  require_same_size(a, b, "qubitwise_commutes");
  const auto ax = a.x_words(), az = a.z_words();
  const auto bx = b.x_words(), bz = b.z_words();
  for (std::size_t w = 0; w < ax.size(); ++w) {
    const std::uint64_t both = (ax[w] | az[w]) & (bx[w] | bz[w]);
    if (both & ((ax[w] ^ bx[w]) | (az[w] ^ bz[w]))) return false;
  }
  return true;
}

ComplexMatrix to_dense_matrix(const PauliProduct& p) {
  const std::size_t n = p.n_qubits();
  if (n > kMaxDenseQubits) {
    throw ResourceError("to_dense_matrix: " + std::to_string(n) +
                        " qubits exceeds the dense limit of " +
                        std::to_string(kMaxDenseQubits));
  }
  ComplexMatrix m;
  m.dim = std::size_t{1} << n;
  m.data.assign(m.dim * m.dim, {0.0, 0.0});
  // Column c maps to row c ^ flip with a per-qubit factor.
  std::size_t flip = 0;
  for (std::size_t q = 0; q < n; ++q) {
    if (p.x(q)) flip |= std::size_t{1} << (n - 1 - q);
  }
  for (std::size_t col = 0; col < m.dim; ++col) {
    std::complex<double> value = p.phase_factor();
    for (std::size_t q = 0; q < n; ++q) {
      const bool bit = (col >> (n - 1 - q)) & 1U;
      switch (p.at(q)) {
        case Pauli::I:
        case Pauli::X:
          break;
        case Pauli::Z:
          if (bit) value = -value;
          break;
        case Pauli::Y:
          // Y|0> = i|1>, Y|1> = -i|0>.
          value *= bit ? std::complex<double>(0.0, -1.0)
                       : std::complex<double>(0.0, 1.0);
          break;
      }
    }
    m(col ^ flip, col) = value;
  }
  return m;
}

}  // namespace pauligroup
