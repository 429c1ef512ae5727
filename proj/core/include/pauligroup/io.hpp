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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pauligroup/hamiltonian.hpp"
#include "pauligroup/statevector.hpp"

namespace pauligroup {

/// Parses the line-oriented Hamiltonian format:
///
///   # comment (anywhere after '#')
///   # nqubits: 4
///   -0.5
///   0.25 X0 Z1 Y3
///
/// Each non-blank line holds a real coefficient followed by zero or more
/// factors X<q>, Y<q>, Z<q> (0-based qubit, each qubit at most once). The
/// qubit count is 1 + the largest index seen unless a "nqubits:" header
/// fixes it. Repeated products are summed. Throws ParseError with the
/// 1-based line number.
Hamiltonian parse_hamiltonian(std::string_view text);
Hamiltonian load_hamiltonian(const std::filesystem::path& path);

/// Writes the format read by parse_hamiltonian, with an "nqubits" header
/// and shortest round-trip coefficients, one term per line in term order.
std::string serialize_hamiltonian(const Hamiltonian& h);

/// Parses 2^n lines of "<re> <im>" (basis index = line order, big-endian
/// qubits). Blank lines and '#' comments are ignored. A state whose norm is
/// off by more than kNormTolerance is rescaled and a note is appended to
/// `warnings` when given. Throws DimensionError on a wrong line count,
/// ValidationError for the zero vector and ParseError for bad numbers.
StateVector parse_wavefunction(std::string_view text, std::size_t n_qubits,
                               std::vector<std::string>* warnings = nullptr);
StateVector load_wavefunction(const std::filesystem::path& path,
                              std::size_t n_qubits,
                              std::vector<std::string>* warnings = nullptr);

std::string serialize_wavefunction(const StateVector& s);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// Reads a whole file; throws Error naming the path when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace pauligroup
