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

#include "pauligroup/hamiltonian.hpp"
#include "pauligroup/statevector.hpp"

namespace pauligroup {

inline constexpr std::size_t kMaxGroundStateQubits = 16;

struct LanczosOptions {
  /// Budget of Hamiltonian-vector products across all restarts.
  std::size_t max_iter = 3000;
  /// Required residual norm ||Hv - Ev||.
  double tol = 1e-9;
  std::uint64_t seed = 20211015;
  /// Krylov basis size before a restart from the current Ritz vector.
  std::size_t krylov_dim = 100;
};

struct GroundState {
  double energy = 0.0;
  StateVector state;
  double residual = 0.0;
  std::size_t matvecs = 0;
};

/// out = H in, accumulated term by term without forming a matrix.
void apply_hamiltonian(const Hamiltonian& h, std::span<const Complex> in,
                       std::span<Complex> out);

/// Lowest eigenpair by restarted Lanczos with full reorthogonalization.
/// The start vector is drawn from `seed`, so results are reproducible.
/// Throws ConvergenceError (carrying the best residual) when the matvec
/// budget runs out, ResourceError above kMaxGroundStateQubits.
GroundState ground_state(const Hamiltonian& h, const LanczosOptions& opts = {});

}  // namespace pauligroup
