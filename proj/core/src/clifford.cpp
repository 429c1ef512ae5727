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

#include "pauligroup/clifford.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include "pauligroup/errors.hpp"
#include "pauligroup/random.hpp"

namespace pauligroup {
namespace {

Pauli letter(bool x, bool z) {
  if (x) return z ? Pauli::Y : Pauli::X;
  return z ? Pauli::Z : Pauli::I;
}

void check_qubit(std::size_t q, std::size_t n) {
  if (q >= n) {
    throw DimensionError("gate acts on qubit " + std::to_string(q) + " of " +
                         std::to_string(n));
  }
}

void check_gate(const Gate& g, std::size_t n) {
  check_qubit(g.q0, n);
  if (g.kind == GateKind::kCnot || g.kind == GateKind::kCz) {
    check_qubit(g.q1, n);
    if (g.q0 == g.q1) throw ValidationError("two-qubit gate on a single qubit");
  }
}

std::uint64_t bit_of(std::size_t q, std::size_t n) {
  return std::uint64_t{1} << (n - 1 - q);
}

}  // namespace

PauliProduct conjugate(const PauliProduct& p, const Gate& g) {
  check_gate(g, p.n_qubits());
  PauliProduct out = p;
  bool flip = false;
  switch (g.kind) {
    case GateKind::kH: {
      const bool x = p.x(g.q0), z = p.z(g.q0);
      flip = x && z;
      out.set(g.q0, letter(z, x));
      break;
    }
    case GateKind::kS: {
      const bool x = p.x(g.q0), z = p.z(g.q0);
      flip = x && z;
      out.set(g.q0, letter(x, z != x));
      break;
    }
    case GateKind::kCnot: {
      const bool xc = p.x(g.q0), zc = p.z(g.q0);
      const bool xt = p.x(g.q1), zt = p.z(g.q1);
      flip = xc && zt && (xt == zc);
      out.set(g.q0, letter(xc, zc != zt));
      out.set(g.q1, letter(xt != xc, zt));
      break;
    }
    case GateKind::kCz: {
      const bool xa = p.x(g.q0), za = p.z(g.q0);
      const bool xb = p.x(g.q1), zb = p.z(g.q1);
      flip = xa && xb && (za != zb);
      out.set(g.q0, letter(xa, za != xb));
      out.set(g.q1, letter(xb, zb != xa));
      break;
    }
  }
  if (flip) out.set_phase(out.phase() + 2);
  return out;
}

PauliProduct conjugate(const PauliProduct& p, std::span<const Gate> gates) {
  PauliProduct out = p;
  for (const auto& g : gates) out = conjugate(out, g);
  return out;
}

CliffordTableau::CliffordTableau(std::size_t n_qubits) : n_qubits_(n_qubits) {
  x_images_.reserve(n_qubits);
  z_images_.reserve(n_qubits);
  for (std::size_t q = 0; q < n_qubits; ++q) {
    PauliProduct x(n_qubits), z(n_qubits);
    x.set(q, Pauli::X);
    z.set(q, Pauli::Z);
    x_images_.push_back(std::move(x));
    z_images_.push_back(std::move(z));
  }
}

CliffordTableau CliffordTableau::from_gates(std::size_t n_qubits,
                                            std::span<const Gate> gates) {
  CliffordTableau t(n_qubits);
  for (const auto& g : gates) t.apply(g);
  return t;
}

void CliffordTableau::apply(const Gate& g) {
  check_gate(g, n_qubits_);
  for (auto& img : x_images_) img = pauligroup::conjugate(img, g);
  for (auto& img : z_images_) img = pauligroup::conjugate(img, g);
  gates_.push_back(g);
}

PauliProduct CliffordTableau::conjugate(const PauliProduct& p) const {
  if (p.n_qubits() != n_qubits_) {
    throw DimensionError("Pauli and tableau qubit counts differ");
  }
  PauliProduct out(n_qubits_);
  int extra = p.phase();
  for (std::size_t q = 0; q < n_qubits_; ++q) {
    switch (p.at(q)) {
      case Pauli::I:
        break;
      case Pauli::X:
        out = multiply(out, x_images_[q]);
        break;
      case Pauli::Z:
        out = multiply(out, z_images_[q]);
        break;
      case Pauli::Y:
        // Y = i X Z
        out = multiply(out, multiply(x_images_[q], z_images_[q]));
        extra += 1;
        break;
    }
  }
  out.set_phase(out.phase() + extra);
  return out;
}

bool CliffordTableau::is_symplectic() const {
  const std::size_t n = n_qubits_;
  for (std::size_t q = 0; q < n; ++q) {
    if (!x_images_[q].is_hermitian() || !z_images_[q].is_hermitian()) return false;
    for (std::size_t r = 0; r < n; ++r) {
      if (!fully_commutes(x_images_[q], x_images_[r])) return false;
      if (!fully_commutes(z_images_[q], z_images_[r])) return false;
      if (fully_commutes(x_images_[q], z_images_[r]) == (q == r)) return false;
    }
  }
  return true;
}

DiagonalizedGroup synthesize(std::span<const PauliProduct> group,
                             std::span<const double> coefficients) {
  if (group.empty()) throw ValidationError("cannot synthesize an empty group");
  if (!coefficients.empty() && coefficients.size() != group.size()) {
    throw DimensionError("coefficient count does not match group size");
  }
  const std::size_t n = group.front().n_qubits();
  bool qubitwise = true;
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (group[i].n_qubits() != n) throw DimensionError("mixed qubit counts in group");
    for (std::size_t j = i + 1; j < group.size(); ++j) {
      if (!fully_commutes(group[i], group[j])) {
        throw ContractError("group members " + std::to_string(i) + " and " +
                            std::to_string(j) + " do not commute");
      }
      qubitwise = qubitwise && qubitwise_commutes(group[i], group[j]);
    }
  }

  DiagonalizedGroup dg;
  dg.tableau = CliffordTableau(n);
  auto& t = dg.tableau;
  if (qubitwise) {
    for (std::size_t q = 0; q < n; ++q) {
      Pauli basis = Pauli::I;
      for (const auto& p : group) {
        if (p.at(q) != Pauli::I) basis = p.at(q);
      }
      if (basis == Pauli::Y) t.apply({GateKind::kS, q, 0});
      if (basis == Pauli::X || basis == Pauli::Y) t.apply({GateKind::kH, q, 0});
    }
  } else {
    for (const auto& p : group) {
      PauliProduct cur = t.conjugate(p);
      if (cur.is_diagonal()) continue;
      std::size_t pivot = n;
      for (std::size_t q = 0; q < n; ++q) {
        if (cur.x(q)) {
          pivot = q;
          break;
        }
      }
      for (std::size_t q = pivot; q < n; ++q) {
        if (cur.x(q) && cur.z(q)) t.apply({GateKind::kS, q, 0});
      }
      for (std::size_t q = pivot + 1; q < n; ++q) {
        if (cur.x(q)) t.apply({GateKind::kCnot, pivot, q});
      }
      cur = t.conjugate(p);
      for (std::size_t q = 0; q < n; ++q) {
        if (q != pivot && cur.z(q)) t.apply({GateKind::kCz, pivot, q});
      }
      t.apply({GateKind::kH, pivot, 0});
    }
  }

  dg.z_images.reserve(group.size());
  dg.z_poly.reserve(group.size());
  for (std::size_t i = 0; i < group.size(); ++i) {
    PauliProduct img = t.conjugate(group[i]);
    if (!img.is_diagonal() || !img.is_hermitian()) {
      throw Error("internal error: synthesized image is not a signed z product");
    }
    const double c = coefficients.empty() ? 1.0 : coefficients[i];
    PauliProduct unsigned_img = img.unsigned_copy();
    dg.z_poly.push_back({img.phase() == 2 ? -c : c, std::move(unsigned_img)});
    dg.z_images.push_back(std::move(img));
  }
  return dg;
}

StateVector apply_gates(std::span<const Gate> gates, const StateVector& s) {
  const std::size_t n = s.n_qubits();
  std::vector<Complex> amp(s.amplitudes().begin(), s.amplitudes().end());
  const std::size_t dim = amp.size();
  const double r = 1.0 / std::sqrt(2.0);
  for (const auto& g : gates) {
    check_gate(g, n);
    const std::uint64_t b0 = bit_of(g.q0, n);
    switch (g.kind) {
      case GateKind::kH:
        for (std::size_t i = 0; i < dim; ++i) {
          if (i & b0) continue;
          const Complex a = amp[i], b = amp[i | b0];
          amp[i] = (a + b) * r;
          amp[i | b0] = (a - b) * r;
        }
        break;
      case GateKind::kS:
        for (std::size_t i = 0; i < dim; ++i) {
          if (i & b0) amp[i] = Complex(-amp[i].imag(), amp[i].real());
        }
        break;
      case GateKind::kCnot: {
        const std::uint64_t b1 = bit_of(g.q1, n);
        for (std::size_t i = 0; i < dim; ++i) {
          if ((i & b0) && !(i & b1)) std::swap(amp[i], amp[i | b1]);
        }
        break;
      }
      case GateKind::kCz: {
        const std::uint64_t b1 = bit_of(g.q1, n);
        for (std::size_t i = 0; i < dim; ++i) {
          if ((i & b0) && (i & b1)) amp[i] = -amp[i];
        }
        break;
      }
    }
  }
  return StateVector::normalized(n, std::move(amp));
}

OutcomeTable rotate_and_sample(const DiagonalizedGroup& dg,
                               const StateVector& s, std::size_t shots,
                               std::uint64_t seed) {
  const std::size_t n = dg.tableau.n_qubits();
  if (s.n_qubits() != n) {
    throw DimensionError("state has " + std::to_string(s.n_qubits()) +
                         " qubits, group has " + std::to_string(n));
  }
  const StateVector rotated = apply_gates(dg.tableau.gates(), s);
  std::vector<double> cdf(rotated.dim());
  double acc = 0.0;
  for (std::size_t i = 0; i < rotated.dim(); ++i) {
    acc += std::norm(rotated[i]);
    cdf[i] = acc;
  }

  const std::size_t np = dg.z_images.size();
  std::vector<std::uint64_t> masks(np, 0);
  std::vector<std::int8_t> signs(np, 1);
  for (std::size_t k = 0; k < np; ++k) {
    for (std::size_t q = 0; q < n; ++q) {
      if (dg.z_images[k].z(q)) masks[k] |= bit_of(q, n);
    }
    signs[k] = dg.z_images[k].phase() == 2 ? -1 : 1;
  }

  OutcomeTable table;
  table.n_paulis = np;
  table.shots = shots;
  table.values.resize(shots * np);
  Rng rng(seed);
  for (std::size_t shot = 0; shot < shots; ++shot) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    const auto index = static_cast<std::uint64_t>(it - cdf.begin());
    for (std::size_t k = 0; k < np; ++k) {
      const bool odd = std::popcount(index & masks[k]) & 1;
      table.values[shot * np + k] = static_cast<std::int8_t>(odd ? -signs[k] : signs[k]);
    }
  }
  return table;
}

std::string gates_to_text(std::span<const Gate> gates) {
  std::ostringstream out;
  for (const auto& g : gates) {
    switch (g.kind) {
      case GateKind::kH:
        out << "H " << g.q0 << '\n';
        break;
      case GateKind::kS:
        out << "S " << g.q0 << '\n';
        break;
      case GateKind::kCnot:
        out << "CNOT " << g.q0 << ' ' << g.q1 << '\n';
        break;
      case GateKind::kCz:
        out << "CZ " << g.q0 << ' ' << g.q1 << '\n';
        break;
    }
  }
  return out.str();
}

}  // namespace pauligroup
