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

#include "pauligroup/ground_state.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "pauligroup/errors.hpp"
#include "pauligroup/random.hpp"

namespace pauligroup {
namespace {

using Vec = std::vector<Complex>;

Complex dot(const Vec& a, const Vec& b) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm2(const Vec& a) {
  double acc = 0.0;
  for (const auto& v : a) acc += std::norm(v);
  return std::sqrt(acc);
}

void axpy(Complex alpha, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

struct Ritz {
  double value;
  Eigen::VectorXd vector;
};

Ritz lowest_ritz(const std::vector<double>& alpha,
                 const std::vector<double>& beta) {
  const auto m = static_cast<Eigen::Index>(alpha.size());
  Eigen::VectorXd diag(m), sub(std::max<Eigen::Index>(m - 1, 0));
  for (Eigen::Index i = 0; i < m; ++i) diag[i] = alpha[i];
  for (Eigen::Index i = 0; i + 1 < m; ++i) sub[i] = beta[i];
  if (m == 1) return {diag[0], Eigen::VectorXd::Ones(1)};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  return {solver.eigenvalues()[0], solver.eigenvectors().col(0)};
}

}  // namespace

namespace {

// Terms sharing an X pattern permute amplitudes the same way, so each
// pattern needs one pass: out[i ^ flip] += in[i] * sum_k w_k (-1)^|i & s_k|.
// The parity splits over the low kLowBits bits of i (a per-term table of
// signed weights) and the high bits (one sign per block), which turns the
// inner loop into a branch-free sum of short vectors.
class CompiledHamiltonian {
 public:
  explicit CompiledHamiltonian(const Hamiltonian& h)
      : dim_(std::size_t{1} << h.n_qubits()),
        low_bits_(std::min<std::size_t>(h.n_qubits(), kLowBits)),
        block_(std::size_t{1} << low_bits_) {
    std::map<std::uint64_t, std::size_t> index;
    for (const auto& term : h.terms()) {
      const BasisAction a = basis_action(term.pauli);
      auto [it, fresh] = index.try_emplace(a.flip_mask, groups_.size());
      if (fresh) groups_.push_back({a.flip_mask, {}, {}, {}, true});
      auto& g = groups_[it->second];
      const Complex w = term.coefficient * a.factor;
      g.high_signs.push_back(a.sign_mask & ~std::uint64_t(block_ - 1));
      for (std::size_t j = 0; j < block_; ++j) {
        const double sign = (std::popcount(j & a.sign_mask) & 1) ? -1.0 : 1.0;
        g.table.push_back(sign * w);
        g.real_table.push_back(sign * w.real());
      }
      g.real = g.real && w.imag() == 0.0;
    }
  }

  void apply(std::span<const Complex> in, std::span<Complex> out) const {
    std::fill(out.begin(), out.end(), Complex{0.0, 0.0});
    std::vector<double> rd(block_);
    std::vector<Complex> cd(block_);
    for (const auto& g : groups_) {
      const std::size_t nt = g.high_signs.size();
      for (std::size_t base = 0; base < dim_; base += block_) {
        if (g.real) {
          std::fill(rd.begin(), rd.end(), 0.0);
          for (std::size_t k = 0; k < nt; ++k) {
            const double sign = (std::popcount(base & g.high_signs[k]) & 1) ? -1.0 : 1.0;
            const double* t = g.real_table.data() + k * block_;
            for (std::size_t j = 0; j < block_; ++j) rd[j] += sign * t[j];
          }
          for (std::size_t j = 0; j < block_; ++j) {
            out[(base + j) ^ g.flip] += rd[j] * in[base + j];
          }
        } else {
          std::fill(cd.begin(), cd.end(), Complex{0.0, 0.0});
          for (std::size_t k = 0; k < nt; ++k) {
            const double sign = (std::popcount(base & g.high_signs[k]) & 1) ? -1.0 : 1.0;
            const Complex* t = g.table.data() + k * block_;
            for (std::size_t j = 0; j < block_; ++j) cd[j] += sign * t[j];
          }
          for (std::size_t j = 0; j < block_; ++j) {
            out[(base + j) ^ g.flip] += cd[j] * in[base + j];
          }
        }
      }
    }
  }

 private:
  static constexpr std::size_t kLowBits = 8;
  struct FlipGroup {
    std::uint64_t flip;
    std::vector<std::uint64_t> high_signs;
    // Per term, block_ signed weights indexed by the low bits.
    std::vector<Complex> table;
    std::vector<double> real_table;
    bool real;
  };
  std::size_t dim_;
  std::size_t low_bits_;
  std::size_t block_;
  std::vector<FlipGroup> groups_;
};

}  // namespace

void apply_hamiltonian(const Hamiltonian& h, std::span<const Complex> in,
                       std::span<Complex> out) {
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  if (in.size() != dim || out.size() != dim) {
    throw DimensionError("apply_hamiltonian: buffer length mismatch");
  }
  CompiledHamiltonian(h).apply(in, out);
}

GroundState ground_state(const Hamiltonian& h, const LanczosOptions& opts) {
  const std::size_t n = h.n_qubits();
  if (n > kMaxGroundStateQubits) {
    throw ResourceError("ground_state limited to " +
                        std::to_string(kMaxGroundStateQubits) + " qubits");
  }
  const std::size_t dim = std::size_t{1} << n;
  const CompiledHamiltonian op(h);

  Vec start(dim);
  {
    Rng rng(derive_seed(opts.seed, "lanczos-start"));
    std::normal_distribution<double> gauss;
    for (auto& v : start) v = {gauss(rng.engine()), gauss(rng.engine())};
    const double s = 1.0 / norm2(start);
    for (auto& v : start) v *= s;
  }

  std::size_t matvecs = 0;
  double best_residual = std::numeric_limits<double>::infinity();
  const std::size_t basis_cap = std::max<std::size_t>(
      2, std::min(opts.krylov_dim, dim));

  while (true) {
    std::vector<Vec> basis{start};
    std::vector<double> alpha, beta;
    Ritz ritz{0.0, {}};
    Vec w(dim);
    for (std::size_t j = 0;; ++j) {
      op.apply(basis[j], w);
      ++matvecs;
      alpha.push_back(dot(basis[j], w).real());
      // Two passes of classical Gram-Schmidt against the whole basis.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& v : basis) axpy(-dot(v, w), v, w);
      }
      const double b = norm2(w);
      ritz = lowest_ritz(alpha, beta);
      const double estimate = b * std::abs(ritz.vector[ritz.vector.size() - 1]);
      const bool exhausted = b < 1e-13 || basis.size() == dim;
      if (exhausted || estimate < 0.1 * opts.tol || basis.size() >= basis_cap ||
          matvecs >= opts.max_iter) {
        break;
      }
      beta.push_back(b);
      for (auto& v : w) v /= b;
      basis.push_back(w);
    }

    Vec x(dim, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < basis.size() && i < std::size_t(ritz.vector.size()); ++i) {
      axpy(ritz.vector[static_cast<Eigen::Index>(i)], basis[i], x);
    }
    const double s = 1.0 / norm2(x);
    for (auto& v : x) v *= s;

    Vec hx(dim);
    op.apply(x, hx);
    ++matvecs;
    const double energy = dot(x, hx).real();
    axpy(-energy, x, hx);
    const double residual = norm2(hx);
    best_residual = std::min(best_residual, residual);

    if (residual <= opts.tol) {
      GroundState gs;
      gs.energy = energy;
      gs.state = StateVector::normalized(n, std::move(x));
      gs.residual = residual;
      gs.matvecs = matvecs;
      return gs;
    }
    if (matvecs >= opts.max_iter) {
      throw ConvergenceError("Lanczos did not reach residual " +
                                 std::to_string(opts.tol) + " within " +
                                 std::to_string(opts.max_iter) + " matvecs",
                             best_residual);
    }
    start = std::move(x);
  }
}

}  // namespace pauligroup
