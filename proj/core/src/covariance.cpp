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

#include "pauligroup/covariance.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <string>

#include "pauligroup/errors.hpp"

namespace pauligroup {
namespace {

// Phase-free part of a basis action: P|i> = i^ny (-1)^{i.sign} |i ^ flip>
// where ny counts Y factors. Returns Re(i^ny * S) for the raw sum S.
double apply_y_phase(std::uint64_t flip, std::uint64_t sign, Complex sum) {
  switch (std::popcount(flip & sign) & 3) {
    case 0:
      return sum.real();
    case 1:
      return -sum.imag();
    case 2:
      return -sum.real();
    default:
      return sum.imag();
  }
}

double raw_expectation(std::span<const Complex> amps, std::uint64_t flip,
                       std::uint64_t sign) {
  Complex acc{0.0, 0.0};
  if (flip == 0) {
    double re = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
      const double w = std::norm(amps[i]);
      re += (std::popcount(i & sign) & 1) ? -w : w;
    }
    acc = re;
  } else {
    for (std::size_t i = 0; i < amps.size(); ++i) {
      const Complex t = std::conj(amps[i ^ flip]) * amps[i];
      acc += (std::popcount(i & sign) & 1) ? -t : t;
    }
  }
  return apply_y_phase(flip, sign, acc);
}

// In-place unnormalized Walsh-Hadamard transform:
// out[z] = sum_i in[i] (-1)^popcount(i & z).
void walsh_hadamard(std::vector<Complex>& v) {
  for (std::size_t h = 1; h < v.size(); h <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const Complex a = v[j], b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

}  // namespace

std::size_t CovarianceOracle::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = k.flip * 0x9e3779b97f4a7c15ULL ^ (k.sign + 0x632be59bd9b4e019ULL);
  h ^= h >> 29;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 32;
  return static_cast<std::size_t>(h);
}

CovarianceOracle::CovarianceOracle(StateVector state)
    : state_(std::move(state)) {}

double CovarianceOracle::unsigned_expectation(const PauliProduct& p,
                                              BasisAction& action) const {
  if (p.n_qubits() != state_.n_qubits()) {
    throw DimensionError("oracle: Pauli acts on " +
                         std::to_string(p.n_qubits()) + " qubits, state has " +
                         std::to_string(state_.n_qubits()));
  }
  action = basis_action(p);
  const Key key = key_of(action);
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const double value =
      raw_expectation(state_.amplitudes(), action.flip_mask, action.sign_mask);
  std::unique_lock lock(mutex_);
  cache_.emplace(key, value);
  return value;
}

double CovarianceOracle::expectation(const PauliProduct& p) const {
  if (!p.is_hermitian()) {
    throw ValidationError("oracle: " + p.to_string() + " is not Hermitian");
  }
  BasisAction action;
  const double value = unsigned_expectation(p, action);
  return p.phase() == 2 ? -value : value;
}

double CovarianceOracle::variance(const PauliProduct& p) const {
  const double e = expectation(p);
  return 1.0 - e * e;
}

double CovarianceOracle::covariance(const PauliProduct& p,
                                    const PauliProduct& q) const {
  if (!fully_commutes(p, q)) {
    throw ContractError("covariance requested for anticommuting pair " +
                        p.to_string() + ", " + q.to_string());
  }
  return expectation(multiply(p, q)) - expectation(p) * expectation(q);
}

std::vector<double> CovarianceOracle::covariance_matrix(
    std::span<const PauliProduct> group) const {
  const std::size_t n = group.size();
  std::vector<PauliProduct> products;
  products.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (!fully_commutes(group[i], group[j])) {
        throw ContractError("covariance_matrix: " + group[i].to_string() +
                            " and " + group[j].to_string() +
                            " do not commute");
      }
      products.push_back(multiply(group[i], group[j]));
    }
  }
  prefetch(products);
  prefetch(group);
  std::vector<double> means(n);
  for (std::size_t i = 0; i < n; ++i) means[i] = expectation(group[i]);
  std::vector<double> out(n * n);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j, ++idx) {
      const double c = expectation(products[idx]) - means[i] * means[j];
      out[i * n + j] = c;
      out[j * n + i] = c;
    }
  }
  return out;
}

void CovarianceOracle::prefetch(std::span<const PauliProduct> products) const {
  // Collect uncached keys, bucketed by X pattern.
  std::map<std::uint64_t, std::vector<std::uint64_t>> missing;
  {
    std::shared_lock lock(mutex_);
    for (const auto& p : products) {
      if (p.n_qubits() != state_.n_qubits()) {
        throw DimensionError("oracle: qubit count mismatch in prefetch");
      }
      const BasisAction a = basis_action(p);
      if (!cache_.contains(key_of(a))) {
        missing[a.flip_mask].push_back(a.sign_mask);
      }
    }
  }
  const auto amps = state_.amplitudes();
  const std::size_t n = state_.n_qubits();
  std::vector<Complex> buffer;
  for (auto& [flip, signs] : missing) {
    std::sort(signs.begin(), signs.end());
    signs.erase(std::unique(signs.begin(), signs.end()), signs.end());
    std::vector<std::pair<Key, double>> values;
    values.reserve(signs.size());
    // A transform costs about n passes over the state; direct evaluation
    // costs one pass per product.
    if (signs.size() > n + 1) {
      buffer.resize(amps.size());
      for (std::size_t i = 0; i < amps.size(); ++i) {
        buffer[i] = std::conj(amps[i ^ flip]) * amps[i];
      }
      walsh_hadamard(buffer);
      for (const auto sign : signs) {
        values.push_back({{flip, sign}, apply_y_phase(flip, sign, buffer[sign])});
      }
    } else {
      for (const auto sign : signs) {
        values.push_back({{flip, sign}, raw_expectation(amps, flip, sign)});
      }
    }
    std::unique_lock lock(mutex_);
    for (const auto& [key, value] : values) cache_.emplace(key, value);
  }
}

std::size_t CovarianceOracle::cache_size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

}  // namespace pauligroup
