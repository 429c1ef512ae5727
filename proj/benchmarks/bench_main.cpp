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

#include <benchmark/benchmark.h>

#include <random>

#include "pauligroup/covariance.hpp"
#include "pauligroup/ground_state.hpp"
#include "pauligroup/grouping.hpp"
#include "pauligroup/io.hpp"
#include "pauligroup/optimizers.hpp"
#include "pauligroup/variance.hpp"

namespace pg = pauligroup;

namespace {

const pg::Hamiltonian& lih() {
  static const auto h = pg::load_hamiltonian(PAULIGROUP_DATA_DIR "/lih.ham");
  return h;
}

pg::StateVector random_state(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> d;
  std::vector<pg::Complex> a(std::size_t{1} << n);
  for (auto& x : a) x = {d(eng), d(eng)};
  return pg::StateVector::normalized(n, std::move(a));
}

void BM_FullCommutation(benchmark::State& state) {
  const auto& h = lih();
  std::size_t count = 0;
  for (auto _ : state) {
    for (std::size_t i = 0; i < h.size(); ++i) {
      count += pg::fully_commutes(h.pauli(i), h.pauli((i * 7 + 3) % h.size()));
    }
  }
  benchmark::DoNotOptimize(count);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * h.size()));
}
BENCHMARK(BM_FullCommutation);

void BM_SortedInsertion(benchmark::State& state) {
  const auto r = state.range(0) ? pg::Relation::kFull : pg::Relation::kQubitWise;
  for (auto _ : state) benchmark::DoNotOptimize(pg::group_si(lih(), r));
}
BENCHMARK(BM_SortedInsertion)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CovarianceFill(benchmark::State& state) {
  const auto& h = lih();
  const auto ext = pg::extend_overlap(h, pg::group_si(h, pg::Relation::kFull));
  const auto s = random_state(h.n_qubits(), 1);
  for (auto _ : state) {
    const pg::CovarianceOracle oracle(s);
    benchmark::DoNotOptimize(pg::GroupCovariances(h, ext, oracle));
  }
}
BENCHMARK(BM_CovarianceFill)->Unit(benchmark::kMillisecond);

void BM_ImaLiH(benchmark::State& state) {
  const auto& h = lih();
  const auto si = pg::group_si(h, pg::Relation::kFull);
  const auto s = random_state(h.n_qubits(), 2);
  const pg::CovarianceOracle oracle(s);
  const pg::GroupCovariances si_cov(h, si, oracle);
  const auto m = pg::optimal_allocation(pg::group_variances(si, si_cov)).m;
  const auto ext = pg::extend_overlap(h, si);
  const pg::GroupCovariances cov(h, ext, oracle);
  for (auto _ : state) benchmark::DoNotOptimize(pg::ima_optimize(h, ext, cov, m));
}
BENCHMARK(BM_ImaLiH)->Unit(benchmark::kMillisecond);

void BM_HamiltonianMatvec(benchmark::State& state) {
  const auto& h = lih();
  const auto s = random_state(h.n_qubits(), 3);
  std::vector<pg::Complex> out(s.dim());
  for (auto _ : state) {
    pg::apply_hamiltonian(h, s.amplitudes(), out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_HamiltonianMatvec)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
