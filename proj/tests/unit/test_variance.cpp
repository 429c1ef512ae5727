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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "pauligroup/covariance.hpp"
#include "pauligroup/errors.hpp"
#include "pauligroup/grouping.hpp"
#include "pauligroup/variance.hpp"
#include "test_support.hpp"

namespace pg = pauligroup;
using pg::PauliProduct;
using pg::Relation;
using testsupport::dense;
using testsupport::Gen;
using testsupport::vec;

namespace {

double dense_variance(const pg::Hamiltonian& h, std::span<const std::size_t> group,
                      std::span<const double> coefficients, const pg::StateVector& s) {
  const auto dim = Eigen::Index{1} << h.n_qubits();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < group.size(); ++i) a += coefficients[i] * dense(h.pauli(group[i]));
  const auto v = vec(s);
  const double mean = (v.adjoint() * a * v)(0).real();
  const double sq = (v.adjoint() * a * a * v)(0).real();
  return sq - mean * mean;
}

std::vector<double> random_allocation(Gen& gen, std::size_t n) {
  std::vector<double> m(n);
  for (auto& x : m) x = gen.uniform(0.05, 1.0);
  const double sum = std::accumulate(m.begin(), m.end(), 0.0);
  for (auto& x : m) x /= sum;
  return m;
}

}  // namespace

TEST(Variance, FragmentVarianceMatchesDense) {
  Gen gen(71);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + gen.index(4);
    const auto h = gen.hamiltonian(n, 3 + gen.index(20));
    const auto s = gen.state(n);
    const pg::CovarianceOracle oracle(s);
    const auto frags = pg::group_si(h, trial % 2 ? Relation::kFull : Relation::kQubitWise);
    const pg::GroupCovariances cov(h, frags, oracle);
    const auto vars = pg::group_variances(frags, cov);
    for (std::size_t a = 0; a < frags.size(); ++a) {
      const double want = dense_variance(h, frags.groups[a], frags.coefficients[a], s);
      EXPECT_NEAR(pg::fragment_variance(h, frags.groups[a], frags.coefficients[a], oracle),
                  want, 1e-10);
      EXPECT_NEAR(vars[a], want, 1e-10);
    }
  }
}

TEST(Variance, NonOverlappingFormula) {
  const std::vector<double> v = {4.0, 1.0, 0.0};
  const std::vector<double> m = {2.0, 1.0, 1.0};  // normalized to 1/2, 1/4, 1/4
  const auto r = pg::nonoverlapping_variance(v, m);
  EXPECT_DOUBLE_EQ(r.total_variance, 4.0 / 0.5 + 1.0 / 0.25);
  EXPECT_DOUBLE_EQ(r.per_group[2], 0.0);
  EXPECT_DOUBLE_EQ(r.epsilon(100.0), std::sqrt(12.0 / 100.0));
  const std::vector<double> starving = {0.0, 1.0, 1.0};
  EXPECT_TRUE(std::isinf(pg::nonoverlapping_variance(v, starving).total_variance));
  EXPECT_THROW(pg::nonoverlapping_variance(v, std::vector<double>{1.0}), pg::DimensionError);
  EXPECT_THROW(pg::nonoverlapping_variance(v, std::vector<double>{0.0, 0.0, 0.0}),
               pg::ValidationError);
}

TEST(Variance, OptimalAllocationBeatsGrid) {
  Gen gen(72);
  for (int trial = 0; trial < 30; ++trial) {
    const std::vector<double> v = {gen.uniform(0.01, 3.0), gen.uniform(0.01, 3.0),
                                   gen.uniform(0.01, 3.0)};
    const auto opt = pg::optimal_allocation(v);
    const double best = pg::nonoverlapping_variance(v, opt.m).total_variance;
    EXPECT_NEAR(best, pg::optimal_total_variance(v), 1e-12 * best);
    for (int i = 1; i < 1000; i += 7) {
      for (int j = 1; i + j < 1000; j += 7) {
        const std::vector<double> m = {i * 1e-3, j * 1e-3, 1.0 - (i + j) * 1e-3};
        EXPECT_LE(best, pg::nonoverlapping_variance(v, m).total_variance * (1 + 1e-12));
      }
    }
  }
  const auto flat = pg::optimal_allocation(std::vector<double>{0.0, 0.0});
  EXPECT_EQ(flat.m, (std::vector<double>{0.5, 0.5}));
  EXPECT_THROW(pg::optimal_allocation(std::vector<double>{}), pg::ValidationError);
  EXPECT_THROW(pg::optimal_allocation(std::vector<double>{-1.0}), pg::ValidationError);
}

TEST(Variance, OverlappingEqualsItsSplittingImage) {
  // Averaging every measurement of a term is the same estimator as splitting
  // the coefficient in proportion to the shots each group receives.
  Gen gen(73);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + gen.index(4);
    const auto h = gen.hamiltonian(n, 3 + gen.index(25));
    const pg::CovarianceOracle oracle(gen.state(n));
    const auto r = trial % 2 ? Relation::kFull : Relation::kQubitWise;
    const auto ext = pg::extend_overlap(h, pg::group_si(h, r));
    const auto m = random_allocation(gen, ext.size());
    const pg::GroupCovariances cov(h, ext, oracle);
    const double overlapping = pg::overlapping_variance(h, ext, m, cov);
    const auto split = pg::allocation_as_splitting(h, ext, m);
    EXPECT_NO_THROW(pg::validate(h, split));
    const double eq = pg::nonoverlapping_variance(pg::group_variances(split, cov), m)
                          .total_variance;
    EXPECT_NEAR(overlapping, eq, 1e-10 * std::max(1.0, eq));
  }
}

TEST(Variance, OverlappingReducesToNonOverlappingForPartitions) {
  Gen gen(74);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = gen.hamiltonian(3, 10);
    const pg::CovarianceOracle oracle(gen.state(3));
    const auto si = pg::group_si(h, Relation::kFull);
    const auto m = random_allocation(gen, si.size());
    const pg::GroupCovariances cov(h, si, oracle);
    EXPECT_NEAR(pg::overlapping_variance(h, si, m, cov),
                pg::nonoverlapping_variance(pg::group_variances(si, cov), m).total_variance,
                1e-10);
  }
}

TEST(Variance, UnmeasuredTermIsInfeasible) {
  const pg::Hamiltonian h(1, {{1.0, PauliProduct::from_label("Z")},
                              {0.5, PauliProduct::from_label("X")}});
  const pg::CovarianceOracle oracle(pg::StateVector::basis_state(1, 0));
  const auto si = pg::group_si(h, Relation::kFull);
  ASSERT_EQ(si.size(), 2u);
  const pg::GroupCovariances cov(h, si, oracle);
  const std::vector<double> m = {1.0, 0.0};
  EXPECT_THROW(pg::overlapping_variance(h, si, m, cov), pg::InfeasibleError);
  EXPECT_THROW(pg::allocation_as_splitting(h, si, m), pg::InfeasibleError);
}

TEST(Variance, EigenstateHasZeroVariance) {
  const pg::Hamiltonian h(2, {{0.3, PauliProduct::from_label("ZI")},
                              {-0.2, PauliProduct::from_label("ZZ")},
                              {0.1, PauliProduct::from_label("IZ")}});
  const pg::CovarianceOracle oracle(pg::StateVector::basis_state(2, 1));
  const auto si = pg::group_si(h, Relation::kQubitWise);
  const pg::GroupCovariances cov(h, si, oracle);
  EXPECT_EQ(pg::optimal_total_variance(pg::group_variances(si, cov)), 0.0);
}
