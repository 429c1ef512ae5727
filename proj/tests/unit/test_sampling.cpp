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

#include "pauligroup/covariance.hpp"
#include "pauligroup/errors.hpp"
#include "pauligroup/sampling.hpp"
#include "test_support.hpp"

namespace pg = pauligroup;
using pg::PauliProduct;
using testsupport::Gen;

TEST(Sampling, MeansAndCovariancesWithinStatisticalError) {
  Gen gen(51);
  const std::size_t shots = 40000;
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + gen.index(4);
    const auto group = gen.commuting_group(n, 1 + gen.index(5));
    const auto s = gen.state(n);
    const pg::CovarianceOracle oracle(s);
    const auto table = pg::sample_group(group, s, shots, 1000 + trial);
    ASSERT_EQ(table.shots, shots);
    ASSERT_EQ(table.n_paulis, group.size());
    for (std::size_t j = 0; j < group.size(); ++j) {
      const double e = oracle.expectation(group[j]);
      const double sigma = std::sqrt(std::max(1.0 - e * e, 1e-4) / shots);
      EXPECT_NEAR(table.mean(j), e, 5.0 * sigma) << group[j].to_string();
      for (std::size_t k = 0; k < group.size(); ++k) {
        // Outcomes are +-1, so a covariance estimate has spread below 2/sqrt(shots).
        EXPECT_NEAR(table.covariance(j, k), oracle.covariance(group[j], group[k]),
                    10.0 / std::sqrt(double(shots)));
      }
    }
  }
}

TEST(Sampling, OutcomesAreConsistentWithProducts) {
  // P0 P1 = P2 as operators, so each shot must satisfy o0 * o1 = o2.
  const std::vector<PauliProduct> group = {PauliProduct::from_label("XX"),
                                           PauliProduct::from_label("ZZ"),
                                           PauliProduct::from_label("YY")};
  Gen gen(52);
  const auto s = gen.state(2);
  const auto table = pg::sample_group(group, s, 500, 7);
  for (std::size_t shot = 0; shot < table.shots; ++shot) {
    // XX ZZ = -YY.
    EXPECT_EQ(table.at(shot, 0) * table.at(shot, 1), -table.at(shot, 2));
  }
}

TEST(Sampling, EigenstateGivesConstantOutcomes) {
  const std::vector<PauliProduct> group = {PauliProduct::from_label("ZI"),
                                           PauliProduct::from_label("IZ")};
  const auto s = pg::StateVector::basis_state(2, 2);
  const auto table = pg::sample_group(group, s, 100, 3);
  for (std::size_t shot = 0; shot < 100; ++shot) {
    EXPECT_EQ(table.at(shot, 0), -1);
    EXPECT_EQ(table.at(shot, 1), 1);
  }
  EXPECT_EQ(table.covariance(0, 0), 0.0);
}

TEST(Sampling, DeterministicPerSeed) {
  Gen gen(53);
  const auto group = gen.commuting_group(4, 4);
  const auto s = gen.state(4);
  const auto a = pg::sample_group(group, s, 1000, 99);
  const auto b = pg::sample_group(group, s, 1000, 99);
  const auto c = pg::sample_group(group, s, 1000, 100);
  EXPECT_EQ(a.values, b.values);
  EXPECT_NE(a.values, c.values);
}

TEST(Sampling, RejectsAnticommutingGroup) {
  const std::vector<PauliProduct> group = {PauliProduct::from_label("X"),
                                           PauliProduct::from_label("Z")};
  EXPECT_THROW(pg::sample_group(group, pg::StateVector::basis_state(1, 0), 10, 1),
               pg::ContractError);
}
