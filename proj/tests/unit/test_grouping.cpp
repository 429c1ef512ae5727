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

#include <algorithm>
#include <cmath>

#include "pauligroup/errors.hpp"
#include "pauligroup/grouping.hpp"
#include "pauligroup/io.hpp"
#include "test_support.hpp"

namespace pg = pauligroup;
using pg::PauliProduct;
using pg::Relation;
using testsupport::Gen;

namespace {

pg::Hamiltonian h2() { return pg::load_hamiltonian(PAULIGROUP_DATA_DIR "/h2.ham"); }

// Every measurable term in exactly one group, groups pairwise compatible.
void expect_partition(const pg::Hamiltonian& h, const pg::FragmentSet& f) {
  EXPECT_NO_THROW(pg::validate(h, f));
  EXPECT_FALSE(f.overlapping());
  const auto mem = f.membership();
  for (std::size_t k = 0; k < h.size(); ++k) {
    EXPECT_EQ(mem[k].size(), h.pauli(k).is_identity() ? 0u : 1u);
  }
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t i = 0; i < f.groups[a].size(); ++i) {
      EXPECT_EQ(f.coefficients[a][i], h.coefficient(f.groups[a][i]));
    }
  }
}

}  // namespace

TEST(Grouping, H2Counts) {
  const auto h = h2();
  const auto qwc = pg::group_si(h, Relation::kQubitWise);
  EXPECT_EQ(qwc.size(), 3u);
  EXPECT_EQ(pg::extend_overlap(h, qwc).split_variable_count(), 4u);
  const auto fc = pg::group_si(h, Relation::kFull);
  EXPECT_EQ(fc.size(), 2u);
  EXPECT_EQ(pg::extend_overlap(h, fc).split_variable_count(), 6u);
}

TEST(Grouping, RelationParsing) {
  EXPECT_EQ(pg::parse_relation("QWC"), Relation::kQubitWise);
  EXPECT_EQ(pg::parse_relation("fc"), Relation::kFull);
  EXPECT_THROW(pg::parse_relation("gc"), pg::ValidationError);
  EXPECT_EQ(pg::to_string(Relation::kFull), "fc");
}

TEST(Grouping, RandomPartitionsAreValid) {
  Gen gen(61);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + gen.index(6);
    const auto h = gen.hamiltonian(n, 1 + gen.index(40));
    for (auto r : {Relation::kQubitWise, Relation::kFull}) {
      expect_partition(h, pg::group_lf(h, r));
      const auto si = pg::group_si(h, r);
      expect_partition(h, si);
      // Each group's first member is the largest term not placed earlier.
      for (std::size_t a = 0; a + 1 < si.size(); ++a) {
        const double lead = std::abs(h.coefficient(si.groups[a][0]));
        for (std::size_t b = a + 1; b < si.size(); ++b) {
          for (auto k : si.groups[b]) EXPECT_GE(lead, std::abs(h.coefficient(k)));
        }
      }
    }
  }
}

TEST(Grouping, SortedInsertionGroupsAreMaximalAgainstLaterGroups) {
  // A term left for a later group must clash with some member of each
  // earlier group.
  Gen gen(62);
  for (int trial = 0; trial < 40; ++trial) {
    const auto h = gen.hamiltonian(2 + gen.index(5), 5 + gen.index(30));
    for (auto r : {Relation::kQubitWise, Relation::kFull}) {
      const auto si = pg::group_si(h, r);
      for (std::size_t a = 0; a < si.size(); ++a) {
        for (std::size_t b = a + 1; b < si.size(); ++b) {
          for (auto k : si.groups[b]) {
            const bool clash = std::any_of(
                si.groups[a].begin(), si.groups[a].end(),
                [&](std::size_t j) { return !pg::compatible(r, h.pauli(j), h.pauli(k)); });
            EXPECT_TRUE(clash);
          }
        }
      }
    }
  }
}

TEST(Grouping, ExtendOverlapInvariants) {
  Gen gen(63);
  for (int trial = 0; trial < 40; ++trial) {
    const auto h = gen.hamiltonian(2 + gen.index(5), 3 + gen.index(30));
    for (auto r : {Relation::kQubitWise, Relation::kFull}) {
      const auto base = pg::group_si(h, r);
      const auto ext = pg::extend_overlap(h, base);
      ASSERT_EQ(ext.size(), base.size());
      EXPECT_NO_THROW(pg::validate(h, ext));
      for (std::size_t a = 0; a < base.size(); ++a) {
        // The base group is kept as a prefix with its full coefficients.
        ASSERT_GE(ext.groups[a].size(), base.groups[a].size());
        for (std::size_t i = 0; i < base.groups[a].size(); ++i) {
          EXPECT_EQ(ext.groups[a][i], base.groups[a][i]);
          EXPECT_EQ(ext.coefficients[a][i], base.coefficients[a][i]);
        }
        for (std::size_t i = base.groups[a].size(); i < ext.groups[a].size(); ++i) {
          EXPECT_EQ(ext.coefficients[a][i], 0.0);
        }
      }
      // Splitting by an allocation also preserves the term sums.
      std::vector<double> m(base.size());
      for (auto& x : m) x = gen.uniform(0.1, 1.0);
      const auto split = pg::extend_overlap(h, base, m);
      EXPECT_NO_THROW(pg::validate(h, split, 1e-12));
      EXPECT_EQ(split.groups, ext.groups);
    }
  }
}

TEST(Grouping, ExtendOverlapRejectsBadInput) {
  const auto h = h2();
  const auto base = pg::group_si(h, Relation::kFull);
  const auto ext = pg::extend_overlap(h, base);
  EXPECT_THROW(pg::extend_overlap(h, ext), pg::ContractError);
  const std::vector<double> wrong = {1.0};
  EXPECT_THROW(pg::extend_overlap(h, base, wrong), pg::DimensionError);
}

TEST(Grouping, SingleTermModel) {
  const pg::Hamiltonian h(2, {{0.7, PauliProduct::from_label("XZ")}});
  for (auto r : {Relation::kQubitWise, Relation::kFull}) {
    const auto si = pg::group_si(h, r);
    EXPECT_EQ(si.size(), 1u);
    EXPECT_EQ(pg::extend_overlap(h, si).split_variable_count(), 0u);
  }
}

TEST(Grouping, IdentityIsNeverGrouped) {
  const pg::Hamiltonian h(1, {{2.0, PauliProduct(1)}, {0.5, PauliProduct::from_label("Z")}});
  const auto si = pg::group_si(h, Relation::kFull);
  ASSERT_EQ(si.size(), 1u);
  EXPECT_EQ(si.groups[0], std::vector<std::size_t>{1});
}

TEST(Grouping, ValidateCatchesBrokenSets) {
  const auto h = h2();
  auto f = pg::group_si(h, Relation::kQubitWise);
  auto missing = f;
  missing.groups[2].pop_back();
  missing.coefficients[2].pop_back();
  EXPECT_THROW(pg::validate(h, missing), pg::ValidationError);
  auto wrong_sum = f;
  wrong_sum.coefficients[0][0] *= 2.0;
  EXPECT_THROW(pg::validate(h, wrong_sum), pg::ValidationError);
  auto clash = f;
  clash.groups[0].push_back(clash.groups[1][0]);
  clash.coefficients[0].push_back(0.0);
  EXPECT_THROW(pg::validate(h, clash), pg::ValidationError);
}
