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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pauligroup/hamiltonian.hpp"

namespace pauligroup {

/// Compatibility relation used to decide whether two terms share a group.
enum class Relation { kQubitWise, kFull };

std::string_view to_string(Relation r);
/// Accepts "qwc" or "fc" (case-insensitive).
Relation parse_relation(std::string_view text);

bool compatible(Relation r, const PauliProduct& a, const PauliProduct& b);

/// A partition (or cover, when overlapping) of the measurable Hamiltonian
/// terms into compatible groups, with per-group split coefficients.
///
/// Group members are term indices into the Hamiltonian. The identity term
/// is never a member: it carries no variance and is added as a constant.
struct FragmentSet {
  Relation relation = Relation::kFull;
  std::size_t n_terms = 0;
  std::vector<std::vector<std::size_t>> groups;
  /// coefficients[a][i] is the share of term groups[a][i] measured in group a.
  std::vector<std::vector<double>> coefficients;

  std::size_t size() const noexcept { return groups.size(); }
  /// I_k: groups that contain term k, ascending.
  std::vector<std::vector<std::size_t>> membership() const;
  bool overlapping() const;
  /// Number of split coefficients left free once each term's constraint
  /// eliminates one of them: sum over terms of (|I_k| - 1).
  std::size_t split_variable_count() const;
  /// Position of term k inside group a, if present.
  std::optional<std::size_t> position(std::size_t a, std::size_t k) const;
};

/// Checks the FragmentSet invariants against `h`: every group pairwise
/// compatible under its relation, coefficients sum to c_k (within `tol`,
/// relative to |c_k|), every measurable term covered. Throws
/// ValidationError describing the first violation.
void validate(const Hamiltonian& h, const FragmentSet& frags,
              double tol = 1e-12);

/// Largest-first greedy coloring of the incompatibility graph. Vertices are
/// taken in decreasing degree (ties by canonical Pauli order) and given the
/// lowest-index group they are compatible with. Non-overlapping.
FragmentSet group_lf(const Hamiltonian& h, Relation relation);

/// Sorted insertion: terms in decreasing |c_k| (ties by canonical Pauli
/// order); each sweep over the remaining terms fills one group with every
/// term compatible with all its current members. Non-overlapping.
FragmentSet group_si(const Hamiltonian& h, Relation relation);

/// Overlapping extension of a sorted-insertion result. Groups are revisited
/// in order; each absorbs every previously placed term (in the order those
/// terms were first placed) that is compatible with all its current
/// members, after which its own original members join the placed list.
///
/// Split coefficients: with an empty `allocation` each term keeps its full
/// coefficient in its original group and 0 elsewhere; otherwise
/// c_k^(a) = c_k m_a / M_k with M_k the sum of m over the term's groups.
FragmentSet extend_overlap(const Hamiltonian& h, const FragmentSet& base,
                           std::span<const double> allocation = {});

}  // namespace pauligroup
