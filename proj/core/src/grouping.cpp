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

#include "pauligroup/grouping.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "pauligroup/errors.hpp"

namespace pauligroup {
namespace {

bool fits(Relation r, const Hamiltonian& h, const std::vector<std::size_t>& group,
          std::size_t candidate) {
  const PauliProduct& p = h.pauli(candidate);
  return std::all_of(group.begin(), group.end(), [&](std::size_t member) {
    return compatible(r, p, h.pauli(member));
  });
}

FragmentSet with_full_coefficients(const Hamiltonian& h, Relation relation,
                                   std::vector<std::vector<std::size_t>> groups) {
  FragmentSet out;
  out.relation = relation;
  out.n_terms = h.size();
  out.groups = std::move(groups);
  out.coefficients.reserve(out.groups.size());
  for (const auto& g : out.groups) {
    std::vector<double> c;
    c.reserve(g.size());
    for (auto k : g) c.push_back(h.coefficient(k));
    out.coefficients.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::string_view to_string(Relation r) {
  return r == Relation::kQubitWise ? "qwc" : "fc";
}

Relation parse_relation(std::string_view text) {
  std::string lower(text);
  for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "qwc") return Relation::kQubitWise;
  if (lower == "fc") return Relation::kFull;
  throw ValidationError("unknown relation '" + std::string(text) +
                        "' (expected qwc or fc)");
}

bool compatible(Relation r, const PauliProduct& a, const PauliProduct& b) {
  return r == Relation::kQubitWise ? qubitwise_commutes(a, b)
                                   : fully_commutes(a, b);
}

std::vector<std::vector<std::size_t>> FragmentSet::membership() const {
  std::vector<std::vector<std::size_t>> out(n_terms);
  for (std::size_t a = 0; a < groups.size(); ++a) {
    for (auto k : groups[a]) out[k].push_back(a);
  }
  return out;
}

bool FragmentSet::overlapping() const {
  for (const auto& groups_of_k : membership()) {
    if (groups_of_k.size() > 1) return true;
  }
  return false;
}

std::size_t FragmentSet::split_variable_count() const {
  std::size_t count = 0;
  for (const auto& groups_of_k : membership()) {
    if (groups_of_k.size() > 1) count += groups_of_k.size() - 1;
  }
  return count;
}

std::optional<std::size_t> FragmentSet::position(std::size_t a,
                                                 std::size_t k) const {
  const auto& g = groups[a];
  const auto it = std::find(g.begin(), g.end(), k);
  if (it == g.end()) return std::nullopt;
  return static_cast<std::size_t>(it - g.begin());
}

void validate(const Hamiltonian& h, const FragmentSet& frags, double tol) {
  if (frags.n_terms != h.size()) {
    throw ValidationError("fragment set built for " +
                          std::to_string(frags.n_terms) +
                          " terms, Hamiltonian has " + std::to_string(h.size()));
  }
  if (frags.coefficients.size() != frags.groups.size()) {
    throw ValidationError("coefficient table does not match group count");
  }
  std::vector<double> sums(h.size(), 0.0);
  std::vector<int> seen(h.size(), 0);
  for (std::size_t a = 0; a < frags.groups.size(); ++a) {
    const auto& g = frags.groups[a];
    if (frags.coefficients[a].size() != g.size()) {
      throw ValidationError("group " + std::to_string(a) +
                            " has mismatched coefficient count");
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] >= h.size()) {
        throw ValidationError("group " + std::to_string(a) +
                              " references missing term");
      }
      if (h.pauli(g[i]).is_identity()) {
        throw ValidationError("identity term placed in group " +
                              std::to_string(a));
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (g[i] == g[j]) {
          throw ValidationError("term repeated in group " + std::to_string(a));
        }
        if (!compatible(frags.relation, h.pauli(g[i]), h.pauli(g[j]))) {
          throw ValidationError("group " + std::to_string(a) + " mixes " +
                                h.pauli(g[i]).to_string() + " and " +
                                h.pauli(g[j]).to_string());
        }
      }
      sums[g[i]] += frags.coefficients[a][i];
      seen[g[i]] = 1;
    }
  }
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (h.pauli(k).is_identity()) continue;
    if (!seen[k]) {
      throw ValidationError("term " + std::to_string(k) + " (" +
                            h.pauli(k).to_string() + ") is in no group");
    }
    const double c = h.coefficient(k);
    if (std::abs(sums[k] - c) > tol * std::max(1.0, std::abs(c))) {
      throw ValidationError("split coefficients of term " + std::to_string(k) +
                            " sum to " + std::to_string(sums[k]) +
                            ", expected " + std::to_string(c));
    }
  }
}

FragmentSet group_lf(const Hamiltonian& h, Relation relation) {
  const auto terms = h.measurable_terms();
  std::vector<std::size_t> degree(h.size(), 0);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (!compatible(relation, h.pauli(terms[i]), h.pauli(terms[j]))) {
        ++degree[terms[i]];
        ++degree[terms[j]];
      }
    }
  }
  auto order = terms;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (degree[a] != degree[b]) return degree[a] > degree[b];
    return h.pauli(a) < h.pauli(b);
  });
  std::vector<std::vector<std::size_t>> groups;
  for (auto k : order) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
      return fits(relation, h, g, k);
    });
    if (it == groups.end()) {
      groups.push_back({k});
    } else {
      it->push_back(k);
    }
  }
  return with_full_coefficients(h, relation, std::move(groups));
}

FragmentSet group_si(const Hamiltonian& h, Relation relation) {
  auto remaining = h.measurable_terms();
  std::sort(remaining.begin(), remaining.end(),
            [&](std::size_t a, std::size_t b) {
              const double ca = std::abs(h.coefficient(a));
              const double cb = std::abs(h.coefficient(b));
              if (ca != cb) return ca > cb;
              return h.pauli(a) < h.pauli(b);
            });
  std::vector<std::vector<std::size_t>> groups;
  while (!remaining.empty()) {
    std::vector<std::size_t> group;
    std::vector<std::size_t> rest;
    rest.reserve(remaining.size());
    for (auto k : remaining) {
      if (fits(relation, h, group, k)) {
        group.push_back(k);
      } else {
        rest.push_back(k);
      }
    }
    groups.push_back(std::move(group));
    remaining = std::move(rest);
  }
  return with_full_coefficients(h, relation, std::move(groups));
}

FragmentSet extend_overlap(const Hamiltonian& h, const FragmentSet& base,
                           std::span<const double> allocation) {
  if (base.n_terms != h.size()) {
    throw ValidationError("extend_overlap: fragment set does not match Hamiltonian");
  }
  if (base.overlapping()) {
    throw ContractError("extend_overlap expects a non-overlapping fragment set");
  }
  if (!allocation.empty() && allocation.size() != base.size()) {
    throw DimensionError("extend_overlap: allocation has " +
                         std::to_string(allocation.size()) + " entries for " +
                         std::to_string(base.size()) + " groups");
  }
  FragmentSet out;
  out.relation = base.relation;
  out.n_terms = base.n_terms;
  out.groups.reserve(base.size());

  std::vector<std::size_t> home(h.size(), base.size());
  for (std::size_t a = 0; a < base.size(); ++a) {
    for (auto k : base.groups[a]) home[k] = a;
  }

  std::vector<std::size_t> placed;  // P_*, in insertion order
  std::vector<char> is_placed(h.size(), 0);
  for (std::size_t a = 0; a < base.size(); ++a) {
    std::vector<std::size_t> group = base.groups[a];
    for (auto k : placed) {
      if (fits(base.relation, h, group, k)) group.push_back(k);
    }
    for (auto k : group) {
      if (!is_placed[k]) {
        is_placed[k] = 1;
        placed.push_back(k);
      }
    }
    out.groups.push_back(std::move(group));
  }

  std::vector<double> totals(h.size(), 0.0);
  if (!allocation.empty()) {
    for (std::size_t a = 0; a < out.size(); ++a) {
      for (auto k : out.groups[a]) totals[k] += allocation[a];
    }
  }
  out.coefficients.resize(out.size());
  for (std::size_t a = 0; a < out.size(); ++a) {
    for (auto k : out.groups[a]) {
      double c;
      if (allocation.empty()) {
        c = home[k] == a ? h.coefficient(k) : 0.0;
      } else {
        if (!(totals[k] > 0.0)) {
          throw InfeasibleError("term " + std::to_string(k) + " (" +
                                    h.pauli(k).to_string() +
                                    ") has zero total allocation",
                                k);
        }
        c = h.coefficient(k) * allocation[a] / totals[k];
      }
      out.coefficients[a].push_back(c);
    }
  }
  return out;
}

}  // namespace pauligroup
