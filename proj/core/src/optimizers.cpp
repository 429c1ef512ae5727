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

#include "pauligroup/optimizers.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "pauligroup/errors.hpp"

namespace pauligroup {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Groups whose proportion falls below this are left out of the coefficient
// solve: their 1/m_a weight would swamp the normal equations.
constexpr double kFrozenShare = 1e-12;
// Terms with smaller Var(P_k) have vanishing covariance rows; splitting
// them changes nothing.
constexpr double kNegligibleTermVariance = 1e-14;

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

std::vector<double> check_allocation(const FragmentSet& frags,
                                     std::span<const double> m) {
  if (m.size() != frags.size()) {
    throw DimensionError("allocation has " + std::to_string(m.size()) +
                         " entries for " + std::to_string(frags.size()) +
                         " groups");
  }
  double sum = 0.0;
  for (const double v : m) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ValidationError("allocation entries must be finite and >= 0");
    }
    sum += v;
  }
  if (!(sum > 0.0)) throw ValidationError("allocation sums to zero");
  std::vector<double> out(m.begin(), m.end());
  for (auto& v : out) v /= sum;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// IMA

ImaResult ima_optimize(const Hamiltonian& h, const FragmentSet& frags,
                       const GroupCovariances& cov,
                       std::span<const double> initial,
                       const ImaOptions& opts) {
  const auto start = Clock::now();
  ImaResult result;
  std::vector<double> m = check_allocation(frags, initial);
  double v = overlapping_variance(h, frags, m, cov);
  result.allocation.m = m;
  result.variance = v;
  result.trace.entries.push_back({v, 0.0, seconds_since(start), "initial", true});

  for (std::size_t cycle = 1; cycle <= opts.n_cycles; ++cycle) {
    const auto split = allocation_as_splitting(h, frags, m);
    auto next = optimal_allocation(group_variances(split, cov)).m;
    const double step = max_abs_diff(next, m);
    double next_v = std::numeric_limits<double>::infinity();
    bool feasible = true;
    try {
      next_v = overlapping_variance(h, frags, next, cov);
    } catch (const InfeasibleError&) {
      feasible = false;
    }
    result.trace.entries.push_back(
        {next_v, step, seconds_since(start), "cycle", feasible});
    if (!feasible) break;
    m = std::move(next);
    if (next_v < result.variance) {
      result.variance = next_v;
      result.allocation.m = m;
      result.best_cycle = cycle;
    }
    if (step == 0.0) break;
  }
  return result;
}

// ---------------------------------------------------------------------------
// GMA

AllocationGradient allocation_gradient(const Hamiltonian& h,
                                       const FragmentSet& frags,
                                       const GroupCovariances& cov,
                                       std::span<const double> m) {
  if (m.size() != frags.size()) {
    throw DimensionError("allocation length does not match group count");
  }
  std::vector<double> totals(frags.n_terms, 0.0);
  for (std::size_t a = 0; a < frags.size(); ++a) {
    for (auto k : frags.groups[a]) totals[k] += m[a];
  }
  for (const auto& g : frags.groups) {
    for (auto k : g) {
      if (!(totals[k] > 0.0)) {
        throw InfeasibleError("term " + std::to_string(k) + " (" +
                                  h.pauli(k).to_string() +
                                  ") is never measured",
                              k);
      }
    }
  }

  // With w_k = c_k / M_k and u = C_a w restricted to group a:
  //   Var = sum_a m_a S_a,  S_a = w^T C_a w
  //   dVar/dm_b = S_b - 2 sum_{j in b} w_j g_j / M_j
  //   g_j = sum_{a in I_j} m_a (C_a w)_j
  AllocationGradient out;
  out.d_m.assign(frags.size(), 0.0);
  std::vector<double> g(frags.n_terms, 0.0);
  std::vector<double> w, u;
  for (std::size_t a = 0; a < frags.size(); ++a) {
    const auto& grp = frags.groups[a];
    const std::size_t n = grp.size();
    w.resize(n);
    u.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) w[i] = h.coefficient(grp[i]) / totals[grp[i]];
    const auto block = cov.block(a);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += block[i * n + j] * w[j];
      u[i] = row;
      s += w[i] * row;
    }
    out.d_m[a] = s;
    out.variance += m[a] * s;
    for (std::size_t i = 0; i < n; ++i) g[grp[i]] += m[a] * u[i];
  }
  for (std::size_t a = 0; a < frags.size(); ++a) {
    double acc = 0.0;
    for (auto k : frags.groups[a]) {
      acc += h.coefficient(k) * g[k] / (totals[k] * totals[k]);
    }
    out.d_m[a] -= 2.0 * acc;
  }
  return out;
}

std::vector<double> softmax(std::span<const double> p) {
  if (p.empty()) return {};
  const double top = *std::max_element(p.begin(), p.end());
  std::vector<double> m(p.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    m[i] = std::exp(p[i] - top);
    sum += m[i];
  }
  for (auto& v : m) v /= sum;
  return m;
}

namespace {

std::vector<double> chain_softmax(std::span<const double> m,
                                  std::span<const double> d_m) {
  double mean = 0.0;
  for (std::size_t a = 0; a < m.size(); ++a) mean += m[a] * d_m[a];
  std::vector<double> out(m.size());
  for (std::size_t b = 0; b < m.size(); ++b) out[b] = m[b] * (d_m[b] - mean);
  return out;
}

}  // namespace

std::vector<double> softmax_gradient(const Hamiltonian& h,
                                     const FragmentSet& frags,
                                     const GroupCovariances& cov,
                                     std::span<const double> p) {
  const auto m = softmax(p);
  return chain_softmax(m, allocation_gradient(h, frags, cov, m).d_m);
}

GmaResult gma_optimize(const Hamiltonian& h, const FragmentSet& frags,
                       const GroupCovariances& cov,
                       std::span<const double> initial,
                       const GmaOptions& opts) {
  const auto start = Clock::now();
  const auto m0 = check_allocation(frags, initial);
  const double top = *std::max_element(m0.begin(), m0.end());
  std::vector<double> p(m0.size());
  for (std::size_t a = 0; a < m0.size(); ++a) {
    p[a] = std::log(std::max(m0[a], top * 1e-12));
  }

  auto m = softmax(p);
  auto eval = allocation_gradient(h, frags, cov, m);
  const double v0 = eval.variance;
  GmaResult result;
  result.allocation.m = m;
  result.allocation.logits = p;
  result.variance = v0;
  result.trace.entries.push_back({v0, 0.0, seconds_since(start), "initial", true});
  if (!(v0 > 0.0)) return result;

  double rate = opts.learning_rate / v0;
  std::vector<double> trial(p.size());
  for (std::size_t step = 0; step < opts.steps; ++step) {
    const auto grad = chain_softmax(m, eval.d_m);
    double norm = 0.0;
    for (const double g : grad) norm += g * g;
    norm = std::sqrt(norm);
    if (norm == 0.0) break;

    bool accepted = false;
    AllocationGradient next;
    std::vector<double> next_m;
    for (int attempt = 0; attempt < 60 && !accepted; ++attempt) {
      for (std::size_t a = 0; a < p.size(); ++a) trial[a] = p[a] - rate * grad[a];
      next_m = softmax(trial);
      try {
        next = allocation_gradient(h, frags, cov, next_m);
        accepted = next.variance < eval.variance;
      } catch (const InfeasibleError&) {
        accepted = false;
      }
      if (!accepted) rate *= 0.5;
    }
    if (!accepted) break;

    const double improvement = eval.variance - next.variance;
    p = trial;
    m = std::move(next_m);
    eval = std::move(next);
    rate *= 1.5;
    result.trace.entries.push_back(
        {eval.variance, norm, seconds_since(start), "gradient", true});
    if (eval.variance > 10.0 * v0) {
      result.trace.diverged = true;
      break;
    }
    if (eval.variance < result.variance) {
      result.variance = eval.variance;
      result.allocation.m = m;
      result.allocation.logits = p;
    }
    if (improvement < opts.tol * eval.variance) break;
  }
  return result;
}

// ---------------------------------------------------------------------------
// ICS

double splitting_variance(const FragmentSet& frags, const GroupCovariances& cov,
                          std::span<const double> m) {
  return nonoverlapping_variance(group_variances(frags, cov), m).total_variance;
}

namespace {

// (C_a c^(a)) / m_a for every active group; empty for frozen groups.
std::vector<std::vector<double>> weighted_products(
    const FragmentSet& frags, const GroupCovariances& cov,
    std::span<const double> m) {
  std::vector<std::vector<double>> out(frags.size());
  for (std::size_t a = 0; a < frags.size(); ++a) {
    if (m[a] < kFrozenShare) continue;
    const auto& c = frags.coefficients[a];
    const std::size_t n = c.size();
    const auto block = cov.block(a);
    out[a].assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += block[i * n + j] * c[j];
      out[a][i] = row / m[a];
    }
  }
  return out;
}

struct SplitTerm {
  std::size_t term = 0;
  std::size_t anchor_group = 0;
  std::size_t anchor_pos = 0;
  // (group, position) of the free shares.
  std::vector<std::pair<std::size_t, std::size_t>> free;
};

// Active memberships of term k, with positions, anchor first.
SplitTerm make_split(const FragmentSet& frags,
                     const std::vector<std::size_t>& groups_of_k,
                     std::size_t k, std::span<const double> m) {
  SplitTerm s;
  s.term = k;
  double best = -1.0;
  std::vector<std::pair<std::size_t, std::size_t>> active;
  for (auto a : groups_of_k) {
    if (m[a] < kFrozenShare) continue;
    const std::size_t pos = *frags.position(a, k);
    active.emplace_back(a, pos);
    const double mag = std::abs(frags.coefficients[a][pos]);
    if (mag > best) {
      best = mag;
      s.anchor_group = a;
      s.anchor_pos = pos;
    }
  }
  for (const auto& ap : active) {
    if (ap.first != s.anchor_group) s.free.push_back(ap);
  }
  return s;
}

}  // namespace

std::vector<double> splitting_gradient(const FragmentSet& frags,
                                       const GroupCovariances& cov,
                                       std::span<const double> m_in) {
  const auto m = check_allocation(frags, m_in);
  const auto u = weighted_products(frags, cov, m);
  const auto membership = frags.membership();
  std::vector<double> grad;
  for (std::size_t k = 0; k < membership.size(); ++k) {
    if (membership[k].size() < 2) continue;
    const auto s = make_split(frags, membership[k], k, m);
    const double anchor = u[s.anchor_group][s.anchor_pos];
    for (const auto& [a, pos] : s.free) grad.push_back(2.0 * (u[a][pos] - anchor));
  }
  return grad;
}

namespace {

struct SolveOutcome {
  bool ok = false;
  bool regularized = false;
};

// One exact coefficient step at fixed m. Updates `frags.coefficients` in
// place and reports how many free variables were optimized.
SolveOutcome coefficient_step(const Hamiltonian& h, FragmentSet& frags,
                              const GroupCovariances& cov,
                              std::span<const double> m,
                              const std::vector<std::vector<std::size_t>>& membership,
                              const IcsOptions& opts, std::size_t& n_free) {
  // Choose the split terms to optimize.
  struct Candidate {
    std::size_t term;
    std::size_t count;
    double weight;
  };
  std::vector<Candidate> candidates;
  std::size_t total = 0;
  for (std::size_t k = 0; k < membership.size(); ++k) {
    if (membership[k].size() < 2) continue;
    if (cov.term_variance(k) <= kNegligibleTermVariance) continue;
    std::size_t active = 0;
    for (auto a : membership[k]) active += m[a] >= kFrozenShare ? 1 : 0;
    if (active < 2) continue;
    const double c = h.coefficient(k);
    candidates.push_back({k, active - 1, c * c * cov.term_variance(k)});
    total += active - 1;
  }
  if (total > opts.max_free_variables) {
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& x, const Candidate& y) {
                       return x.weight > y.weight;
                     });
    std::vector<Candidate> kept;
    std::size_t used = 0;
    for (const auto& c : candidates) {
      if (used + c.count <= opts.max_free_variables) {
        kept.push_back(c);
        used += c.count;
      }
    }
    candidates = std::move(kept);
  }

  std::vector<SplitTerm> splits;
  splits.reserve(candidates.size());
  for (const auto& c : candidates) {
    splits.push_back(make_split(frags, membership[c.term], c.term, m));
  }

  // Per group: positions touched by the solve, each with (variable, sign).
  // A free share enters as +y_v, an anchor share as r_k - sum of its free
  // shares.
  const std::size_t ng = frags.size();
  std::vector<std::vector<std::pair<std::size_t, std::vector<std::pair<int, double>>>>>
      slots(ng);
  std::vector<std::vector<double>> base = frags.coefficients;
  int nv = 0;
  for (const auto& s : splits) {
    const std::size_t k = s.term;
    double target = h.coefficient(k);
    for (auto a : membership[k]) {
      if (m[a] < kFrozenShare) target -= frags.coefficients[a][*frags.position(a, k)];
    }
    std::vector<std::pair<int, double>> anchor_vars;
    for (const auto& [a, pos] : s.free) {
      slots[a].push_back({pos, {{nv, 1.0}}});
      anchor_vars.emplace_back(nv, -1.0);
      base[a][pos] = 0.0;
      ++nv;
    }
    slots[s.anchor_group].push_back({s.anchor_pos, std::move(anchor_vars)});
    base[s.anchor_group][s.anchor_pos] = target;
  }
  n_free = static_cast<std::size_t>(nv);
  if (nv == 0) return {true, false};

  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(nv, nv);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nv);
  std::vector<double> u;
  for (std::size_t a = 0; a < ng; ++a) {
    if (slots[a].empty()) continue;
    const std::size_t n = frags.groups[a].size();
    const auto block = cov.block(a);
    const double inv_m = 1.0 / m[a];
    u.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += block[i * n + j] * base[a][j];
      u[i] = row * inv_m;
    }
    for (const auto& [s, vars_s] : slots[a]) {
      for (const auto& [v, sv] : vars_s) rhs[v] -= sv * u[s];
      for (const auto& [t, vars_t] : slots[a]) {
        const double ct = block[s * n + t] * inv_m;
        if (ct == 0.0) continue;
        for (const auto& [v, sv] : vars_s) {
          for (const auto& [w, sw] : vars_t) G(v, w) += sv * sw * ct;
        }
      }
    }
  }

  // Jacobi scaling; a variable with zero diagonal has no effect and stays 0.
  Eigen::VectorXd scale(nv);
  for (int v = 0; v < nv; ++v) scale[v] = G(v, v) > 0.0 ? 1.0 / std::sqrt(G(v, v)) : 0.0;
  Eigen::MatrixXd S = scale.asDiagonal() * G * scale.asDiagonal();
  for (int v = 0; v < nv; ++v) {
    if (scale[v] == 0.0) S(v, v) = 1.0;
  }
  const Eigen::VectorXd b = scale.asDiagonal() * rhs;

  // Conjugate gradients on S, preconditioned by the factorization. Directions
  // with eigenvalues well above the ridge converge at once; the few below it
  // take one extra iteration each, which plain refinement would not resolve.
  auto refine = [&](auto& solver, Eigen::VectorXd& y) {
    const double bnorm = b.norm();
    Eigen::VectorXd r = b - S * y;
    Eigen::VectorXd z = solver.solve(r);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    for (int it = 0; it < 100 && r.norm() > 1e-14 * bnorm; ++it) {
      const Eigen::VectorXd sp = S * p;
      const double curvature = p.dot(sp);
      if (!(curvature > 0.0)) break;
      const double alpha = rz / curvature;
      y += alpha * p;
      r -= alpha * sp;
      z = solver.solve(r);
      const double rz_next = r.dot(z);
      if (!(rz_next > 0.0)) break;
      p = z + (rz_next / rz) * p;
      rz = rz_next;
    }
  };

  // The normal matrix is often singular: members whose outcomes are tied on
  // the state share null directions. One Cholesky of S + ridge*I serves as
  // the preconditioner; the ridge only decides the component along null
  // directions. LDLT is the fallback.
  SolveOutcome outcome{false, false};
  Eigen::VectorXd y;
  {
    Eigen::MatrixXd R = S;
    R.diagonal().array() += opts.ridge;
    Eigen::LLT<Eigen::MatrixXd> llt(R);
    if (llt.info() == Eigen::Success) {
      y = llt.solve(b);
      refine(llt, y);
      outcome.ok = y.allFinite();
      const auto pivots = llt.matrixLLT().diagonal().array().square();
      outcome.regularized = pivots.minCoeff() < 1e3 * opts.ridge;
    }
  }
  if (!outcome.ok) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(S);
    if (ldlt.info() != Eigen::Success) return outcome;
    y = ldlt.solve(b);
    refine(ldlt, y);
    outcome.ok = y.allFinite();
    outcome.regularized = true;
    if (!outcome.ok) return outcome;
  }
  y = scale.asDiagonal() * y;

  int v = 0;
  for (const auto& s : splits) {
    double rest = base[s.anchor_group][s.anchor_pos];
    for (const auto& [a, pos] : s.free) {
      base[a][pos] = y[v];
      rest -= y[v];
      ++v;
    }
    base[s.anchor_group][s.anchor_pos] = rest;
  }
  frags.coefficients = std::move(base);
  return outcome;
}

}  // namespace

IcsResult ics_optimize(const Hamiltonian& h, const FragmentSet& frags,
                       const GroupCovariances& cov,
                       std::span<const double> initial,
                       const IcsOptions& opts) {
  const auto start = Clock::now();
  IcsResult result;
  result.fragments = frags;
  std::vector<double> m =
      initial.empty() ? optimal_allocation(group_variances(frags, cov)).m
                      : check_allocation(frags, initial);
  double v = splitting_variance(frags, cov, m);
  result.allocation.m = m;
  result.variance = v;
  result.trace.entries.push_back({v, 0.0, seconds_since(start), "initial", true});

  const auto membership = frags.membership();
  if (!frags.overlapping()) {
    result.gradient = splitting_gradient(frags, cov, m);
    return result;
  }

  FragmentSet current = frags;
  double best = std::numeric_limits<double>::infinity();
  double last_outer = v;
  for (std::size_t outer = 0; outer < opts.max_outer; ++outer) {
    FragmentSet trial = current;
    std::size_t n_free = 0;
    const auto outcome =
        coefficient_step(h, trial, cov, m, membership, opts, n_free);
    if (outcome.regularized) result.trace.regularized = true;
    double v1 = outcome.ok ? splitting_variance(trial, cov, m)
                           : std::numeric_limits<double>::infinity();
    double step = 0.0;
    if (v1 <= v) {
      for (std::size_t a = 0; a < trial.size(); ++a) {
        step = std::max(step, max_abs_diff(trial.coefficients[a],
                                           current.coefficients[a]));
      }
      current = std::move(trial);
    } else {
      // The solve did not improve (rounding or numerical trouble): keep the
      // last solved state, whose coefficients are stationary for its own m.
      break;
    }
    result.trace.entries.push_back(
        {v1, step, seconds_since(start), "coefficients", true});
    v = v1;
    if (v1 <= best) {
      best = v1;
      result.fragments = current;
      result.allocation.m = m;
      result.variance = v1;
      result.free_variables = n_free;
    }
    if (last_outer - v1 <= opts.tol * last_outer) break;
    last_outer = v1;

    auto next = optimal_allocation(group_variances(current, cov)).m;
    const double v_next = splitting_variance(current, cov, next);
    double mstep = 0.0;
    // Already optimal up to rounding: keep m rather than step uphill.
    if (v_next <= v) {
      mstep = max_abs_diff(next, m);
      m = std::move(next);
      v = v_next;
    }
    result.trace.entries.push_back(
        {v, mstep, seconds_since(start), "allocation", true});
  }
  result.gradient = splitting_gradient(result.fragments, cov, result.allocation.m);
  return result;
}

}  // namespace pauligroup
