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

#include "pauligroup/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <numeric>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "pauligroup/clifford.hpp"
#include "pauligroup/errors.hpp"
#include "pauligroup/io.hpp"
#include "pauligroup/random.hpp"
#include "pauligroup/sampling.hpp"
#include "pauligroup/variance.hpp"

namespace pauligroup {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

std::vector<PauliProduct> members_of(const Hamiltonian& h,
                                     const std::vector<std::size_t>& group) {
  std::vector<PauliProduct> out;
  out.reserve(group.size());
  for (auto k : group) out.push_back(h.pauli(k));
  return out;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kLF: return "LF";
    case Method::kSI: return "SI";
    case Method::kIMA: return "IMA";
    case Method::kGMA: return "GMA";
    case Method::kICS: return "ICS";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  const auto t = lower(text);
  for (auto m : kAllMethods) {
    if (lower(to_string(m)) == t) return m;
  }
  throw ValidationError("unknown method '" + std::string(text) +
                        "' (expected lf, si, ima, gma or ics)");
}

std::string_view to_string(Sampler s) {
  return s == Sampler::kCollapse ? "collapse" : "rotation";
}

Sampler parse_sampler(std::string_view text) {
  const auto t = lower(text);
  if (t == "collapse") return Sampler::kCollapse;
  if (t == "rotation") return Sampler::kRotation;
  throw ValidationError("unknown sampler '" + std::string(text) +
                        "' (expected collapse or rotation)");
}

// ---------------------------------------------------------------------------
// Planning

Planner::Planner(const Hamiltonian& h, Relation relation,
                 const CovarianceOracle& oracle)
    : h_(h), relation_(relation), oracle_(oracle) {
  if (oracle.n_qubits() != h.n_qubits()) {
    throw DimensionError("state has " + std::to_string(oracle.n_qubits()) +
                         " qubits, Hamiltonian has " +
                         std::to_string(h.n_qubits()));
  }
}

const FragmentSet& Planner::largest_first() {
  if (!lf_) {
    lf_ = group_lf(h_, relation_);
    lf_cov_.emplace(h_, *lf_, oracle_);
  }
  return *lf_;
}

const FragmentSet& Planner::sorted_insertion() {
  if (!si_) {
    si_ = group_si(h_, relation_);
    si_cov_.emplace(h_, *si_, oracle_);
    si_m_ = optimal_allocation(group_variances(*si_, *si_cov_)).m;
  }
  return *si_;
}

const std::vector<double>& Planner::si_allocation() {
  sorted_insertion();
  return si_m_;
}

const FragmentSet& Planner::overlapping() {
  if (!ext_) {
    ext_ = extend_overlap(h_, sorted_insertion());
    ext_cov_.emplace(h_, *ext_, oracle_);
  }
  return *ext_;
}

void Planner::prepare(std::span<const Method> methods) {
  for (auto m : methods) {
    if (m == Method::kLF) {
      largest_first();
    } else {
      sorted_insertion();
      if (m != Method::kSI) overlapping();
    }
  }
}

MethodPlan Planner::plan(Method method, const RunConfig& cfg) {
  MethodPlan p;
  p.method = method;
  switch (method) {
    case Method::kLF:
    case Method::kSI: {
      const bool lf = method == Method::kLF;
      p.fragments = lf ? largest_first() : sorted_insertion();
      const auto& cov = lf ? *lf_cov_ : *si_cov_;
      const auto vars = group_variances(p.fragments, cov);
      p.m = lf ? optimal_allocation(vars).m : si_m_;
      p.variance = optimal_total_variance(vars);
      break;
    }
    case Method::kIMA: {
      overlapping();
      auto r = ima_optimize(h_, *ext_, *ext_cov_, si_allocation(), cfg.ima);
      p.m = std::move(r.allocation.m);
      p.variance = r.variance;
      p.trace = std::move(r.trace);
      p.fragments = allocation_as_splitting(h_, *ext_, p.m);
      p.averaged = true;
      p.variables = ext_->size();
      break;
    }
    case Method::kGMA: {
      overlapping();
      auto r = gma_optimize(h_, *ext_, *ext_cov_, si_allocation(), cfg.gma);
      p.m = std::move(r.allocation.m);
      p.variance = r.variance;
      p.trace = std::move(r.trace);
      p.fragments = allocation_as_splitting(h_, *ext_, p.m);
      p.averaged = true;
      p.variables = ext_->size();
      break;
    }
    case Method::kICS: {
      overlapping();
      const auto start = allocation_as_splitting(h_, *ext_, si_allocation());
      auto r = ics_optimize(h_, start, *ext_cov_, si_allocation(), cfg.ics);
      p.fragments = std::move(r.fragments);
      p.m = std::move(r.allocation.m);
      p.variance = r.variance;
      p.trace = std::move(r.trace);
      p.variables = ext_->split_variable_count();
      break;
    }
  }
  return p;
}

double evaluate_plan(const Hamiltonian& h, const MethodPlan& plan,
                     const CovarianceOracle& oracle) {
  const GroupCovariances cov(h, plan.fragments, oracle);
  return plan.averaged ? overlapping_variance(h, plan.fragments, plan.m, cov)
                       : splitting_variance(plan.fragments, cov, plan.m);
}

double energy(const Hamiltonian& h, const CovarianceOracle& oracle) {
  double e = h.constant();
  for (auto k : h.measurable_terms()) e += h.coefficient(k) * oracle.expectation(h.pauli(k));
  return e;
}

// ---------------------------------------------------------------------------
// Sampling

std::vector<std::size_t> distribute_shots(std::span<const double> m,
                                          const std::vector<bool>& required,
                                          std::size_t budget) {
  if (m.size() != required.size()) {
    throw DimensionError("allocation and requirement masks differ in length");
  }
  const std::size_t n = m.size();
  const auto n_required =
      static_cast<std::size_t>(std::count(required.begin(), required.end(), true));
  if (budget < n_required) {
    throw InfeasibleError("budget of " + std::to_string(budget) +
                              " shots cannot cover " +
                              std::to_string(n_required) + " groups",
                          0);
  }
  double sum = 0.0;
  for (const double v : m) sum += v;
  std::vector<std::size_t> shots(n, 0);
  if (n == 0 || budget == 0) return shots;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return m[a] > m[b]; });

  std::size_t used = 0;
  if (sum > 0.0) {
    for (std::size_t a = 0; a < n; ++a) {
      shots[a] = static_cast<std::size_t>(
          std::floor(static_cast<double>(budget) * m[a] / sum));
      used += shots[a];
    }
  }
  // Floating-point floor can overshoot by a shot in pathological inputs.
  for (std::size_t i = 0; used > budget; i = (i + 1) % n) {
    if (shots[order[n - 1 - i]] > 0) {
      --shots[order[n - 1 - i]];
      --used;
    }
  }
  for (std::size_t i = 0; used < budget; i = (i + 1) % n) {
    ++shots[order[i]];
    ++used;
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (!required[a] || shots[a] > 0) continue;
    const auto donor = std::max_element(shots.begin(), shots.end()) - shots.begin();
    --shots[donor];
    ++shots[a];
  }
  return shots;
}

SampleSummary sample_plan(const Hamiltonian& h, const MethodPlan& plan,
                          const StateVector& state, std::size_t budget,
                          std::size_t repetitions, std::uint64_t seed,
                          Sampler sampler) {
  const auto& frags = plan.fragments;
  const std::size_t ng = frags.size();
  std::vector<bool> required(ng, false);
  for (std::size_t a = 0; a < ng; ++a) {
    if (plan.averaged) {
      required[a] = plan.m[a] > 0.0;
    } else {
      for (const double c : frags.coefficients[a]) required[a] = required[a] || c != 0.0;
    }
  }
  const auto shots = distribute_shots(plan.m, required, budget);

  if (plan.averaged) {
    std::vector<std::size_t> covered(frags.n_terms, 0);
    for (std::size_t a = 0; a < ng; ++a) {
      for (auto k : frags.groups[a]) covered[k] += shots[a];
    }
    for (const auto& g : frags.groups) {
      for (auto k : g) {
        if (covered[k] == 0) {
          throw InfeasibleError("term " + std::to_string(k) + " receives no shots", k);
        }
      }
    }
  }

  std::vector<std::vector<PauliProduct>> members(ng);
  std::vector<DiagonalizedGroup> circuits;
  for (std::size_t a = 0; a < ng; ++a) members[a] = members_of(h, frags.groups[a]);
  if (sampler == Sampler::kRotation) {
    circuits.reserve(ng);
    for (std::size_t a = 0; a < ng; ++a) circuits.push_back(synthesize(members[a]));
  }

  const CovarianceOracle oracle(state);
  SampleSummary out;
  out.budget = budget;
  out.repetitions = repetitions;
  out.sampler = std::string(to_string(sampler));
  out.shots_per_group = shots;
  out.reference_energy = energy(h, oracle);
  {
    std::vector<double> actual(ng);
    for (std::size_t a = 0; a < ng; ++a) {
      actual[a] = static_cast<double>(shots[a]) / static_cast<double>(budget);
    }
    const GroupCovariances cov(h, frags, oracle);
    const double unit = plan.averaged ? overlapping_variance(h, frags, actual, cov)
                                      : splitting_variance(frags, cov, actual);
    out.analytic_variance = unit / static_cast<double>(budget);
  }

  double mean = 0.0, m2 = 0.0;
  std::vector<double> sums(frags.n_terms), counts(frags.n_terms);
  for (std::size_t r = 0; r < repetitions; ++r) {
    const auto rep_seed = derive_seed(seed, "repetition", r);
    double e = h.constant();
    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0.0);
    for (std::size_t a = 0; a < ng; ++a) {
      if (shots[a] == 0) continue;
      const auto group_seed = derive_seed(rep_seed, "group", a);
      const auto table =
          sampler == Sampler::kRotation
              ? rotate_and_sample(circuits[a], state, shots[a], group_seed)
              : sample_group(members[a], state, shots[a], group_seed);
      const auto& g = frags.groups[a];
      for (std::size_t i = 0; i < g.size(); ++i) {
        double total = 0.0;
        for (std::size_t s = 0; s < table.shots; ++s) total += table.at(s, i);
        if (plan.averaged) {
          sums[g[i]] += total;
          counts[g[i]] += static_cast<double>(table.shots);
        } else {
          e += frags.coefficients[a][i] * total / static_cast<double>(table.shots);
        }
      }
    }
    if (plan.averaged) {
      for (std::size_t k = 0; k < frags.n_terms; ++k) {
        if (counts[k] > 0.0) e += h.coefficient(k) * sums[k] / counts[k];
      }
    }
    const double delta = e - mean;
    mean += delta / static_cast<double>(r + 1);
    m2 += delta * (e - mean);
  }
  out.empirical_mean = mean;
  out.empirical_variance =
      repetitions > 1 ? m2 / static_cast<double>(repetitions - 1) : 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// Runs

Report run_methods(const Hamiltonian& h, const StateVector& state,
                   const RunConfig& cfg, const StateVector* proxy) {
  if (cfg.methods.empty()) throw ValidationError("no methods requested");
  const CovarianceOracle exact(state);
  std::optional<CovarianceOracle> approx;
  if (proxy) approx.emplace(*proxy);
  const CovarianceOracle& planning = approx ? *approx : exact;

  Planner planner(h, cfg.relation, planning);
  planner.prepare(cfg.methods);

  Report report;
  report.relation = std::string(to_string(cfg.relation));
  report.n_qubits = h.n_qubits();
  report.n_terms = h.size();
  report.energy = energy(h, exact);
  report.timing = cfg.timing;

  auto run_one = [&](Method method) {
    MethodResult res;
    const auto start = std::chrono::steady_clock::now();
    try {
      MethodPlan plan = planner.plan(method, cfg);
      res.variance = approx ? evaluate_plan(h, plan, exact) : plan.variance;
      res.groups = plan.fragments.size();
      res.variables = plan.variables;
      res.allocation = plan.m;
      res.trace = plan.trace.entries;
      res.regularized = plan.trace.regularized;
      if (cfg.budget > 0) {
        res.sample = sample_plan(h, plan, state, cfg.budget, cfg.repetitions,
                                 derive_seed(cfg.seed, to_string(method)),
                                 cfg.sampler);
      }
    } catch (const Error& e) {
      res.variance.reset();
      res.error = e.what();
    }
    res.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    return res;
  };

  std::size_t threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  std::vector<MethodResult> results(cfg.methods.size());
  if (threads <= 1 || cfg.methods.size() == 1) {
    for (std::size_t i = 0; i < cfg.methods.size(); ++i) results[i] = run_one(cfg.methods[i]);
  } else {
    std::vector<std::future<MethodResult>> pending;
    for (auto m : cfg.methods) pending.push_back(std::async(std::launch::async, run_one, m));
    for (std::size_t i = 0; i < pending.size(); ++i) results[i] = pending[i].get();
  }
  for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
    report.methods[std::string(to_string(cfg.methods[i]))] = std::move(results[i]);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

struct Loaded {
  Hamiltonian h;
  StateVector state;
  std::optional<StateVector> proxy;
  std::vector<std::string> warnings;
};

Loaded load_inputs(const RunConfig& cfg, bool need_state) {
  Loaded in;
  in.h = load_hamiltonian(cfg.hamiltonian);
  if (!need_state) return in;
  if (cfg.wavefunction) {
    in.state = load_wavefunction(*cfg.wavefunction, in.h.n_qubits(), &in.warnings);
  } else {
    in.state = ground_state(in.h, cfg.lanczos).state;
  }
  if (cfg.proxy_wavefunction) {
    in.proxy = load_wavefunction(*cfg.proxy_wavefunction, in.h.n_qubits(), &in.warnings);
  }
  return in;
}

std::string fixed(double v, int precision = 6) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

std::string method_table(const Report& r, bool with_sample) {
  std::ostringstream out;
  out << std::left << std::setw(8) << "method" << std::setw(16) << "variance"
      << std::setw(8) << "groups" << std::setw(10) << "variables";
  if (with_sample) out << std::setw(16) << "empirical*M" << std::setw(16) << "analytic*M";
  out << '\n';
  for (auto m : kAllMethods) {
    const auto it = r.methods.find(std::string(to_string(m)));
    if (it == r.methods.end()) continue;
    const auto& res = it->second;
    out << std::setw(8) << it->first;
    if (!res.variance) {
      out << "error: " << res.error << '\n';
      continue;
    }
    out << std::setw(16) << fixed(*res.variance) << std::setw(8) << res.groups
        << std::setw(10) << res.variables;
    if (with_sample && res.sample) {
      const double budget = static_cast<double>(res.sample->budget);
      out << std::setw(16) << fixed(res.sample->empirical_variance * budget)
          << std::setw(16) << fixed(res.sample->analytic_variance * budget);
    }
    out << '\n';
  }
  return out.str();
}

int report_exit_code(const Report& r) {
  bool any_ok = false;
  for (const auto& [name, res] : r.methods) any_ok = any_ok || res.variance.has_value();
  return any_ok ? kExitOk : kExitInfeasible;
}

}  // namespace

CommandResult cmd_group(const RunConfig& cfg, bool largest_first, bool members) {
  const auto h = load_hamiltonian(cfg.hamiltonian);
  const auto base = largest_first ? group_lf(h, cfg.relation) : group_si(h, cfg.relation);
  const auto ext = extend_overlap(h, base);
  nlohmann::json j;
  j["relation"] = std::string(to_string(cfg.relation));
  j["grouping"] = largest_first ? "LF" : "SI";
  j["qubits"] = h.n_qubits();
  j["terms"] = h.size();
  j["groups"] = base.size();
  j["ma_variables"] = base.size();
  j["cs_variables"] = ext.split_variable_count();
  if (members) {
    auto list = nlohmann::json::array();
    for (const auto& g : base.groups) {
      auto names = nlohmann::json::array();
      for (auto k : g) names.push_back(h.pauli(k).to_string());
      list.push_back(std::move(names));
    }
    j["members"] = std::move(list);
  }
  CommandResult out;
  out.json = j.dump(2);
  std::ostringstream t;
  t << "terms " << h.size() << ", qubits " << h.n_qubits() << ", relation "
    << to_string(cfg.relation) << ", grouping " << (largest_first ? "LF" : "SI") << '\n'
    << "groups (MA variables) " << base.size() << '\n'
    << "split variables (CS)  " << ext.split_variable_count() << '\n';
  out.table = t.str();
  return out;
}

CommandResult cmd_variance(const RunConfig& cfg) {
  auto in = load_inputs(cfg, true);
  RunConfig analytic = cfg;
  analytic.budget = 0;
  auto report = run_methods(in.h, in.state, analytic, in.proxy ? &*in.proxy : nullptr);
  report.hamiltonian = cfg.hamiltonian.string();
  CommandResult out;
  out.json = write_report(report, 2);
  out.table = method_table(report, false);
  out.warnings = std::move(in.warnings);
  out.exit_code = report_exit_code(report);
  return out;
}

CommandResult cmd_sample(const RunConfig& cfg) {
  if (cfg.budget == 0) throw ValidationError("sampling needs a shot budget > 0");
  if (cfg.repetitions == 0) throw ValidationError("sampling needs repetitions > 0");
  auto in = load_inputs(cfg, true);
  auto report = run_methods(in.h, in.state, cfg, in.proxy ? &*in.proxy : nullptr);
  report.hamiltonian = cfg.hamiltonian.string();
  CommandResult out;
  out.json = write_report(report, 2);
  out.table = method_table(report, true);
  out.warnings = std::move(in.warnings);
  out.exit_code = report_exit_code(report);
  return out;
}

CommandResult cmd_synth(const RunConfig& cfg, bool largest_first) {
  const auto h = load_hamiltonian(cfg.hamiltonian);
  const auto base = largest_first ? group_lf(h, cfg.relation) : group_si(h, cfg.relation);
  nlohmann::json groups = nlohmann::json::array();
  std::ostringstream t;
  for (std::size_t a = 0; a < base.size(); ++a) {
    const auto members = members_of(h, base.groups[a]);
    const auto dg = synthesize(members, base.coefficients[a]);
    nlohmann::json g;
    auto names = nlohmann::json::array();
    auto images = nlohmann::json::array();
    auto gates = nlohmann::json::array();
    for (const auto& p : members) names.push_back(p.to_string());
    for (const auto& z : dg.z_images) images.push_back(z.to_string());
    std::istringstream lines(gates_to_text(dg.tableau.gates()));
    for (std::string line; std::getline(lines, line);) gates.push_back(line);
    g["members"] = std::move(names);
    g["z_images"] = std::move(images);
    g["gates"] = std::move(gates);
    groups.push_back(std::move(g));

    t << "group " << a << " (" << members.size() << " terms, "
      << dg.tableau.gates().size() << " gates)\n"
      << gates_to_text(dg.tableau.gates());
  }
  nlohmann::json j;
  j["relation"] = std::string(to_string(cfg.relation));
  j["groups"] = std::move(groups);
  CommandResult out;
  out.json = j.dump(2);
  out.table = t.str();
  return out;
}

CommandResult cmd_ground(const RunConfig& cfg,
                         const std::optional<std::filesystem::path>& state_out) {
  const auto h = load_hamiltonian(cfg.hamiltonian);
  const auto gs = ground_state(h, cfg.lanczos);
  if (state_out) {
    std::ofstream f(*state_out, std::ios::binary);
    if (!f) throw Error("cannot write " + state_out->string());
    f << serialize_wavefunction(gs.state);
  }
  nlohmann::json j;
  j["qubits"] = h.n_qubits();
  j["terms"] = h.size();
  j["energy"] = gs.energy;
  j["residual"] = gs.residual;
  j["matvecs"] = gs.matvecs;
  CommandResult out;
  out.json = j.dump(2);
  out.table = "energy " + fixed(gs.energy, 12) + "\nresidual " + fixed(gs.residual, 3) +
              "\nmatvecs " + std::to_string(gs.matvecs) + "\n";
  return out;
}

}  // namespace pauligroup
