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

// Acceptance run: one PASS/FAIL line per criterion, with supporting detail
// lines indented underneath. Exit status is nonzero if any criterion fails.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "pauligroup/clifford.hpp"
#include "pauligroup/covariance.hpp"
#include "pauligroup/errors.hpp"
#include "pauligroup/ground_state.hpp"
#include "pauligroup/grouping.hpp"
#include "pauligroup/io.hpp"
#include "pauligroup/optimizers.hpp"
#include "pauligroup/pipeline.hpp"
#include "pauligroup/report.hpp"
#include "pauligroup/sampling.hpp"
#include "pauligroup/variance.hpp"
#include "test_support.hpp"

namespace pg = pauligroup;
using pg::Method;
using pg::PauliProduct;
using pg::Relation;
using testsupport::Gen;

namespace {

const std::filesystem::path kData = PAULIGROUP_DATA_DIR;

class Criterion {
 public:
  Criterion(int id, std::string title, double budget_seconds)
      : id_(id), title_(std::move(title)), budget_(budget_seconds),
        start_(std::chrono::steady_clock::now()) {
    std::printf("-- criterion %d: %s\n", id_, title_.c_str());
    std::fflush(stdout);
  }

  void check(bool ok, const std::string& what) {
    std::printf("   %s %s\n", ok ? "ok  " : "FAIL", what.c_str());
    std::fflush(stdout);
    pass_ = pass_ && ok;
  }
  void note(const std::string& what) {
    std::printf("   %s\n", what.c_str());
    std::fflush(stdout);
  }

  bool finish() {
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    const bool in_time = s < budget_;
    if (!in_time) note("runtime over budget");
    const bool ok = pass_ && in_time;
    std::printf("%s criterion %d: %s (%.1f s, budget %.0f s)\n", ok ? "PASS" : "FAIL", id_,
                title_.c_str(), s, budget_);
    std::fflush(stdout);
    return ok;
  }

 private:
  int id_;
  std::string title_;
  double budget_;
  std::chrono::steady_clock::time_point start_;
  bool pass_ = true;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

pg::RunConfig config(Relation r) {
  pg::RunConfig cfg;
  cfg.relation = r;
  return cfg;
}

const char* name(Relation r) { return r == Relation::kFull ? "FC" : "QWC"; }

// ---------------------------------------------------------------------------

bool criterion_h2_reproduction() {
  Criterion c(1, "H2 variances for all methods, both relations", 5.0);
  const auto h = pg::load_hamiltonian(kData / "h2.ham");
  const auto gs = pg::ground_state(h);
  for (auto r : {Relation::kQubitWise, Relation::kFull}) {
    const auto report = pg::run_methods(h, gs.state, config(r));
    for (auto m : pg::kAllMethods) {
      const auto& res = report.methods.at(std::string(pg::to_string(m)));
      const double v = res.variance.value_or(NAN);
      c.check(std::abs(v - 0.136) <= 5e-3,
              std::string(name(r)) + " " + std::string(pg::to_string(m)) +
                  fmt(" variance %.6f (target 0.136 +- 0.005)", v));
    }
  }
  return c.finish();
}

bool criterion_structure_counts() {
  Criterion c(2, "H2 term and variable counts", 5.0);
  const auto h = pg::load_hamiltonian(kData / "h2.ham");
  c.check(h.size() == 15, "terms " + std::to_string(h.size()) + " (target 15)");
  const std::map<Relation, std::pair<std::size_t, std::size_t>> want = {
      {Relation::kQubitWise, {3, 4}}, {Relation::kFull, {2, 6}}};
  for (const auto& [r, counts] : want) {
    const auto si = pg::group_si(h, r);
    const auto cs = pg::extend_overlap(h, si).split_variable_count();
    c.check(si.size() == counts.first && cs == counts.second,
            std::string(name(r)) + " MA/CS " + std::to_string(si.size()) + "/" +
                std::to_string(cs) + " (target " + std::to_string(counts.first) + "/" +
                std::to_string(counts.second) + ")");
  }
  return c.finish();
}

bool criterion_lih_table() {
  Criterion c(3, "LiH FC variances LF/SI/IMA/ICS within 2%", 600.0);
  const auto h = pg::load_hamiltonian(kData / "lih.ham");
  const auto gs = pg::ground_state(h);
  auto cfg = config(Relation::kFull);
  cfg.methods = {Method::kLF, Method::kSI, Method::kIMA, Method::kICS};
  const auto report = pg::run_methods(h, gs.state, cfg);
  const std::map<std::string, double> want = {
      {"LF", 1.43}, {"SI", 0.882}, {"IMA", 0.647}, {"ICS", 0.232}};
  for (const auto& [m, target] : want) {
    const double v = report.methods.at(m).variance.value_or(NAN);
    c.check(std::abs(v - target) <= 0.02 * target,
            m + fmt(" variance %.4f (target %.3f)", v, target));
  }
  return c.finish();
}

bool criterion_estimator_identities() {
  Criterion c(4, "estimator identities on random instances", 60.0);
  Gen gen(2024);

  // (a) averaging estimator vs its splitting image.
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + gen.index(5);
    const auto h = gen.hamiltonian(n, 4 + gen.index(30));
    const pg::CovarianceOracle oracle(gen.state(n));
    const auto r = gen.coin() ? Relation::kFull : Relation::kQubitWise;
    const auto ext = pg::extend_overlap(h, pg::group_si(h, r));
    std::vector<double> m(ext.size());
    for (auto& x : m) x = gen.uniform(0.05, 1.0);
    const pg::GroupCovariances cov(h, ext, oracle);
    const double a = pg::overlapping_variance(h, ext, m, cov);
    const auto split = pg::allocation_as_splitting(h, ext, m);
    const double b =
        pg::nonoverlapping_variance(pg::group_variances(split, cov), m).total_variance;
    worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 1e-300));
  }
  c.check(worst <= 1e-10, fmt("(a) overlapping = splitting image, worst rel diff %.2e", worst));

  // (b) optimal allocation vs a 1e-3 simplex grid.
  int beaten = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t ng = 2 + gen.index(2);
    std::vector<double> v(ng);
    for (auto& x : v) x = gen.uniform(0.0, 2.0);
    const auto opt = pg::optimal_allocation(v);
    const double best = pg::nonoverlapping_variance(v, opt.m).total_variance;
    double grid = INFINITY;
    if (ng == 2) {
      for (int i = 1; i < 1000; ++i) {
        const std::vector<double> m = {i * 1e-3, 1 - i * 1e-3};
        grid = std::min(grid, pg::nonoverlapping_variance(v, m).total_variance);
      }
    } else {
      for (int i = 1; i < 1000; ++i) {
        for (int j = 1; i + j < 1000; ++j) {
          const std::vector<double> m = {i * 1e-3, j * 1e-3, 1 - (i + j) * 1e-3};
          grid = std::min(grid, pg::nonoverlapping_variance(v, m).total_variance);
        }
      }
    }
    beaten += best <= grid * (1 + 1e-12);
  }
  c.check(beaten == 100, "(b) optimal allocation <= grid minimum in " +
                             std::to_string(beaten) + "/100 cases");

  // (c) symplectic vs dense commutation, exact.
  int agree = 0, total = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen.index(4);
    const auto p = gen.pauli(n), q = gen.pauli(n);
    const auto dp = testsupport::dense(p), dq = testsupport::dense(q);
    const bool dense_fc = (dp * dq - dq * dp).cwiseAbs().maxCoeff() == 0.0;
    bool dense_qwc = true;
    for (std::size_t k = 0; k < n; ++k) {
      const auto a = testsupport::single_qubit(p.at(k)), b = testsupport::single_qubit(q.at(k));
      dense_qwc = dense_qwc && (a * b - b * a).cwiseAbs().maxCoeff() == 0.0;
    }
    agree += (pg::fully_commutes(p, q) == dense_fc) + (pg::qubitwise_commutes(p, q) == dense_qwc);
    total += 2;
  }
  c.check(agree == total, "(c) commutation tests agree in " + std::to_string(agree) + "/" +
                              std::to_string(total) + " comparisons");
  return c.finish();
}

bool criterion_optimizers() {
  Criterion c(5, "optimizer properties and fixture ordering", 600.0);
  Gen gen(77);

  // Random overlapping instances.
  bool ics_monotone = true, ima_ok = true;
  double ics_grad = 0.0, fd_worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto in = testsupport::random_overlapping(gen, 3 + gen.index(3));
    const pg::GroupCovariances cov(in.h, in.frags, in.oracle);
    std::vector<double> m(in.frags.size());
    for (auto& x : m) x = gen.uniform(0.1, 1.0);
    const double sum = std::accumulate(m.begin(), m.end(), 0.0);
    for (auto& x : m) x /= sum;

    const auto g = pg::allocation_gradient(in.h, in.frags, cov, m);
    for (std::size_t b = 0; b < m.size(); ++b) {
      const double step = 1e-6;
      auto up = m, down = m;
      up[b] += step;
      down[b] -= step;
      const double fd =
          (testsupport::raw_variance(in, up) - testsupport::raw_variance(in, down)) / (2 * step);
      fd_worst = std::max(fd_worst, std::abs(g.d_m[b] - fd) / std::max(std::abs(fd), 1e-3));
    }

    const auto ima = pg::ima_optimize(in.h, in.frags, cov, m);
    ima_ok = ima_ok && ima.variance <= pg::overlapping_variance(in.h, in.frags, m, cov);

    pg::IcsOptions opts;
    opts.max_outer = 200;
    opts.tol = 1e-14;
    const auto ics = pg::ics_optimize(in.h, in.frags, cov, {}, opts);
    const auto& e = ics.trace.entries;
    for (std::size_t i = 1; i < e.size(); ++i) {
      ics_monotone = ics_monotone && e[i].variance <= e[i - 1].variance;
    }
    for (double x : ics.gradient) ics_grad = std::max(ics_grad, std::abs(x));
  }
  c.check(fd_worst <= 1e-5, fmt("GMA gradient vs central differences, worst rel err %.2e", fd_worst));
  c.check(ima_ok, "IMA never above its starting variance (100 random cases)");
  c.check(ics_monotone, "ICS trace non-increasing per half-step (100 random cases)");
  c.check(ics_grad <= 1e-8, fmt("ICS final gradient inf-norm %.2e (random cases)", ics_grad));

  // Fixture sweep.
  for (const char* fixture : {"h2", "lih", "beh2", "h2o", "nh3"}) {
    const auto h = pg::load_hamiltonian(kData / (std::string(fixture) + ".ham"));
    const auto t0 = std::chrono::steady_clock::now();
    const auto gs = pg::ground_state(h);
    c.note(std::string(fixture) + ": " + std::to_string(h.size()) + " terms" +
           fmt(", E0 = %.8f (%.1f s)", gs.energy,
               std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()));
    const pg::CovarianceOracle oracle(gs.state);
    for (auto r : {Relation::kQubitWise, Relation::kFull}) {
      auto cfg = config(r);
      const auto report = pg::run_methods(h, gs.state, cfg);
      std::map<std::string, double> v;
      std::string line = std::string(fixture) + " " + name(r) + ":";
      for (const auto& [m, res] : report.methods) {
        v[m] = res.variance.value_or(NAN);
        line += " " + m + fmt("=%.5g", v[m]);
      }
      const double tol = 1e-6;
      const bool order = v["ICS"] <= v["GMA"] + tol && v["GMA"] <= v["IMA"] + tol &&
                         v["IMA"] <= v["SI"] + tol && v["SI"] <= v["LF"] + tol;
      c.check(order, line + "  (ICS <= GMA <= IMA <= SI <= LF)");

      const auto& ima_trace = report.methods.at("IMA").trace;
      c.check(!ima_trace.empty() && v["IMA"] <= ima_trace.front().variance,
              std::string(fixture) + " " + name(r) + " IMA <= its SI-allocation start");
      const auto& ics_trace = report.methods.at("ICS").trace;
      bool mono = true;
      for (std::size_t i = 1; i < ics_trace.size(); ++i) {
        mono = mono && ics_trace[i].variance <= ics_trace[i - 1].variance;
      }
      c.check(mono, std::string(fixture) + " " + name(r) + " ICS trace non-increasing (" +
                        std::to_string(ics_trace.size()) + " half-steps)");

      // Stationarity where every split coefficient is optimized.
      pg::Planner planner(h, r, oracle);
      const auto& ext = planner.overlapping();
      if (ext.split_variable_count() <= cfg.ics.max_free_variables) {
        const auto& m_si = planner.si_allocation();
        const auto start = pg::allocation_as_splitting(h, ext, m_si);
        const pg::GroupCovariances cov(h, start, oracle);
        const auto ics = pg::ics_optimize(h, start, cov, m_si, cfg.ics);
        double g = 0.0;
        for (double x : ics.gradient) g = std::max(g, std::abs(x));
        c.check(g <= 1e-8, std::string(fixture) + " " + name(r) +
                               fmt(" ICS final gradient inf-norm %.2e", g));
      } else {
        c.note(std::string(fixture) + " " + name(r) + ": " +
               std::to_string(ext.split_variable_count()) +
               " split coefficients exceed the solver cap; gradient not checked");
      }
    }
  }
  return c.finish();
}

bool criterion_statistics() {
  Criterion c(6, "sampled variance vs analytic; collapse vs rotation", 120.0);
  const auto dir = std::filesystem::temp_directory_path() / "pauligroup_acceptance";
  std::filesystem::create_directories(dir);
  const pg::Hamiltonian figure(2, {{1.0, PauliProduct::from_label("ZI")},
                                   {0.5, PauliProduct::from_label("ZZ")},
                                   {0.5, PauliProduct::from_label("XX")}});
  {
    std::ofstream out(dir / "figure.ham");
    out << pg::serialize_hamiltonian(figure);
  }
  const std::vector<std::pair<std::string, std::filesystem::path>> models = {
      {"figure model", dir / "figure.ham"}, {"h2", kData / "h2.ham"}};
  for (const auto& [label, path] : models) {
    for (auto r : {Relation::kQubitWise, Relation::kFull}) {
      auto cfg = config(r);
      cfg.hamiltonian = path;
      cfg.budget = 10000;
      cfg.repetitions = 200;
      const auto result = pg::cmd_sample(cfg);
      const auto report = pg::parse_report(result.json);
      for (const auto& [m, res] : report.methods) {
        if (!res.sample) {
          c.check(false, label + " " + name(r) + " " + m + ": " + res.error);
          continue;
        }
        const double ratio = res.sample->empirical_variance / res.sample->analytic_variance;
        c.check(std::abs(ratio - 1.0) <= 0.1,
                label + " " + name(r) + " " + m +
                    fmt(": empirical/analytic variance %.3f (analytic %.3e)", ratio,
                        res.sample->analytic_variance));
      }
    }
  }

  Gen gen(606);
  const std::size_t shots = 100000;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + gen.index(5);
    const auto group = gen.commuting_group(n, 2 + gen.index(5));
    const auto s = gen.state(n);
    const auto col = pg::sample_group(group, s, shots, 1 + trial);
    const auto rot = pg::rotate_and_sample(pg::synthesize(group), s, shots, 1001 + trial);
    for (std::size_t k = 0; k < group.size(); ++k) {
      const double e = pg::expectation(group[k], s);
      const double sigma = std::sqrt(std::max(2 * (1 - e * e), 1e-6) / shots);
      worst = std::max(worst, std::abs(col.mean(k) - rot.mean(k)) / sigma);
    }
  }
  c.check(worst <= 5.0, fmt("collapse vs rotation means, worst gap %.2f sigma at 1e5 shots", worst));
  std::filesystem::remove_all(dir);
  return c.finish();
}

bool criterion_clifford() {
  Criterion c(7, "Clifford synthesis on random commuting groups", 60.0);
  Gen gen(707);
  int replay_ok = 0, dense_ok = 0, dense_total = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + gen.index(6);
    const auto group = gen.commuting_group(n, 1 + gen.index(2 * n));
    const auto dg = pg::synthesize(group);
    const auto& gates = dg.tableau.gates();
    bool ok = true;
    for (std::size_t i = 0; i < group.size(); ++i) {
      auto img = group[i];
      for (const auto& g : gates) img = pg::conjugate(img, g);
      ok = ok && img == dg.z_images[i] && img.is_diagonal() && img.is_hermitian();
    }
    replay_ok += ok;
    if (n <= 4) {
      ++dense_total;
      const auto u = testsupport::circuit_matrix(gates, n);
      bool match = true;
      for (std::size_t i = 0; i < group.size(); ++i) {
        const Eigen::MatrixXcd want = u * testsupport::dense(group[i]) * u.adjoint();
        match = match && (testsupport::dense(dg.z_images[i]) - want).norm() < 1e-10;
      }
      dense_ok += match;
    }
  }
  c.check(replay_ok == 500, "gate-by-gate replay gives signed z images in " +
                                std::to_string(replay_ok) + "/500 groups");
  c.check(dense_ok == dense_total, "dense conjugation matches in " + std::to_string(dense_ok) +
                                       "/" + std::to_string(dense_total) + " groups (<= 4 qubits)");
  return c.finish();
}

}  // namespace

int main() {
  const std::vector<std::function<bool()>> criteria = {
      criterion_h2_reproduction, criterion_structure_counts, criterion_lih_table,
      criterion_estimator_identities, criterion_optimizers, criterion_statistics,
      criterion_clifford};
  int failed = 0;
  std::vector<bool> results;
  for (const auto& run : criteria) {
    bool ok = false;
    try {
      ok = run();
    } catch (const std::exception& e) {
      std::printf("FAIL (exception: %s)\n", e.what());
    }
    results.push_back(ok);
    failed += !ok;
  }
  std::printf("\nsummary:");
  for (std::size_t i = 0; i < results.size(); ++i) {
    std::printf(" %zu:%s", i + 1, results[i] ? "PASS" : "FAIL");
  }
  std::printf("\n%d of %zu criteria failed\n", failed, results.size());
  return failed == 0 ? 0 : 1;
}
