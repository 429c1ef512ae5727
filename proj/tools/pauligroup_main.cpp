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

// Command-line front end: group, variance, sample, synth, ground.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pauligroup/errors.hpp"
#include "pauligroup/pipeline.hpp"

namespace pg = pauligroup;

namespace {

struct Options {
  std::string hamiltonian;
  std::string relation = "fc";
  std::string format = "json";
  std::string output;
  std::string wavefunction;
  std::string proxy;
  std::vector<std::string> methods{"lf", "si", "ima", "gma", "ics"};
  std::string grouping = "si";
  std::string sampler = "collapse";
  std::string state_out;
  bool members = false;
  pg::RunConfig cfg;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("-H,--hamiltonian", o.hamiltonian, "Hamiltonian file")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("-r,--relation", o.relation, "Compatibility relation")
      ->check(CLI::IsMember({"qwc", "fc"}, CLI::ignore_case));
  sub->add_option("-f,--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "table"}));
  sub->add_option("-o,--output", o.output, "Write output here instead of stdout");
}

void add_state(CLI::App* sub, Options& o) {
  sub->add_option("-w,--wavefunction", o.wavefunction,
                  "Amplitude file; the ground state is computed when omitted")
      ->check(CLI::ExistingFile);
  sub->add_option("--proxy-wavefunction", o.proxy,
                  "Approximate state used only for optimization")
      ->check(CLI::ExistingFile);
  sub->add_option("--lanczos-tol", o.cfg.lanczos.tol, "Ground-state residual tolerance");
  sub->add_option("--lanczos-max-iter", o.cfg.lanczos.max_iter, "Ground-state matvec budget");
}

void add_methods(CLI::App* sub, Options& o) {
  sub->add_option("-m,--methods", o.methods, "Methods: lf si ima gma ics")
      ->delimiter(',');
  sub->add_option("--ima-cycles", o.cfg.ima.n_cycles, "IMA cycles");
  sub->add_option("--gma-steps", o.cfg.gma.steps, "GMA gradient steps");
  sub->add_option("--gma-learning-rate", o.cfg.gma.learning_rate,
                  "GMA initial step, in units of the starting variance");
  sub->add_option("--ics-max-outer", o.cfg.ics.max_outer, "ICS outer iterations");
  sub->add_option("--ics-tol", o.cfg.ics.tol, "ICS relative stopping tolerance");
  sub->add_option("--ics-ridge", o.cfg.ics.ridge, "ICS ridge for singular solves");
  sub->add_option("--ics-max-vars", o.cfg.ics.max_free_variables,
                  "ICS cap on free split coefficients");
  sub->add_option("-j,--threads", o.cfg.threads, "Worker threads (0 = all cores)");
  sub->add_flag("--timing", o.cfg.timing, "Include wall-clock times in the report");
}

void emit(const Options& o, const pg::CommandResult& r) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  const std::string& text = o.format == "table" ? r.table : r.json;
  if (o.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw pg::Error("cannot write " + o.output);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

void finish_config(Options& o) {
  o.cfg.hamiltonian = o.hamiltonian;
  o.cfg.relation = pg::parse_relation(o.relation);
  if (!o.wavefunction.empty()) o.cfg.wavefunction = o.wavefunction;
  if (!o.proxy.empty()) o.cfg.proxy_wavefunction = o.proxy;
  o.cfg.methods.clear();
  for (const auto& m : o.methods) o.cfg.methods.push_back(pg::parse_method(m));
  o.cfg.sampler = pg::parse_sampler(o.sampler);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement grouping and shot allocation for Pauli Hamiltonians"};
  app.require_subcommand(1);
  Options o;

  auto* group = app.add_subcommand("group", "Group terms and count optimization variables");
  add_common(group, o);
  group->add_option("--grouping", o.grouping, "Base grouping")
      ->check(CLI::IsMember({"si", "lf"}));
  group->add_flag("--members", o.members, "List the members of every group");

  auto* variance = app.add_subcommand("variance", "Estimator variance per method");
  add_common(variance, o);
  add_state(variance, o);
  add_methods(variance, o);

  auto* sample = app.add_subcommand("sample", "Simulate measurements and compare with theory");
  add_common(sample, o);
  add_state(sample, o);
  add_methods(sample, o);
  sample->add_option("-M,--budget", o.cfg.budget, "Total shots per estimate")->required();
  sample->add_option("-R,--repetitions", o.cfg.repetitions, "Independent estimates");
  sample->add_option("-s,--seed", o.cfg.seed, "Random seed");
  sample->add_option("--sampler", o.sampler, "collapse or rotation")
      ->check(CLI::IsMember({"collapse", "rotation"}));

  auto* synth = app.add_subcommand("synth", "Diagonalizing Clifford circuits per group");
  add_common(synth, o);
  synth->add_option("--grouping", o.grouping, "Base grouping")
      ->check(CLI::IsMember({"si", "lf"}));

  auto* ground = app.add_subcommand("ground", "Ground state by Lanczos");
  add_common(ground, o);
  ground->add_option("--lanczos-tol", o.cfg.lanczos.tol, "Residual tolerance");
  ground->add_option("--lanczos-max-iter", o.cfg.lanczos.max_iter, "Matvec budget");
  ground->add_option("--state-out", o.state_out, "Write the amplitudes here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return pg::kExitConfig;
  }

  try {
    finish_config(o);
    pg::CommandResult result;
    if (*group) {
      result = pg::cmd_group(o.cfg, o.grouping == "lf", o.members);
    } else if (*variance) {
      result = pg::cmd_variance(o.cfg);
    } else if (*sample) {
      result = pg::cmd_sample(o.cfg);
    } else if (*synth) {
      result = pg::cmd_synth(o.cfg, o.grouping == "lf");
    } else {
      std::optional<std::filesystem::path> out;
      if (!o.state_out.empty()) out = o.state_out;
      result = pg::cmd_ground(o.cfg, out);
    }
    emit(o, result);
    return result.exit_code;
  } catch (const pg::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return pg::kExitInfeasible;
  } catch (const pg::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (best residual " << e.best_residual() << ")\n";
    return pg::kExitConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return pg::kExitConfig;
  }
}
