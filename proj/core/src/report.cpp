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

#include "pauligroup/report.hpp"

#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>

#include "pauligroup/errors.hpp"

namespace pauligroup {
namespace {

using nlohmann::json;

// Non-finite values have no JSON spelling; they travel as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double read_number(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

json trace_json(const std::vector<TraceEntry>& trace, bool timing) {
  json out = json::array();
  for (const auto& e : trace) {
    json j = {{"variance", number(e.variance)},
              {"step", number(e.step)},
              {"kind", e.kind},
              {"feasible", e.feasible}};
    if (timing) j["seconds"] = e.seconds;
    out.push_back(std::move(j));
  }
  return out;
}

json sample_json(const SampleSummary& s) {
  return {{"budget", s.budget},
          {"repetitions", s.repetitions},
          {"sampler", s.sampler},
          {"shots_per_group", s.shots_per_group},
          {"empirical_mean", number(s.empirical_mean)},
          {"empirical_variance", number(s.empirical_variance)},
          {"analytic_variance", number(s.analytic_variance)},
          {"reference_energy", number(s.reference_energy)}};
}

json method_json(const MethodResult& m, bool timing) {
  json j = json::object();
  j["variance"] = m.variance ? number(*m.variance) : json(nullptr);
  if (!m.error.empty()) j["error"] = m.error;
  j["groups"] = m.groups;
  j["variables"] = m.variables;
  if (!m.allocation.empty()) j["allocation"] = m.allocation;
  if (!m.trace.empty()) j["trace"] = trace_json(m.trace, timing);
  if (m.regularized) j["regularized"] = true;
  if (timing && m.seconds) j["seconds"] = *m.seconds;
  if (m.sample) j["sample"] = sample_json(*m.sample);
  return j;
}

}  // namespace

std::string write_report(const Report& r, int indent) {
  json j = json::object();
  if (r.hamiltonian) j["hamiltonian"] = *r.hamiltonian;
  if (r.relation) j["relation"] = *r.relation;
  if (r.n_qubits) j["qubits"] = *r.n_qubits;
  if (r.n_terms) j["terms"] = *r.n_terms;
  if (r.energy) j["energy"] = number(*r.energy);
  json methods = json::object();
  for (const auto& [name, m] : r.methods) methods[name] = method_json(m, r.timing);
  j["methods"] = std::move(methods);
  if (r.timing) j["timing"] = true;
  return j.dump(indent);
}

Report parse_report(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("report: ") + e.what());
  }
  try {
    Report r;
    if (j.contains("hamiltonian")) r.hamiltonian = j["hamiltonian"].get<std::string>();
    if (j.contains("relation")) r.relation = j["relation"].get<std::string>();
    if (j.contains("qubits")) r.n_qubits = j["qubits"].get<std::size_t>();
    if (j.contains("terms")) r.n_terms = j["terms"].get<std::size_t>();
    if (j.contains("energy")) r.energy = read_number(j["energy"]);
    r.timing = j.value("timing", false);
    for (const auto& [name, mj] : j.at("methods").items()) {
      MethodResult m;
      if (!mj.at("variance").is_null()) m.variance = mj["variance"].get<double>();
      m.error = mj.value("error", std::string());
      m.groups = mj.value("groups", std::size_t{0});
      m.variables = mj.value("variables", std::size_t{0});
      if (mj.contains("allocation")) {
        m.allocation = mj["allocation"].get<std::vector<double>>();
      }
      if (mj.contains("trace")) {
        for (const auto& tj : mj["trace"]) {
          TraceEntry e;
          e.variance = read_number(tj.at("variance"));
          e.step = read_number(tj.at("step"));
          e.kind = tj.at("kind").get<std::string>();
          e.feasible = tj.at("feasible").get<bool>();
          e.seconds = tj.value("seconds", 0.0);
          m.trace.push_back(std::move(e));
        }
      }
      m.regularized = mj.value("regularized", false);
      if (mj.contains("seconds")) m.seconds = mj["seconds"].get<double>();
      if (mj.contains("sample")) {
        const auto& sj = mj["sample"];
        SampleSummary s;
        s.budget = sj.at("budget").get<std::size_t>();
        s.repetitions = sj.at("repetitions").get<std::size_t>();
        s.sampler = sj.at("sampler").get<std::string>();
        s.shots_per_group = sj.at("shots_per_group").get<std::vector<std::size_t>>();
        s.empirical_mean = read_number(sj.at("empirical_mean"));
        s.empirical_variance = read_number(sj.at("empirical_variance"));
        s.analytic_variance = read_number(sj.at("analytic_variance"));
        s.reference_energy = read_number(sj.at("reference_energy"));
        m.sample = std::move(s);
      }
      r.methods.emplace(name, std::move(m));
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("report: ") + e.what());
  }
}

}  // namespace pauligroup
