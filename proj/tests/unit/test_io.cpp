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
#include <filesystem>
#include <fstream>

#include "pauligroup/errors.hpp"
#include "pauligroup/io.hpp"
#include "pauligroup/report.hpp"
#include "test_support.hpp"

namespace pg = pauligroup;
using pg::Pauli;
using pg::PauliProduct;

namespace {

std::filesystem::path data(const std::string& name) {
  return std::filesystem::path(PAULIGROUP_DATA_DIR) / name;
}

}  // namespace

TEST(HamiltonianText, ParsesThreeTermModel) {
  const auto h = pg::parse_hamiltonian("1.0 Z0\n0.5 Z0 Z1\n0.5 X0 X1\n");
  ASSERT_EQ(h.size(), 3u);
  EXPECT_EQ(h.n_qubits(), 2u);
  EXPECT_EQ(h.pauli(0).to_label(), "ZI");
  EXPECT_EQ(h.pauli(1).to_label(), "ZZ");
  EXPECT_EQ(h.pauli(2).to_label(), "XX");
  EXPECT_EQ(h.coefficient(0), 1.0);
  EXPECT_EQ(h.coefficient(1), 0.5);
  EXPECT_EQ(h.coefficient(2), 0.5);
}

TEST(HamiltonianText, MergesRepeatedProducts) {
  const auto h = pg::parse_hamiltonian("2.0 Z0\n3.0 Z0\n");
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h.coefficient(0), 5.0);
}

TEST(HamiltonianText, DropsTermsThatCancel) {
  const auto h = pg::parse_hamiltonian("1.5 X1\n-0.25 Z0\n-1.5 X1\n");
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h.pauli(0).to_label(), "ZI");
}

TEST(HamiltonianText, RejectsUnknownLetterWithLineNumber) {
  try {
    pg::parse_hamiltonian("1.0 Q3");
    FAIL() << "expected a parse error";
  } catch (const pg::ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
  try {
    pg::parse_hamiltonian("# header\n1.0 Z0\n\nabc Z1\n");
    FAIL() << "expected a parse error";
  } catch (const pg::ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(HamiltonianText, RejectsMalformedFactors) {
  EXPECT_THROW(pg::parse_hamiltonian("1.0 Z0 X0"), pg::ParseError);
  EXPECT_THROW(pg::parse_hamiltonian("1.0 Z"), pg::ParseError);
  EXPECT_THROW(pg::parse_hamiltonian("1.0 Z-1"), pg::ParseError);
  EXPECT_THROW(pg::parse_hamiltonian("1.0 z0"), pg::ParseError);
  EXPECT_THROW(pg::parse_hamiltonian("nan Z0"), pg::ParseError);
  EXPECT_THROW(pg::parse_hamiltonian("# nqubits: 2\n1.0 Z2"), pg::ParseError);
}

TEST(HamiltonianText, IdentityLinesCommentsAndHeader) {
  const auto h = pg::parse_hamiltonian(
      "# a comment\n# nqubits: 5\n-0.75   # constant\n\n0.5 Y3 # trailing\n");
  EXPECT_EQ(h.n_qubits(), 5u);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_TRUE(h.identity_index().has_value());
  EXPECT_EQ(h.constant(), -0.75);
  EXPECT_EQ(h.pauli(1).at(3), Pauli::Y);
  EXPECT_EQ(h.measurable_terms(), std::vector<std::size_t>{1});
}

TEST(HamiltonianText, RoundTripsAtFullPrecision) {
  testsupport::Gen gen(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen.index(8);
    std::vector<pg::Term> terms;
    const std::size_t count = 1 + gen.index(20);
    for (std::size_t k = 0; k < count; ++k) {
      terms.push_back({gen.normal() * std::pow(10.0, gen.uniform(-8, 3)), gen.pauli(n)});
    }
    const pg::Hamiltonian h(n, std::move(terms));
    const auto back = pg::parse_hamiltonian(pg::serialize_hamiltonian(h));
    ASSERT_EQ(back.n_qubits(), h.n_qubits());
    ASSERT_EQ(back.size(), h.size());
    for (std::size_t k = 0; k < h.size(); ++k) {
      EXPECT_EQ(back.pauli(k), h.pauli(k));
      EXPECT_EQ(back.coefficient(k), h.coefficient(k));
    }
  }
}

TEST(HamiltonianText, ShippedFixturesHaveExpectedShapes) {
  struct Shape {
    const char* file;
    std::size_t qubits;
    std::size_t terms;
  };
  for (const Shape s : {Shape{"h2.ham", 4, 15}, Shape{"lih.ham", 12, 631},
                        Shape{"beh2.ham", 14, 666}, Shape{"h2o.ham", 14, 1086},
                        Shape{"nh3.ham", 16, 3609}}) {
    const auto h = pg::load_hamiltonian(data(s.file));
    EXPECT_EQ(h.n_qubits(), s.qubits) << s.file;
    EXPECT_EQ(h.size(), s.terms) << s.file;
  }
}

TEST(HamiltonianText, LoadErrorNamesThePath) {
  const auto path = std::filesystem::temp_directory_path() / "pauligroup_bad.ham";
  {
    std::ofstream f(path);
    f << "1.0 Z0\n2.0 W1\n";
  }
  try {
    pg::load_hamiltonian(path);
    FAIL() << "expected a parse error";
  } catch (const pg::ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find(path.string()), std::string::npos);
  }
  std::filesystem::remove(path);
  EXPECT_THROW(pg::load_hamiltonian(path), pg::Error);
}

TEST(WavefunctionText, BasisState) {
  const auto s = pg::parse_wavefunction("1 0\n0 0\n", 1);
  EXPECT_EQ(s[0], pg::Complex(1.0, 0.0));
  EXPECT_EQ(s[1], pg::Complex(0.0, 0.0));
}

TEST(WavefunctionText, RenormalizesWithWarning) {
  std::vector<std::string> warnings;
  const auto s = pg::parse_wavefunction("1 0\n1 0\n", 1, &warnings);
  EXPECT_NEAR(s[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s[1].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(warnings.size(), 1u);
  warnings.clear();
  pg::parse_wavefunction("0 1\n0 0\n", 1, &warnings);
  EXPECT_TRUE(warnings.empty());
}

TEST(WavefunctionText, Errors) {
  EXPECT_THROW(pg::parse_wavefunction("1 0\n0 0\n0 0\n", 1), pg::DimensionError);
  EXPECT_THROW(pg::parse_wavefunction("0 0\n0 0\n", 1), pg::ValidationError);
  EXPECT_THROW(pg::parse_wavefunction("1 0 0\n0 0\n", 1), pg::ParseError);
  EXPECT_THROW(pg::parse_wavefunction("1 x\n0 0\n", 1), pg::ParseError);
}

TEST(WavefunctionText, RoundTrip) {
  testsupport::Gen gen(22);
  const auto s = gen.state(3);
  const auto back = pg::parse_wavefunction(pg::serialize_wavefunction(s), 3);
  for (std::size_t i = 0; i < s.dim(); ++i) EXPECT_EQ(back[i], s[i]);
}

TEST(ReportJson, EmptyReport) {
  EXPECT_EQ(pg::write_report(pg::Report{}), R"({"methods":{}})");
}

TEST(ReportJson, SingleMethod) {
  pg::Report r;
  r.methods["SI"].variance = 0.5;
  EXPECT_EQ(pg::write_report(r),
            R"({"methods":{"SI":{"groups":0,"variables":0,"variance":0.5}}})");
}

TEST(ReportJson, RoundTrip) {
  pg::Report r;
  r.hamiltonian = "h.ham";
  r.relation = "fc";
  r.n_qubits = 4;
  r.n_terms = 15;
  r.energy = -1.1;
  r.timing = true;
  auto& ics = r.methods["ICS"];
  ics.variance = 0.1364;
  ics.groups = 2;
  ics.variables = 6;
  ics.allocation = {0.25, 0.75};
  ics.trace = {{0.2, 0.0, 0.01, "initial", true},
               {std::numeric_limits<double>::infinity(), 0.1, 0.02, "cycle", false}};
  ics.regularized = true;
  ics.seconds = 0.5;
  auto& lf = r.methods["LF"];
  lf.error = "term 3 (X0) is never measured";
  auto& si = r.methods["SI"];
  si.variance = 0.2;
  si.sample = pg::SampleSummary{100, 10, "collapse", {40, 60}, -1.0, 0.002, 0.0021, -1.01};
  const auto text = pg::write_report(r, 2);
  EXPECT_EQ(pg::parse_report(text), r);
  EXPECT_EQ(pg::write_report(pg::parse_report(text), 2), text);
  EXPECT_THROW(pg::parse_report("{"), pg::ParseError);
  EXPECT_THROW(pg::parse_report("{}"), pg::ParseError);
}

TEST(ReportJson, WallTimesOnlyWhenRequested) {
  pg::Report r;
  r.methods["SI"].variance = 1.0;
  r.methods["SI"].seconds = 3.0;
  EXPECT_EQ(pg::write_report(r).find("seconds"), std::string::npos);
  r.timing = true;
  EXPECT_NE(pg::write_report(r).find("seconds"), std::string::npos);
}
