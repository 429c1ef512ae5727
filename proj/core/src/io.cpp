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

#include "pauligroup/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>

#include "pauligroup/errors.hpp"

namespace pauligroup {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_real(std::string_view token, double& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto res = std::from_chars(token.data(), token.data() + token.size(), out);
  return res.ec == std::errc() && res.ptr == token.data() + token.size();
}

bool parse_index(std::string_view token, std::size_t& out) {
  if (token.empty()) return false;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), out);
  return res.ec == std::errc() && res.ptr == token.data() + token.size();
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    const auto line =
        text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    ++line_no;
    fn(line_no, line);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Hamiltonian parse_hamiltonian(std::string_view text) {
  struct Raw {
    std::size_t line;
    double coefficient;
    std::vector<std::pair<std::size_t, Pauli>> factors;
  };
  std::vector<Raw> raw;
  std::optional<std::size_t> declared;
  std::size_t max_index = 0;
  bool any_factor = false;

  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    std::string_view body = line;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      const auto comment = trim(line.substr(hash + 1));
      constexpr std::string_view kKey = "nqubits:";
      if (comment.substr(0, kKey.size()) == kKey) {
        std::size_t k = 0;
        if (!parse_index(trim(comment.substr(kKey.size())), k)) {
          throw ParseError(line_no, "bad nqubits header");
        }
        declared = k;
      }
      body = line.substr(0, hash);
    }
    const auto tokens = split_ws(body);
    if (tokens.empty()) return;
    Raw r{line_no, 0.0, {}};
    if (!parse_real(tokens[0], r.coefficient) || !std::isfinite(r.coefficient)) {
      throw ParseError(line_no, "bad coefficient '" + std::string(tokens[0]) + "'");
    }
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const auto tok = tokens[t];
      Pauli p;
      switch (tok.front()) {
        case 'X': p = Pauli::X; break;
        case 'Y': p = Pauli::Y; break;
        case 'Z': p = Pauli::Z; break;
        default:
          throw ParseError(line_no, "bad factor '" + std::string(tok) + "'");
      }
      std::size_t q = 0;
      if (!parse_index(tok.substr(1), q)) {
        throw ParseError(line_no, "bad qubit index in '" + std::string(tok) + "'");
      }
      for (const auto& f : r.factors) {
        if (f.first == q) {
          throw ParseError(line_no, "qubit " + std::to_string(q) + " repeated");
        }
      }
      r.factors.emplace_back(q, p);
      max_index = std::max(max_index, q);
      any_factor = true;
    }
    raw.push_back(std::move(r));
  });

  std::size_t n = any_factor ? max_index + 1 : 0;
  if (declared) {
    if (any_factor && max_index >= *declared) {
      throw ParseError(0, "qubit index " + std::to_string(max_index) +
                              " exceeds declared nqubits " +
                              std::to_string(*declared));
    }
    n = *declared;
  }
  std::vector<Term> terms;
  terms.reserve(raw.size());
  for (const auto& r : raw) {
    PauliProduct p(n);
    for (const auto& [q, letter] : r.factors) p.set(q, letter);
    terms.push_back({r.coefficient, std::move(p)});
  }
  return Hamiltonian(n, std::move(terms));
}

Hamiltonian load_hamiltonian(const std::filesystem::path& path) {
  try {
    return parse_hamiltonian(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), path.string());
  }
}

std::string serialize_hamiltonian(const Hamiltonian& h) {
  std::string out = "# nqubits: " + std::to_string(h.n_qubits()) + "\n";
  for (const auto& t : h.terms()) {
    out += format_double(t.coefficient);
    for (std::size_t q = 0; q < h.n_qubits(); ++q) {
      const Pauli p = t.pauli.at(q);
      if (p == Pauli::I) continue;
      out += ' ';
      out += to_char(p);
      out += std::to_string(q);
    }
    out += '\n';
  }
  return out;
}

StateVector parse_wavefunction(std::string_view text, std::size_t n_qubits,
                               std::vector<std::string>* warnings) {
  if (n_qubits > kMaxStateQubits) {
    throw ResourceError("state vectors are limited to " +
                        std::to_string(kMaxStateQubits) + " qubits");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  std::vector<Complex> amps;
  amps.reserve(dim);
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto tokens = split_ws(line);
    if (tokens.empty()) return;
    if (tokens.size() != 2) throw ParseError(line_no, "expected '<re> <im>'");
    double re = 0.0, im = 0.0;
    if (!parse_real(tokens[0], re) || !parse_real(tokens[1], im) ||
        !std::isfinite(re) || !std::isfinite(im)) {
      throw ParseError(line_no, "bad amplitude");
    }
    amps.emplace_back(re, im);
  });
  if (amps.size() != dim) {
    throw DimensionError("expected " + std::to_string(dim) + " amplitudes for " +
                         std::to_string(n_qubits) + " qubits, found " +
                         std::to_string(amps.size()));
  }
  double norm2 = 0.0;
  for (const auto& a : amps) norm2 += std::norm(a);
  if (std::abs(std::sqrt(norm2) - 1.0) > kNormTolerance) {
    if (norm2 == 0.0) throw ValidationError("wavefunction is the zero vector");
    if (warnings) {
      warnings->push_back("wavefunction norm " + format_double(std::sqrt(norm2)) +
                          " rescaled to 1");
    }
  }
  return StateVector::normalized(n_qubits, std::move(amps));
}

StateVector load_wavefunction(const std::filesystem::path& path,
                              std::size_t n_qubits,
                              std::vector<std::string>* warnings) {
  try {
    return parse_wavefunction(read_text_file(path), n_qubits, warnings);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), path.string());
  }
}

std::string serialize_wavefunction(const StateVector& s) {
  std::string out;
  for (const auto& a : s.amplitudes()) {
    out += format_double(a.real());
    out += ' ';
    out += format_double(a.imag());
    out += '\n';
  }
  return out;
}

}  // namespace pauligroup
