// Copyright 2026 The graphent Authors
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

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "graphent/bounds.hpp"
#include "graphent/error.hpp"
#include "graphent/frame.hpp"
#include "graphent/graph.hpp"
#include "graphent/operator.hpp"
#include "graphent/reconstruction.hpp"
#include "graphent/stabilizer.hpp"

namespace graphent {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void field_error(const std::string& path, const std::string& what) {
  throw InvalidArgument(path + ": " + what);
}

inline const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) field_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) field_error(path, "missing field \"" + key + "\"");
  return *it;
}

inline double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) field_error(path, "expected a number");
  return j.get<double>();
}

inline std::string string_at(const json& j, const std::string& path) {
  if (!j.is_string()) field_error(path, "expected a string");
  return j.get<std::string>();
}

inline std::uint64_t count_at(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    field_error(path, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

// Rewraps library errors so every message carries the offending field.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    const std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    field_error(path, msg);
  }
}

}  // namespace detail

// Graphs: {"n": 4, "edges": [[1, 2], [2, 3]]} with 1-based vertices.

inline json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a + 1, b + 1});
  return {{"n", g.num_vertices()}, {"edges", edges}};
}

inline Graph graph_from_json(const json& j, const std::string& path = "graph") {
  const auto n = detail::count_at(detail::require(j, "n", path), path + ".n");
  const json& ej = detail::require(j, "edges", path);
  if (!ej.is_array()) detail::field_error(path + ".edges", "expected an array");
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < ej.size(); ++e) {
    const std::string ep = path + ".edges[" + std::to_string(e) + "]";
    if (!ej[e].is_array() || ej[e].size() != 2) detail::field_error(ep, "expected a pair");
    const auto a = detail::count_at(ej[e][0], ep + "[0]");
    const auto b = detail::count_at(ej[e][1], ep + "[1]");
    if (a < 1 || b < 1) detail::field_error(ep, "vertices are numbered from 1");
    edges.emplace_back(a - 1, b - 1);
  }
  return detail::at_path(path, [&] { return Graph(n, edges); });
}

// Frames: [{"X": "+Z", "Z": "-X"}, ...], one object per qubit.

inline json frame_to_json(const LocalFrame& f) {
  json out = json::array();
  for (const auto& m : f.maps()) out.push_back({{"X", m.image_of_x.str()}, {"Z", m.image_of_z.str()}});
  return out;
}

inline LocalFrame frame_from_json(const json& j, const std::string& path = "frame") {
  if (!j.is_array()) detail::field_error(path, "expected an array of per-qubit maps");
  std::vector<QubitMap> maps;
  for (std::size_t q = 0; q < j.size(); ++q) {
    const std::string qp = path + "[" + std::to_string(q) + "]";
    QubitMap m;
    m.image_of_x = detail::at_path(qp + ".X", [&] {
      return SignedPauli::parse(detail::string_at(detail::require(j[q], "X", qp), qp + ".X"));
    });
    m.image_of_z = detail::at_path(qp + ".Z", [&] {
      return SignedPauli::parse(detail::string_at(detail::require(j[q], "Z", qp), qp + ".Z"));
    });
    maps.push_back(m);
  }
  return detail::at_path(path, [&] { return LocalFrame(maps); });
}

// Measurement records.

/// Writes each entry with both its index bits and its framed Pauli string.
inline json record_to_json(const MeasurementRecord& r) {
  const StabilizerGroup group = framed_group(r.graph(), r.frame());
  json ms = json::array();
  for (const auto& [k, m] : r.entries()) {
    json e = {{"k", index_to_bits(k, r.num_qubits())},
              {"pauli", group[k].str()},
              {"value", m.value},
              {"sigma", m.sigma}};
    if (m.shots) e["shots"] = *m.shots;
    ms.push_back(std::move(e));
  }
  return {{"graph", graph_to_json(r.graph())}, {"frame", frame_to_json(r.frame())}, {"measurements", ms}};
}

inline MeasurementRecord record_from_json(const json& j) {
  if (!j.is_object()) detail::field_error("record", "expected an object");
  const Graph graph = graph_from_json(detail::require(j, "graph", "record"));
  const std::size_t n = graph.num_vertices();
  const LocalFrame frame = j.contains("frame") ? frame_from_json(j.at("frame"))
                                               : LocalFrame::identity(n);
  if (frame.num_qubits() != n) detail::field_error("frame", "qubit count differs from graph.n");
  MeasurementRecord record = detail::at_path("graph", [&] { return MeasurementRecord(graph, frame); });
  const StabilizerGroup group = framed_group(graph, frame);

  const json& ms = detail::require(j, "measurements", "record");
  if (!ms.is_array()) detail::field_error("measurements", "expected an array");
  for (std::size_t e = 0; e < ms.size(); ++e) {
    const std::string ep = "measurements[" + std::to_string(e) + "]";
    const json& ej = ms[e];
    if (!ej.is_object()) detail::field_error(ep, "expected an object");
    std::optional<GroupIndex> k;
    if (ej.contains("k")) {
      const std::string bits = detail::string_at(ej.at("k"), ep + ".k");
      if (bits.size() != n) detail::field_error(ep + ".k", "expected " + std::to_string(n) + " bits");
      k = detail::at_path(ep + ".k", [&] { return index_from_bits(bits); });
    }
    if (ej.contains("pauli")) {
      const std::string text = detail::string_at(ej.at("pauli"), ep + ".pauli");
      const PauliString p = detail::at_path(ep + ".pauli", [&] { return PauliString::parse(text); });
      if (p.num_qubits() != n) detail::field_error(ep + ".pauli", "wrong number of qubits");
      const auto found = group.find(p);
      if (!found) detail::field_error(ep + ".pauli", text + " is not in the stabilizer group");
      if (group[*found].negative() != p.negative()) {
        detail::field_error(ep + ".pauli", "sign of " + text + " disagrees with group element " +
                                               group[*found].str());
      }
      if (k && *k != *found) detail::field_error(ep, "\"k\" and \"pauli\" name different elements");
      k = found;
    }
    if (!k) detail::field_error(ep, "needs \"k\" or \"pauli\"");
    if (record.entries().contains(*k)) detail::field_error(ep, "duplicate measurement");
    Measurement m;
    m.value = detail::number_at(detail::require(ej, "value", ep), ep + ".value");
    m.sigma = detail::number_at(detail::require(ej, "sigma", ep), ep + ".sigma");
    if (m.sigma < 0) detail::field_error(ep + ".sigma", "must be non-negative");
    if (ej.contains("shots")) m.shots = detail::count_at(ej.at("shots"), ep + ".shots");
    if (*k == 0) {
      if (m.value != 1.0) detail::field_error(ep + ".value", "identity element must have value 1");
      continue;
    }
    detail::at_path(ep, [&] { record.set(*k, m); });
  }
  return record;
}

// Operators: {"d": 4, "entries": [[re, im], ...]} row-major.

inline json operator_to_json(const HermitianOperator& op) {
  json entries = json::array();
  for (std::size_t i = 0; i < op.dim(); ++i) {
    for (std::size_t k = 0; k < op.dim(); ++k) entries.push_back({op(i, k).real(), op(i, k).imag()});
  }
  return {{"d", op.dim()}, {"entries", entries}};
}

inline HermitianOperator operator_from_json(const json& j, const std::string& path = "rho") {
  const auto d = detail::count_at(detail::require(j, "d", path), path + ".d");
  const json& ej = detail::require(j, "entries", path);
  if (!ej.is_array() || ej.size() != d * d) {
    detail::field_error(path + ".entries", "expected d*d = " + std::to_string(d * d) + " pairs");
  }
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d * d; ++i) {
    const std::string ip = path + ".entries[" + std::to_string(i) + "]";
    if (!ej[i].is_array() || ej[i].size() != 2) detail::field_error(ip, "expected [re, im]");
    m(i / d, i % d) = {detail::number_at(ej[i][0], ip + "[0]"), detail::number_at(ej[i][1], ip + "[1]")};
  }
  return detail::at_path(path, [&] { return HermitianOperator(std::move(m), 1e-9); });
}

/// Explicit state input: either a graph-diagonal p vector (with graph and
/// optional frame) or a dense density matrix.
struct StateFile {
  std::optional<Graph> graph;
  std::optional<LocalFrame> frame;
  std::optional<GraphDiagonalState> p;
  std::optional<HermitianOperator> rho;
};

inline StateFile state_from_json(const json& j) {
  if (!j.is_object()) detail::field_error("state", "expected an object");
  StateFile s;
  if (j.contains("graph")) s.graph = graph_from_json(j.at("graph"));
  if (j.contains("frame")) s.frame = frame_from_json(j.at("frame"));
  if (j.contains("p")) {
    const json& pj = j.at("p");
    if (!pj.is_array()) detail::field_error("p", "expected an array");
    std::vector<double> p;
    for (std::size_t i = 0; i < pj.size(); ++i) p.push_back(detail::number_at(pj[i], "p[" + std::to_string(i) + "]"));
    if (!s.graph) detail::field_error("state", "\"p\" needs a \"graph\"");
    if (p.size() != (std::size_t{1} << s.graph->num_vertices())) {
      detail::field_error("p", "expected 2^n entries");
    }
    s.p = detail::at_path("p", [&] { return GraphDiagonalState(std::move(p)); });
    if (!s.frame) s.frame = LocalFrame::identity(s.graph->num_vertices());
    if (s.frame->num_qubits() != s.graph->num_vertices()) {
      detail::field_error("frame", "qubit count differs from graph.n");
    }
  }
  if (j.contains("rho")) s.rho = operator_from_json(j.at("rho"));
  if (!s.p && !s.rho) detail::field_error("state", "needs \"p\" or \"rho\"");
  if (s.p && s.rho) detail::field_error("state", "give either \"p\" or \"rho\", not both");
  return s;
}

inline json state_to_json(const GraphDiagonalState& p, const Graph& g, const LocalFrame& f) {
  return {{"graph", graph_to_json(g)}, {"frame", frame_to_json(f)},
          {"p", std::vector<double>(p.p().begin(), p.p().end())}};
}

/// Parses text, reporting syntax errors with line and column.
inline json parse_json_text(const std::string& text, const std::string& name) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Recover the line number from the byte offset.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InvalidArgument(name + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": malformed JSON");
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

// Report fragments.

inline json estimate_json(const Estimate& e, const char* provenance) {
  return {{"value", e.value}, {"sigma", e.sigma}, {"provenance", provenance}};
}

inline json bound_report_to_json(const BoundReport& r) {
  const char* tag = "generator-bound";
  return {{"blue_size", r.blue_size},
          {"f_min", estimate_json(r.f_min, tag)},
          {"p_min", estimate_json(r.p_min, tag)},
          {"p_min_kkt_residual", r.p_min_kkt_residual},
          {"rg_min", estimate_json(r.rg_min, tag)},
          {"lrg_min", estimate_json(r.lrg_min, tag)},
          {"er_min", estimate_json(r.er_min, tag)}};
}

}  // namespace graphent
