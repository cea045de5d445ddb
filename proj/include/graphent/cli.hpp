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

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "graphent/bounds.hpp"
#include "graphent/error.hpp"
#include "graphent/frame.hpp"
#include "graphent/graph.hpp"
#include "graphent/json_io.hpp"
#include "graphent/reconstruction.hpp"
#include "graphent/robustness.hpp"
#include "graphent/simulate.hpp"

namespace graphent::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kBadInput = 2,
  kUnconverged = 3,
  kNeedsState = 4,
};

enum class Format { text, json };

inline Format parse_format(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "json") return Format::json;
  throw InvalidArgument("--format must be text or json");
}

namespace detail {

inline std::vector<std::size_t> parse_list(const std::string& text, const std::string& what) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &pos);
    } catch (const std::exception&) {
      throw InvalidArgument("bad number '" + tok + "' in " + what);
    }
    if (pos != tok.size()) throw InvalidArgument("bad number '" + tok + "' in " + what);
    out.push_back(v);
  }
  if (out.empty()) throw InvalidArgument("empty " + what);
  return out;
}

inline std::size_t parse_count(const std::string& text, const std::string& what) {
  const auto v = parse_list(text, what);
  if (v.size() != 1) throw InvalidArgument(what + " takes a single number");
  return v[0];
}

inline double parse_real(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw InvalidArgument("bad number '" + text + "' in " + what);
  }
  if (pos != text.size()) throw InvalidArgument("bad number '" + text + "' in " + what);
  return v;
}

}  // namespace detail

/// Graph specs: path:N, path:4,1,2,5,6,3 (vertex order along a chain),
/// cycle:N, star:N, edges:N:1-2,2-3, or a path to a JSON graph file.
inline Graph parse_graph_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    if (spec.size() > 5 && spec.ends_with(".json")) return graph_from_json(read_json_file(spec));
    throw InvalidArgument("unknown graph spec '" + spec + "'");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (kind == "path") {
    const auto v = detail::parse_list(rest, "graph spec");
    if (v.size() == 1) return Graph::path(v[0]);
    std::vector<std::size_t> order;
    for (std::size_t x : v) {
      if (x < 1 || x > v.size()) throw InvalidArgument("chain vertex out of range in '" + spec + "'");
      order.push_back(x - 1);
    }
    return Graph::chain(order);
  }
  if (kind == "cycle") return Graph::cycle(detail::parse_count(rest, "graph spec"));
  if (kind == "star") return Graph::star(detail::parse_count(rest, "graph spec"));
  if (kind == "edges") {
    const auto c2 = rest.find(':');
    if (c2 == std::string::npos) throw InvalidArgument("edges spec must be edges:N:a-b,...");
    const std::size_t n = detail::parse_count(rest.substr(0, c2), "graph spec");
    std::vector<Edge> edges;
    std::stringstream ss(rest.substr(c2 + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      const auto dash = tok.find('-');
      if (dash == std::string::npos) throw InvalidArgument("edge '" + tok + "' must look like a-b");
      const auto a = detail::parse_count(tok.substr(0, dash), "edge");
      const auto b = detail::parse_count(tok.substr(dash + 1), "edge");
      if (a < 1 || b < 1) throw InvalidArgument("vertices are numbered from 1");
      edges.emplace_back(a - 1, b - 1);
    }
    return Graph(n, edges);
  }
  throw InvalidArgument("unknown graph kind '" + kind + "'");
}

/// Frame presets. "c4"/"paper4" and "lc6"/"paper6" are the signed
/// substitutions of the four- and six-qubit hyperentangled experiments.
inline LocalFrame parse_frame_name(const std::string& name, std::size_t n) {
  if (name == "identity") return LocalFrame::identity(n);
  if (name == "c4" || name == "paper4") {
    if (n != 4) throw InvalidArgument("frame " + name + " needs 4 qubits");
    return frames::hyperentangled_c4();
  }
  if (name == "lc6" || name == "paper6") {
    if (n != 6) throw InvalidArgument("frame " + name + " needs 6 qubits");
    return frames::hyperentangled_lc6();
  }
  throw InvalidArgument("unknown frame '" + name + "'");
}

/// Graph and frame together. With the six-qubit preset, "path:6" means the
/// preset's own chain 4-1-2-5-6-3 so that the generators match the measured
/// operators.
inline std::pair<Graph, LocalFrame> parse_setup(const std::string& graph_spec,
                                                const std::string& frame_name) {
  if ((frame_name == "lc6" || frame_name == "paper6") && graph_spec == "path:6") {
    return {frames::hyperentangled_lc6_graph(), frames::hyperentangled_lc6()};
  }
  Graph g = parse_graph_spec(graph_spec);
  LocalFrame f = parse_frame_name(frame_name, g.num_vertices());
  return {std::move(g), std::move(f)};
}

/// "z=0.02" (all qubits), "z=0.01:0.02:0.03:0.04" (per qubit), "w=0.1",
/// comma-separated.
inline NoiseModel parse_noise(const std::string& spec, std::size_t n) {
  NoiseModel model;
  model.eps_z.assign(n, 0.0);
  if (spec.empty()) return model;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("noise item '" + item + "' needs key=value");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    if (key == "z") {
      std::vector<double> eps;
      std::stringstream vs(val);
      std::string tok;
      while (std::getline(vs, tok, ':')) eps.push_back(detail::parse_real(tok, "noise"));
      if (eps.size() == 1) eps.assign(n, eps[0]);
      if (eps.size() != n) throw InvalidArgument("noise z= needs 1 or " + std::to_string(n) + " values");
      model.eps_z = eps;
    } else if (key == "w") {
      model.w = detail::parse_real(val, "noise");
    } else {
      throw InvalidArgument("unknown noise key '" + key + "'");
    }
  }
  model.validate(n);
  return model;
}

// Text rendering walks the JSON report so both formats print the same
// numbers.
inline std::string format_number(const json& v) { return v.dump(); }

inline void render_text(const json& j, std::ostream& out, const std::string& prefix = "") {
  if (j.is_object()) {
    if (j.contains("value") && j.contains("provenance") && j.size() <= 3) {
      out << prefix << " = " << format_number(j.at("value"));
      if (j.contains("sigma")) out << " +/- " << format_number(j.at("sigma"));
      out << "  [" << j.at("provenance").get<std::string>() << "]\n";
      return;
    }
    for (const auto& [k, v] : j.items()) render_text(v, out, prefix.empty() ? k : prefix + "." + k);
  } else if (j.is_array() && !j.empty() && j.front().is_structured()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      render_text(j[i], out, prefix + "[" + std::to_string(i) + "]");
    }
  } else {
    out << prefix << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

inline void emit(const json& report, Format fmt, std::ostream& out) {
  if (fmt == Format::json) {
    out << report.dump(2) << "\n";
  } else {
    render_text(report, out);
  }
}

inline json sdp_json(const SdpSolution& s, std::size_t n, bool converged) {
  json parts = json::array();
  for (const auto& c : s.checks) {
    parts.push_back({{"partition", partition_to_string(c.partition, n)},
                     {"min_eigenvalue", c.min_eigenvalue}});
  }
  json out = {{"provenance", "sdp"},
              {"method", s.method},
              {"converged", converged},
              {"value", s.value},
              {"primal", s.primal_value},
              {"dual", s.dual_value},
              {"gap", s.duality_gap},
              {"iterations", s.iterations},
              {"sigma_min_eigenvalue", s.sigma_min_eigenvalue},
              {"partitions", parts}};
  if (s.value >= 0) out["log_value"] = std::log2(1.0 + s.value);
  return out;
}

/// Robustness of a graph-diagonal state; fills `out` and returns the exit code.
inline int robustness_section(const GraphDiagonalState& p, const Graph& g, const LocalFrame& f,
                              const std::string& partitions, json& out) {
  const auto parts = parse_partitions(partitions, g.num_vertices());
  try {
    out = sdp_json(symmetry_reduced_robustness(p, g, f, parts), g.num_vertices(), true);
    return kOk;
  } catch (const SdpNotConverged& e) {
    out = sdp_json(e.best(), g.num_vertices(), false);
    out["error"] = e.what();
    return kUnconverged;
  }
}

struct AnalyzeArgs {
  std::string path;
  Format format = Format::text;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  std::optional<std::string> partitions;  // SDP runs only when given
};

/// Full analysis of a measurement record; returns the exit code.
inline int cmd_analyze(const AnalyzeArgs& opt, std::ostream& out, std::ostream& err) {
  MeasurementRecord record = [&] {
    try {
      return record_from_json(read_json_file(opt.path));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(opt.path + ": " + e.what());
    }
  }();
  json report;
  json measured = json::array();
  const StabilizerGroup group = framed_group(record.graph(), record.frame());
  for (const auto& [k, m] : record.entries()) measured.push_back(group[k].str());
  report["input"] = {{"graph", graph_to_json(record.graph())},
                     {"frame", frame_to_json(record.frame())},
                     {"measured", measured},
                     {"full_group", record.has_full_group()},
                     {"generators", record.has_generators()}};
  int code = kOk;

  if (record.has_full_group()) {
    const auto m = record.full_expectations();
    report["raw"] = {{"fidelity", estimate_json(raw_fidelity(record), "raw")},
                     {"purity", {{"value", raw_purity(m)}, {"provenance", "raw"}}}};
    try {
      const MlFit fit = ml_fit(record);
      report["ml"] = {{"p0", {{"value", fit.state.fidelity()}, {"provenance", "ml"}}},
                      {"purity", {{"value", fit.state.purity()}, {"provenance", "ml"}}},
                      {"entropy", {{"value", fit.state.entropy()}, {"provenance", "ml"}}},
                      {"kkt_residual", fit.kkt_residual},
                      {"iterations", fit.iterations}};
      if (opt.partitions) {
        json s;
        code = robustness_section(fit.state, record.graph(), record.frame(), *opt.partitions, s);
        report["sdp"] = s;
      }
    } catch (const ConvergenceError& e) {
      report["ml"] = {{"error", e.what()}};
      code = kUnconverged;
    }
  } else if (opt.partitions) {
    err << "robustness needs the full stabilizer group; this record only supports the "
           "generator bounds (robustness_min)\n";
    code = kNeedsState;
  }

  if (record.has_generators()) {
    const std::size_t blue = two_coloring(record.graph()).blue.size();
    report["bounds"] = bound_report_to_json(bound_report(generator_data(record), blue, opt.trials, opt.seed));
  }
  emit(report, opt.format, out);
  if (code == kUnconverged) err << "solver did not converge; partial report emitted\n";
  return code;
}

struct SimulateArgs {
  std::string graph = "path:4";
  std::string frame = "identity";
  std::string noise;
  std::uint64_t shots = 100000;
  std::uint64_t seed = 1;
  std::string measure = "all";
  std::optional<std::string> out_path;
  Format format = Format::text;
};

/// Writes a simulated record and prints the exact expectations.
inline int cmd_simulate(const SimulateArgs& opt, std::ostream& out, std::ostream& err) {
  if (opt.shots == 0) throw InvalidArgument("--shots must be at least 1");
  auto [graph, frame] = parse_setup(opt.graph, opt.frame);
  const std::size_t n = graph.num_vertices();
  if (n > kMaxGroupQubits) throw InvalidArgument("too many qubits to simulate");
  const NoiseModel model = parse_noise(opt.noise, n);
  std::vector<GroupIndex> indices;
  if (opt.measure == "all") {
    indices = all_indices(n);
  } else if (opt.measure == "generators") {
    indices = generator_indices(n);
  } else {
    throw InvalidArgument("--measure must be all or generators");
  }
  const GraphDiagonalState state = apply_noise(graph, model);
  const MeasurementRecord record = sample_record(state, graph, frame, indices, opt.shots, opt.seed);
  const std::string text = record_to_json(record).dump(2) + "\n";
  if (opt.out_path) {
    std::ofstream f(*opt.out_path, std::ios::binary);
    if (!f) throw InvalidArgument(*opt.out_path + ": cannot write file");
    f << text;
  } else {
    err << "no --out given; record not written\n";
  }
  const StabilizerGroup group = framed_group(graph, frame);
  const auto m = expectations_from_populations(state.p());
  json exact = json::array();
  for (GroupIndex k : indices) {
    exact.push_back({{"k", index_to_bits(k, n)}, {"pauli", group[k].str()}, {"m", m[k]}});
  }
  json report = {{"graph", graph_to_json(graph)}, {"exact", exact}};
  if (opt.out_path) report["record"] = *opt.out_path;
  emit(report, opt.format, out);
  return kOk;
}

struct RobustnessArgs {
  std::string path;
  std::string partitions = "all";
  Format format = Format::text;
};

/// PPT robustness from a record (full group), a p-vector file or a density
/// matrix file.
inline int cmd_robustness(const RobustnessArgs& opt, std::ostream& out, std::ostream& err) {
  const json j = read_json_file(opt.path);
  json report;
  int code = kOk;
  try {
    if (j.is_object() && j.contains("measurements")) {
      const MeasurementRecord record = record_from_json(j);
      if (!record.has_full_group()) {
        err << opt.path << ": only " << record.entries().size()
            << " stabilizer expectations present; the SDP needs a reconstructed state "
               "(all 2^n - 1 elements). Use `graphent analyze` for the generator bound "
               "robustness_min instead.\n";
        return kNeedsState;
      }
      const MlFit fit = ml_fit(record);
      report["input"] = {{"kind", "record"}, {"graph", graph_to_json(record.graph())}};
      json s;
      code = robustness_section(fit.state, record.graph(), record.frame(), opt.partitions, s);
      report["sdp"] = s;
    } else {
      const StateFile st = state_from_json(j);
      if (st.p) {
        report["input"] = {{"kind", "graph-diagonal"}, {"graph", graph_to_json(*st.graph)}};
        json s;
        code = robustness_section(*st.p, *st.graph, *st.frame, opt.partitions, s);
        report["sdp"] = s;
      } else {
        const std::size_t n = st.rho->num_qubits();
        const auto parts = parse_partitions(opt.partitions, n);
        report["input"] = {{"kind", "density-matrix"}, {"n", n}};
        try {
          report["sdp"] = sdp_json(ppt_robustness({*st.rho, parts}), n, true);
        } catch (const SdpNotConverged& e) {
          report["sdp"] = sdp_json(e.best(), n, false);
          report["sdp"]["error"] = e.what();
          code = kUnconverged;
        }
      }
    }
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(opt.path + ": " + e.what());
  }
  emit(report, opt.format, out);
  if (code == kUnconverged) err << "solver did not converge; partial report emitted\n";
  return code;
}

/// Maps library exceptions to exit codes around a command.
template <class F>
int guarded(F&& run, std::ostream& err) {
  try {
    return run();
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const NotTwoColorable& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kUnconverged;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace graphent::cli
