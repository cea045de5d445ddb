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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "graphent/bounds.hpp"
#include "graphent/error.hpp"
#include "graphent/frame.hpp"
#include "graphent/graph.hpp"
#include "graphent/reconstruction.hpp"

namespace graphent {

/// Bit flips on graph-basis indices plus optional white noise.
struct NoiseModel {
  std::vector<double> eps_z;  // one per qubit, in [0, 1/2]
  double w = 0.0;             // depolarizing weight in [0, 1]

  void validate(std::size_t n) const {
    if (eps_z.size() != n) throw InvalidArgument("noise model needs one flip probability per qubit");
    for (double e : eps_z) {
      if (!(e >= 0.0 && e <= 0.5)) throw InvalidArgument("flip probability outside [0, 1/2]");
    }
    if (!(w >= 0.0 && w <= 1.0)) throw InvalidArgument("depolarizing weight outside [0, 1]");
  }
};

inline GraphDiagonalState apply_noise(const Graph& graph, const NoiseModel& model) {
  const std::size_t n = graph.num_vertices();
  if (n > kMaxGroupQubits) throw InvalidArgument("too many qubits for a graph-diagonal state");
  model.validate(n);
  const std::size_t d = std::size_t{1} << n;
  std::vector<double> p(d);
  for (std::size_t i = 0; i < d; ++i) {
    double prob = 1.0;
    for (std::size_t a = 0; a < n; ++a) {
      prob *= ((i >> a) & 1u) ? model.eps_z[a] : 1.0 - model.eps_z[a];
    }
    p[i] = (1.0 - model.w) * prob + model.w / double(d);
  }
  return GraphDiagonalState(std::move(p));
}

/// Indices 2^a of the n generators.
inline std::vector<GroupIndex> generator_indices(std::size_t n) {
  std::vector<GroupIndex> out;
  for (std::size_t a = 0; a < n; ++a) out.push_back(GroupIndex{1} << a);
  return out;
}

/// Every non-identity group element.
inline std::vector<GroupIndex> all_indices(std::size_t n) {
  std::vector<GroupIndex> out;
  for (GroupIndex k = 1; k < (GroupIndex{1} << n); ++k) out.push_back(k);
  return out;
}

/// Finite-shot record: each index gets its own generator seeded with
/// derive_seed(seed, k), so results do not depend on the order of indices.
inline MeasurementRecord sample_record(const GraphDiagonalState& state, const Graph& graph,
                                       const LocalFrame& frame,
                                       const std::vector<GroupIndex>& indices,
                                       std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw InvalidArgument("shots must be at least 1");
  if (state.size() != (std::size_t{1} << graph.num_vertices())) {
    throw InvalidArgument("state and graph differ in qubit count");
  }
  const std::vector<double> m = expectations_from_populations(state.p());
  MeasurementRecord record(graph, frame);
  for (GroupIndex k : indices) {
    if (k == 0 || k >= m.size()) throw InvalidArgument("index outside the stabilizer group");
    const double prob = std::clamp((1.0 + m[k]) / 2.0, 0.0, 1.0);
    std::mt19937_64 rng(derive_seed(seed, k));
    const auto plus = std::binomial_distribution<std::uint64_t>(shots, prob)(rng);
    const double value = 2.0 * double(plus) / double(shots) - 1.0;
    const double sigma = std::sqrt(std::max(0.0, 1.0 - value * value) / double(shots));
    record.set(k, {value, sigma, shots});
  }
  return record;
}

}  // namespace graphent
