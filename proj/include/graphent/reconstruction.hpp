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
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graphent/error.hpp"
#include "graphent/frame.hpp"
#include "graphent/graph.hpp"
#include "graphent/operator.hpp"
#include "graphent/stabilizer.hpp"

namespace graphent {

/// A value with a one-sigma uncertainty.
struct Estimate {
  double value = 0.0;
  double sigma = 0.0;
};

struct Measurement {
  double value = 0.0;
  double sigma = 0.0;
  std::optional<std::uint64_t> shots;
};

/// Measured stabilizer expectation values <S_k>, keyed by group index k.
class MeasurementRecord {
 public:
  MeasurementRecord() = default;
  MeasurementRecord(Graph graph, LocalFrame frame)
      : graph_(std::move(graph)), frame_(std::move(frame)) {
    if (frame_.num_qubits() != graph_.num_vertices()) {
      throw InvalidArgument("frame and graph differ in qubit count");
    }
    if (graph_.num_vertices() > kMaxGroupQubits) {
      throw InvalidArgument("measurement records are limited to 20 qubits");
    }
  }

  const Graph& graph() const { return graph_; }
  const LocalFrame& frame() const { return frame_; }
  std::size_t num_qubits() const { return graph_.num_vertices(); }
  std::size_t group_size() const { return std::size_t{1} << num_qubits(); }
  const std::map<GroupIndex, Measurement>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  void set(GroupIndex k, Measurement m) {
    if (k >= group_size()) {
      throw InvalidArgument("stabilizer index " + std::to_string(k) + " out of range");
    }
    if (!(m.value >= -1.0 && m.value <= 1.0)) {
      throw InvalidArgument("expectation value outside [-1, 1] at index " + std::to_string(k));
    }
    if (!(m.sigma >= 0.0)) throw InvalidArgument("negative sigma at index " + std::to_string(k));
    if (k == 0 && (m.value != 1.0 || m.sigma != 0.0)) {
      throw InvalidArgument("identity entry must have value 1 and sigma 0");
    }
    entries_[k] = m;
  }

  bool contains(GroupIndex k) const { return k == 0 || entries_.contains(k); }

  /// All 2^n indices present (the identity counts as present).
  bool has_full_group() const {
    for (GroupIndex k = 1; k < group_size(); ++k) {
      if (!entries_.contains(k)) return false;
    }
    return true;
  }

  bool has_generators() const {
    for (std::size_t a = 0; a < num_qubits(); ++a) {
      if (!entries_.contains(GroupIndex{1} << a)) return false;
    }
    return true;
  }

  /// The complete vector m_k with m_0 = 1; throws if any entry is missing.
  std::vector<double> full_expectations() const {
    std::vector<double> m(group_size());
    m[0] = 1.0;
    for (GroupIndex k = 1; k < group_size(); ++k) {
      auto it = entries_.find(k);
      if (it == entries_.end()) {
        throw InvalidArgument("missing stabilizer entry " + index_to_bits(k, num_qubits()));
      }
      m[k] = it->second.value;
    }
    return m;
  }

 private:
  Graph graph_;
  LocalFrame frame_;
  std::map<GroupIndex, Measurement> entries_;
};

/// Population vector over graph-basis states; may contain negative entries.
using RawPopulations = std::vector<double>;

/// Physical graph-diagonal state: p_k >= 0 and sum p_k = 1.
class GraphDiagonalState {
 public:
  GraphDiagonalState() = default;
  explicit GraphDiagonalState(std::vector<double> p) : p_(std::move(p)) {
    dimension_qubits(p_.size());
    double sum = 0;
    for (double& x : p_) {
      if (!(x >= -1e-12)) throw InvalidArgument("graph-diagonal state has a negative population");
      x = std::max(x, 0.0);
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-10) throw InvalidArgument("populations do not sum to 1");
  }

  static GraphDiagonalState pure(std::size_t n) {
    std::vector<double> p(std::size_t{1} << n, 0.0);
    p[0] = 1.0;
    return GraphDiagonalState(std::move(p));
  }
  static GraphDiagonalState uniform(std::size_t n) {
    const std::size_t d = std::size_t{1} << n;
    return GraphDiagonalState(std::vector<double>(d, 1.0 / double(d)));
  }

  std::size_t num_qubits() const { return static_cast<std::size_t>(std::countr_zero(p_.size())); }
  std::span<const double> p() const { return p_; }
  double operator[](std::size_t k) const { return p_[k]; }
  std::size_t size() const { return p_.size(); }

  double fidelity() const { return p_[0]; }
  double purity() const {
    double s = 0;
    for (double x : p_) s += x * x;
    return s;
  }
  double entropy() const { return shannon_entropy(p_); }

 private:
  std::vector<double> p_;
};

/// Unnormalized in-place Walsh-Hadamard transform: v_i <- sum_k (-1)^{i.k} v_k.
inline void walsh_hadamard(std::span<double> v) {
  const std::size_t n = v.size();
  if (!std::has_single_bit(n)) throw InvalidArgument("Walsh transform length must be 2^n");
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j], b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

/// p_i = 2^-n sum_k (-1)^{i.k} m_k.
inline RawPopulations walsh_populations(std::span<const double> m) {
  if (m.empty() || std::abs(m[0] - 1.0) > 1e-12) {
    throw InvalidArgument("expectation vector must start with m_0 = 1");
  }
  RawPopulations p(m.begin(), m.end());
  walsh_hadamard(p);
  const double scale = 1.0 / double(p.size());
  for (double& x : p) x *= scale;
  return p;
}

/// m_k = sum_i (-1)^{i.k} p_i, the inverse of walsh_populations.
inline std::vector<double> expectations_from_populations(std::span<const double> p) {
  std::vector<double> m(p.begin(), p.end());
  walsh_hadamard(m);
  return m;
}

/// 2^-n sum_k <S_k> with quadrature error 2^-n sqrt(sum sigma_k^2).
inline Estimate raw_fidelity(const MeasurementRecord& record) {
  const auto m = record.full_expectations();
  double var = 0;
  for (const auto& [k, e] : record.entries()) var += e.sigma * e.sigma;
  return {walsh_populations(m)[0], std::sqrt(var) / double(m.size())};
}

/// sum_i p_i^2 = 2^-n sum_k m_k^2 (Parseval).
inline double raw_purity(std::span<const double> m) {
  if (m.empty() || std::abs(m[0] - 1.0) > 1e-12) {
    throw InvalidArgument("expectation vector must start with m_0 = 1");
  }
  double s = 0;
  for (double x : m) s += x * x;
  return s / double(m.size());
}

/// Euclidean projection onto the probability simplex (sort-based).
inline std::vector<double> project_to_simplex(std::span<const double> v) {
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0, theta = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumsum += u[j];
    const double t = (cumsum - 1.0) / double(j + 1);
    if (u[j] - t > 0) theta = t;
  }
  std::vector<double> x(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) x[i] = std::max(v[i] - theta, 0.0);
  return x;
}

struct MlFitOptions {
  double kkt_tolerance = 1e-9;
  std::size_t max_iterations = 1'000'000;
  std::optional<std::vector<double>> start;  // defaults to uniform
};

struct MlFit {
  GraphDiagonalState state;
  double objective = 0.0;
  double kkt_residual = 0.0;
  std::size_t iterations = 0;
};

/// Weighted least-squares objective for graph-diagonal fitting.
///
/// Entries with sigma = 0 fall back to sqrt((1 - v^2) / shots), floored at
/// 1/shots. Index 0 is implied by normalization and skipped.
class WeightedObjective {
 public:
  explicit WeightedObjective(const MeasurementRecord& record)
      : n_(record.num_qubits()), target_(record.group_size(), 0.0),
        weight_(record.group_size(), 0.0) {
    for (const auto& [k, e] : record.entries()) {
      if (k == 0) continue;
      double sigma = e.sigma;
      if (sigma <= 0.0 && e.shots) {
        const double shots = double(std::max<std::uint64_t>(*e.shots, 1));
        sigma = std::max(std::sqrt(std::max(0.0, 1.0 - e.value * e.value) / shots), 1.0 / shots);
      }
      if (!(sigma > 0.0)) {
        throw InvalidArgument("entry " + index_to_bits(k, n_) +
                              " needs a positive sigma or a shot count");
      }
      target_[k] = e.value;
      weight_[k] = 1.0 / (sigma * sigma);
      max_weight_ = std::max(max_weight_, weight_[k]);
    }
  }

  std::size_t dim() const { return target_.size(); }
  double max_weight() const { return max_weight_; }
  /// Lipschitz constant of the gradient: 2 * 2^n * max_k w_k.
  double lipschitz() const { return 2.0 * double(dim()) * max_weight_; }

  double value(std::span<const double> p) const {
    const auto m = expectations_from_populations(p);
    double f = 0;
    for (std::size_t k = 1; k < m.size(); ++k) {
      if (weight_[k] > 0) f += weight_[k] * (m[k] - target_[k]) * (m[k] - target_[k]);
    }
    return f;
  }

  std::vector<double> gradient(std::span<const double> p) const {
    auto r = expectations_from_populations(p);
    r[0] = 0.0;
    for (std::size_t k = 1; k < r.size(); ++k) r[k] = 2.0 * weight_[k] * (r[k] - target_[k]);
    walsh_hadamard(r);
    return r;
  }

  /// || p - proj(p - grad/L) ||_inf
  double kkt_residual(std::span<const double> p) const {
    const auto g = gradient(p);
    const double l = lipschitz();
    std::vector<double> step(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) step[i] = p[i] - g[i] / l;
    const auto proj = project_to_simplex(step);
    double r = 0;
    for (std::size_t i = 0; i < p.size(); ++i) r = std::max(r, std::abs(p[i] - proj[i]));
    return r;
  }

 private:
  std::size_t n_;
  std::vector<double> target_;
  std::vector<double> weight_;
  double max_weight_ = 0.0;
};

/// Maximum-likelihood (Gaussian) graph-diagonal state over the simplex.
///
/// Accelerated projected gradient with fixed step 1/L and adaptive restart;
/// stops once the projected-gradient residual is below the tolerance.
inline MlFit ml_fit(const MeasurementRecord& record, const MlFitOptions& options = {}) {
  if (record.empty()) throw InvalidArgument("measurement record is empty");
  const WeightedObjective obj(record);
  const std::size_t d = obj.dim();
  std::vector<double> p = options.start ? project_to_simplex(*options.start)
                                        : std::vector<double>(d, 1.0 / double(d));
  if (p.size() != d) throw InvalidArgument("start point has wrong dimension");
  if (obj.max_weight() == 0.0) {
    return {GraphDiagonalState(p), 0.0, 0.0, 0};
  }
  const double l = obj.lipschitz();
  std::vector<double> y = p, step(d);
  double t = 1.0;
  double f = obj.value(p);
  bool restarted = false;
  MlFit fit;
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    const auto g = obj.gradient(y);
    for (std::size_t i = 0; i < d; ++i) step[i] = y[i] - g[i] / l;
    auto next = project_to_simplex(step);
    const double f_next = obj.value(next);
    // Restart momentum when the objective goes up; a plain projected step
    // from p itself is always accepted.
    if (f_next > f && !restarted) {
      y = p;
      t = 1.0;
      restarted = true;
      continue;
    }
    restarted = false;
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double beta = (t - 1.0) / t_next;
    for (std::size_t i = 0; i < d; ++i) y[i] = next[i] + beta * (next[i] - p[i]);
    p = std::move(next);
    f = f_next;
    t = t_next;
    fit.iterations = it;
    if (it % 16 == 0 || it < 16) {
      if (obj.kkt_residual(p) <= options.kkt_tolerance) break;
    }
  }
  fit.kkt_residual = obj.kkt_residual(p);
  fit.objective = obj.value(p);
  fit.state = GraphDiagonalState(std::move(p));
  if (fit.kkt_residual > options.kkt_tolerance) {
    throw ConvergenceError("ml_fit did not reach the KKT tolerance");
  }
  return fit;
}

}  // namespace graphent
