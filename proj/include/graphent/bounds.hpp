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
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "graphent/error.hpp"
#include "graphent/linalg.hpp"
#include "graphent/reconstruction.hpp"
#include "graphent/stabilizer.hpp"

namespace graphent {

/// Generator expectations a_i = tr(rho g_i) with their uncertainties.
struct GeneratorData {
  std::vector<double> a;
  std::vector<double> sigma;

  std::size_t size() const { return a.size(); }
};

/// Reads the n generator rows (indices 2^a) out of a record.
inline GeneratorData generator_data(const MeasurementRecord& record) {
  GeneratorData g;
  for (std::size_t a = 0; a < record.num_qubits(); ++a) {
    auto it = record.entries().find(GroupIndex{1} << a);
    if (it == record.entries().end()) {
      throw InvalidArgument("record lacks generator " + std::to_string(a + 1));
    }
    g.a.push_back(it->second.value);
    g.sigma.push_back(it->second.sigma);
  }
  return g;
}

inline void check_expectations(std::span<const double> a) {
  if (a.empty()) throw InvalidArgument("no generator expectations given");
  for (double x : a) {
    if (!(x >= -1.0 && x <= 1.0)) {
      throw InvalidArgument("generator expectation outside [-1, 1]");
    }
  }
}

/// max{0, (sum |a_i| - n + 2) / 2}
inline double fidelity_min(std::span<const double> a) {
  double s = 0;
  for (double x : a) s += std::abs(x);
  return std::max(0.0, (s - double(a.size()) + 2.0) / 2.0);
}

/// max{0, 2^|B| F_min - 1}
inline double robustness_min(std::span<const double> a, std::size_t blue_size) {
  double s = 0;
  for (double x : a) s += std::abs(x);
  return std::max(0.0, std::ldexp((s - double(a.size()) + 2.0) / 2.0, int(blue_size)) - 1.0);
}

/// Binary entropy in bits with 0 log 0 = 0.
inline double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

/// max{0, |B| - sum_i H((1 + |a_i|) / 2)}
inline double rel_entropy_min(std::span<const double> a, std::size_t blue_size) {
  double h = 0;
  for (double x : a) h += binary_entropy((1.0 + std::abs(x)) / 2.0);
  return std::max(0.0, double(blue_size) - h);
}

inline double log_robustness(double r) {
  if (!(r >= 0.0)) throw InvalidArgument("robustness must be non-negative");
  return std::log2(1.0 + r);
}

/// max{0, |B| - S(p)} with S the Shannon entropy of the populations.
inline double er_lower_from_state(const GraphDiagonalState& p, std::size_t blue_size) {
  return std::max(0.0, double(blue_size) - p.entropy());
}

struct PurityMin {
  double value = 0.0;
  std::vector<double> p;       // minimizing graph-diagonal populations
  std::vector<double> dual;    // multipliers: normalization, then one per generator
  double kkt_residual = 0.0;   // max |A p - b|
  std::size_t iterations = 0;
};

/// Smallest tr(rho^2) over all states with tr(rho g_i) = a_i.
///
/// The optimum is graph-diagonal, so this is the QP
///   min sum_j p_j^2  s.t.  sum_j p_j = 1,  sum_j p_j (-1)^{j_i} = a_i,  p >= 0.
/// It is solved through its (n+1)-dimensional dual: with multipliers lambda,
/// p(lambda) = max(0, A^T lambda) / 2 and the concave dual is maximized by a
/// semismooth Newton method with backtracking. Stationarity and
/// complementarity hold by construction, so the KKT residual is the primal
/// infeasibility max |A p - b|.
inline PurityMin purity_min(std::span<const double> a, double tol = 1e-9,
                            std::size_t max_iterations = 500) {
  check_expectations(a);
  const std::size_t n = a.size();
  if (n > kMaxGroupQubits) throw InvalidArgument("too many generators for purity_min");
  const std::size_t d = std::size_t{1} << n;
  const std::size_t m = n + 1;
  std::vector<double> b(m);
  b[0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) b[i + 1] = a[i];
  auto row = [](std::size_t i, std::size_t j) -> double {
    return i == 0 ? 1.0 : (((j >> (i - 1)) & 1u) ? -1.0 : 1.0);
  };

  std::vector<double> lambda(m, 0.0), p(d), z(d);
  lambda[0] = 2.0 / double(d);
  auto evaluate = [&](const std::vector<double>& lam, std::vector<double>& pp) {
    // Dual objective b.lam - |p|^2 where p = max(0, A^T lam)/2.
    double q = 0;
    for (std::size_t j = 0; j < d; ++j) {
      double s = lam[0];
      for (std::size_t i = 1; i < m; ++i) s += row(i, j) * lam[i];
      pp[j] = std::max(0.0, s) / 2.0;
      q += pp[j] * pp[j];
    }
    double bl = 0;
    for (std::size_t i = 0; i < m; ++i) bl += b[i] * lam[i];
    return bl - q;
  };
  auto residual = [&](const std::vector<double>& pp, std::vector<double>& r) {
    double worst = 0;
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < d; ++j) s += row(i, j) * pp[j];
      r[i] = b[i] - s;
      worst = std::max(worst, std::abs(r[i]));
    }
    return worst;
  };

  PurityMin out;
  std::vector<double> r(m), step(m), trial(m), p_trial(d);
  double dual_value = evaluate(lambda, p);
  double worst = residual(p, r);
  std::size_t it = 0;
  for (; it < max_iterations && worst > tol * 1e-2; ++it) {
    // Generalized Hessian of the dual: -(1/2) A_J A_J^T on the active set J.
    RealMatrix h(m, m);
    for (std::size_t j = 0; j < d; ++j) {
      if (p[j] <= 0.0) continue;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k <= i; ++k) h(i, k) += 0.5 * row(i, j) * row(k, j);
      }
    }
    double diag_max = 0;
    for (std::size_t i = 0; i < m; ++i) diag_max = std::max(diag_max, h(i, i));
    const double reg = 1e-12 * std::max(1.0, diag_max);
    for (std::size_t i = 0; i < m; ++i) {
      h(i, i) += reg;
      for (std::size_t k = 0; k < i; ++k) h(k, i) = h(i, k);
    }
    RealMatrix l = h;
    double extra = reg;
    while (!cholesky_in_place(l)) {
      extra *= 10.0;
      l = h;
      for (std::size_t i = 0; i < m; ++i) l(i, i) += extra;
    }
    step = r;
    cholesky_solve(l, step);
    // Backtracking on the concave dual (ascent direction since H is PD).
    double slope = 0;
    for (std::size_t i = 0; i < m; ++i) slope += r[i] * step[i];
    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < m; ++i) trial[i] = lambda[i] + alpha * step[i];
      const double v = evaluate(trial, p_trial);
      if (v >= dual_value + 1e-4 * alpha * slope || alpha < 1e-12) {
        lambda = trial;
        p = p_trial;
        dual_value = v;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
    worst = residual(p, r);
  }
  out.iterations = it;
  out.kkt_residual = worst;
  out.dual = lambda;
  out.value = 0;
  for (double x : p) out.value += x * x;
  out.p = std::move(p);
  if (out.kkt_residual > tol) {
    throw ConvergenceError("purity_min did not reach the KKT tolerance");
  }
  return out;
}

inline double purity_min_value(std::span<const double> a) { return purity_min(a).value; }

/// Monte-Carlo spread of a bound under Gaussian noise on the inputs.
struct Propagated {
  double mean = 0.0;
  double std = 0.0;
};

/// Derives an independent 64-bit seed for (seed, stream).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Samples a'_i ~ Normal(a_i, sigma_i) clipped to [-1, 1] and returns the
/// mean and standard deviation of bound(a'). Trial t draws from its own
/// generator seeded with derive_seed(seed, t).
inline Propagated propagate_errors(const std::function<double(std::span<const double>)>& bound,
                                   std::span<const double> a, std::span<const double> sigma,
                                   std::size_t trials = 10000, std::uint64_t seed = 1) {
  if (trials < 1000) throw InvalidArgument("error propagation needs at least 1000 trials");
  if (a.size() != sigma.size()) throw InvalidArgument("a and sigma differ in length");
  std::vector<double> draw(a.size());
  double sum = 0, sum2 = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(derive_seed(seed, t));
    for (std::size_t i = 0; i < a.size(); ++i) {
      double x = a[i];
      if (sigma[i] > 0) x = std::normal_distribution<double>(a[i], sigma[i])(rng);
      draw[i] = std::clamp(x, -1.0, 1.0);
    }
    const double v = bound(draw);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / double(trials);
  const double var = std::max(0.0, sum2 / double(trials) - mean * mean) *
                     double(trials) / double(trials - 1);
  return {mean, std::sqrt(var)};
}

/// Worst-case figures of merit from generator data alone.
struct BoundReport {
  Estimate f_min;
  Estimate p_min;
  Estimate rg_min;
  Estimate lrg_min;
  Estimate er_min;
  std::size_t blue_size = 0;
  double p_min_kkt_residual = 0.0;
};

/// Evaluates every bound at the measured point; uncertainties are the
/// Monte-Carlo standard deviations.
inline BoundReport bound_report(const GeneratorData& data, std::size_t blue_size,
                                std::size_t trials = 10000, std::uint64_t seed = 1) {
  check_expectations(data.a);
  if (data.sigma.size() != data.a.size()) throw InvalidArgument("a and sigma differ in length");
  BoundReport r;
  r.blue_size = blue_size;
  const auto pm = purity_min(data.a);
  r.f_min.value = fidelity_min(data.a);
  r.p_min.value = pm.value;
  r.p_min_kkt_residual = pm.kkt_residual;
  r.rg_min.value = robustness_min(data.a, blue_size);
  r.lrg_min.value = log_robustness(r.rg_min.value);
  r.er_min.value = rel_entropy_min(data.a, blue_size);
  auto spread = [&](auto fn) {
    return propagate_errors(fn, data.a, data.sigma, trials, seed).std;
  };
  r.f_min.sigma = spread([](std::span<const double> x) { return fidelity_min(x); });
  r.p_min.sigma = spread([](std::span<const double> x) { return purity_min(x).value; });
  r.rg_min.sigma = spread([&](std::span<const double> x) { return robustness_min(x, blue_size); });
  r.lrg_min.sigma = spread(
      [&](std::span<const double> x) { return log_robustness(robustness_min(x, blue_size)); });
  r.er_min.sigma = spread([&](std::span<const double> x) { return rel_entropy_min(x, blue_size); });
  return r;
}

}  // namespace graphent
