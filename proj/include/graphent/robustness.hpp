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
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "graphent/error.hpp"
#include "graphent/frame.hpp"
#include "graphent/graph.hpp"
#include "graphent/operator.hpp"
#include "graphent/reconstruction.hpp"
#include "graphent/sdp.hpp"
#include "graphent/stabilizer.hpp"

namespace graphent {

/// A bipartition is stored as the qubit mask of one side (bit q = qubit q).
using Partition = std::uint64_t;

inline std::uint64_t full_mask(std::size_t n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

/// Representative of {S, complement(S)} that excludes the last qubit.
inline Partition canonical_partition(Partition s, std::size_t n) {
  s &= full_mask(n);
  if (s == 0 || s == full_mask(n)) {
    throw InvalidArgument("a partition must be a nonempty proper subset of the qubits");
  }
  return ((s >> (n - 1)) & 1u) ? (~s & full_mask(n)) : s;
}

/// Sorted, deduplicated up to complementation.
inline std::vector<Partition> canonical_partitions(const std::vector<Partition>& parts,
                                                   std::size_t n) {
  std::set<Partition> seen;
  for (Partition p : parts) seen.insert(canonical_partition(p, n));
  return {seen.begin(), seen.end()};
}

/// All 2^(n-1) - 1 bipartitions of n qubits.
inline std::vector<Partition> all_bipartitions(std::size_t n) {
  if (n < 2) throw InvalidArgument("bipartitions need at least two qubits");
  if (n > 20) throw InvalidArgument("too many qubits to enumerate bipartitions");
  std::vector<Partition> out;
  for (Partition s = 1; s < (Partition{1} << (n - 1)); ++s) out.push_back(s);
  return out;
}

/// "all", or partitions separated by ';' each given as comma-separated
/// 1-based qubits: "1;1,2;1,3".
inline std::vector<Partition> parse_partitions(const std::string& text, std::size_t n) {
  if (text == "all") return all_bipartitions(n);
  std::vector<Partition> parts;
  std::stringstream outer(text);
  std::string group;
  while (std::getline(outer, group, ';')) {
    Partition s = 0;
    std::stringstream inner(group);
    std::string tok;
    while (std::getline(inner, tok, ',')) {
      std::size_t pos = 0;
      unsigned long q = 0;
      try {
        q = std::stoul(tok, &pos);
      } catch (const std::exception&) {
        throw InvalidArgument("bad qubit '" + tok + "' in partition list");
      }
      if (pos != tok.size() || q < 1 || q > n) {
        throw InvalidArgument("bad qubit '" + tok + "' in partition list");
      }
      s |= Partition{1} << (q - 1);
    }
    parts.push_back(s);
  }
  if (parts.empty()) throw InvalidArgument("empty partition list");
  return canonical_partitions(parts, n);
}

inline std::string partition_to_string(Partition s, std::size_t n) {
  std::string out;
  for (std::size_t q = 0; q < n; ++q) {
    if ((s >> q) & 1u) {
      if (!out.empty()) out += ',';
      out += std::to_string(q + 1);
    }
  }
  return out;
}

/// Minimum eigenvalue of the partial transpose; negative means NPT across the cut.
inline double ppt_min_eig(const HermitianOperator& rho, Partition partition) {
  return min_eigenvalue(partial_transpose(rho, partition).matrix());
}

struct RobustnessProblem {
  HermitianOperator rho;
  std::vector<Partition> partitions;
};

struct PartitionCheck {
  Partition partition = 0;
  double min_eigenvalue = 0.0;  // of (rho + sigma)^Gamma
};

struct SdpSolution {
  double value = 0.0;  // tr sigma
  HermitianOperator sigma;
  std::optional<std::vector<double>> graph_diagonal_sigma;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double duality_gap = 0.0;
  std::vector<sdp::BlockValue> dual_certificate;
  double sigma_min_eigenvalue = 0.0;
  double certificate_min_eigenvalue = 0.0;
  std::vector<PartitionCheck> checks;
  std::size_t iterations = 0;
  std::string method;
};

/// Thrown when the solver stops without a certified solution; carries the
/// best iterate.
class SdpNotConverged : public ConvergenceError {
 public:
  SdpNotConverged(const std::string& message, SdpSolution best)
      : ConvergenceError(message), best_(std::move(best)) {}
  const SdpSolution& best() const { return best_; }

 private:
  SdpSolution best_;
};

struct RobustnessOptions {
  sdp::Options solver;
  double psd_floor = -1e-8;
  double gap_factor = 1e-6;  // accepted when gap <= gap_factor * (1 + |value|)
};

namespace detail {

// [[Re, -Im], [Im, Re]]: PSD iff the Hermitian input is.
inline RealMatrix real_embedding(const ComplexMatrix& m) {
  const std::size_t d = m.rows();
  RealMatrix r(2 * d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      r(i, j) = m(i, j).real();
      r(i + d, j + d) = m(i, j).real();
      r(i, j + d) = -m(i, j).imag();
      r(i + d, j) = m(i, j).imag();
    }
  }
  return r;
}

inline RealMatrix real_part_matrix(const ComplexMatrix& m) {
  RealMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).real();
  }
  return r;
}

// Independent feasibility checks on a candidate sigma.
inline void certify(SdpSolution& sol, const HermitianOperator& rho,
                    const std::vector<Partition>& partitions) {
  sol.sigma_min_eigenvalue = min_eigenvalue(sol.sigma.matrix());
  const HermitianOperator total = rho + sol.sigma;
  sol.checks.clear();
  for (Partition p : partitions) sol.checks.push_back({p, ppt_min_eig(total, p)});
  double cert = 0;
  for (const auto& blk : sol.dual_certificate) cert = std::min(cert, blk.min_eigenvalue());
  sol.certificate_min_eigenvalue = cert;
}

inline bool accepted(const SdpSolution& sol, const RobustnessOptions& opt) {
  if (sol.sigma_min_eigenvalue < opt.psd_floor) return false;
  for (const auto& c : sol.checks) {
    if (c.min_eigenvalue < opt.psd_floor) return false;
  }
  if (sol.certificate_min_eigenvalue < opt.psd_floor) return false;
  if (sol.duality_gap > opt.gap_factor * (1.0 + std::abs(sol.value))) return false;
  if (sol.dual_value > sol.primal_value + opt.gap_factor * (1.0 + std::abs(sol.value))) {
    return false;
  }
  return true;
}

inline void check_state(const HermitianOperator& rho) {
  if (std::abs(rho.trace() - 1.0) > 1e-9) throw InvalidArgument("rho must have unit trace");
  if (min_eigenvalue(rho.matrix()) < -1e-9) throw InvalidArgument("rho is not positive semidefinite");
}

inline SdpSolution zero_solution(const HermitianOperator& rho,
                                 const std::vector<Partition>& partitions,
                                 const RobustnessOptions& opt, std::string method) {
  SdpSolution sol;
  sol.sigma = HermitianOperator::zero(rho.dim());
  sol.method = std::move(method);
  certify(sol, rho, partitions);
  return sol;
}

}  // namespace detail

/// min tr(sigma) s.t. sigma >= 0 and (rho + sigma)^Gamma >= 0 for every
/// listed bipartition, solved densely.
///
/// sigma is expanded in the Pauli basis. For real rho the optimum can be taken
/// real (averaging sigma with its conjugate keeps feasibility and trace), so
/// only Pauli strings with an even number of Y factors are used and blocks stay
/// d x d; otherwise blocks are the 2d x 2d real embeddings.
inline SdpSolution ppt_robustness(const RobustnessProblem& problem,
                                  const RobustnessOptions& options = {}) {
  const HermitianOperator& rho = problem.rho;
  const std::size_t n = rho.num_qubits();
  if (rho.dim() > 64) throw InvalidArgument("dense PPT robustness is limited to d <= 64");
  detail::check_state(rho);
  if (problem.partitions.empty()) throw InvalidArgument("no partitions given");
  const auto parts = canonical_partitions(problem.partitions, n);

  bool all_ppt = true;
  for (Partition p : parts) all_ppt = all_ppt && ppt_min_eig(rho, p) >= -1e-12;
  if (all_ppt) return detail::zero_solution(rho, parts, options, "dense");

  const bool real = rho.is_real();
  const std::size_t d = rho.dim();
  std::vector<PauliString> basis;
  for (std::uint64_t x = 0; x < d; ++x) {
    for (std::uint64_t z = 0; z < d; ++z) {
      PauliString p(n, x, z);
      if (real && (p.y_count(~0ull) % 2) == 1) continue;
      basis.push_back(p);
    }
  }
  const std::size_t m = basis.size();
  auto embed = [&](const ComplexMatrix& a) {
    return real ? detail::real_part_matrix(a) : detail::real_embedding(a);
  };
  const std::size_t bsize = real ? d : 2 * d;

  sdp::Problem prob;
  prob.c.assign(m, 0.0);
  std::vector<RealMatrix> base(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i].is_identity()) prob.c[i] = double(d);
    base[i] = embed(pauli_to_matrix(basis[i]).matrix());
  }
  sdp::Block positivity;
  positivity.kind = sdp::BlockKind::dense;
  positivity.size = bsize;
  positivity.constant = RealMatrix(bsize, bsize);
  positivity.coefficients = base;
  prob.blocks.push_back(std::move(positivity));
  for (Partition part : parts) {
    sdp::Block blk;
    blk.kind = sdp::BlockKind::dense;
    blk.size = bsize;
    blk.constant = embed(partial_transpose(rho, part).matrix());
    blk.coefficients.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const bool flip = basis[i].y_count(part) % 2 == 1;
      blk.coefficients[i] = flip ? base[i] * -1.0 : base[i];
    }
    prob.blocks.push_back(std::move(blk));
  }

  const sdp::Result res = sdp::solve(prob, options.solver);
  SdpSolution sol;
  sol.method = real ? "dense-real" : "dense-complex";
  ComplexMatrix sigma(d, d);
  for (std::size_t i = 0; i < m; ++i) {
    if (res.y[i] != 0.0) sigma.add_scaled(pauli_to_matrix(basis[i]).matrix(), complex(res.y[i]));
  }
  sol.sigma = HermitianOperator(std::move(sigma), 1e-10);
  sol.value = sol.sigma.trace();
  sol.primal_value = res.primal_objective;
  sol.dual_value = res.dual_objective;
  sol.duality_gap = res.gap();
  sol.dual_certificate = res.dual;
  sol.iterations = res.iterations;
  detail::certify(sol, rho, parts);
  if (!res.converged || !detail::accepted(sol, options)) {
    throw SdpNotConverged("PPT robustness SDP did not converge to a certified solution", sol);
  }
  return sol;
}

/// Linear map p -> eigenvalues of (sum_i p_i |i><i|)^Gamma in the graph basis.
///
/// With rho = 2^-n sum_k m_k S_k and S_k^Gamma = (-1)^{#Y of S_k in Gamma} S_k,
/// the partial transpose stays diagonal in the graph basis; its eigenvalues are
/// 2^-n W diag(eps) W p with W the Walsh-Hadamard matrix.
inline RealMatrix graph_diagonal_pt_map(const StabilizerGroup& group, Partition partition) {
  const std::size_t d = group.size();
  RealMatrix out(d, d);
  std::vector<double> col(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    col[j] = 1.0;
    walsh_hadamard(col);  // m_k of the basis state j
    for (std::size_t k = 0; k < d; ++k) {
      if (group[k].y_count(partition) % 2 == 1) col[k] = -col[k];
    }
    walsh_hadamard(col);
    for (std::size_t i = 0; i < d; ++i) out(i, j) = col[i] / double(d);
  }
  return out;
}

/// PPT robustness of a graph-diagonal state with sigma restricted to be
/// graph-diagonal. Twirling over the stabilizer group shows this restriction
/// loses nothing; the program becomes a linear one over 2^n variables.
inline SdpSolution symmetry_reduced_robustness(const GraphDiagonalState& state, const Graph& graph,
                                               const LocalFrame& frame,
                                               const std::vector<Partition>& partitions,
                                               const RobustnessOptions& options = {}) {
  const std::size_t n = graph.num_vertices();
  if (state.size() != (std::size_t{1} << n)) {
    throw InvalidArgument("state and graph differ in qubit count");
  }
  if (partitions.empty()) throw InvalidArgument("no partitions given");
  const auto parts = canonical_partitions(partitions, n);
  const StabilizerGroup group = framed_group(graph, frame);
  const std::size_t d = group.size();
  const std::span<const double> p = state.p();

  std::vector<RealMatrix> maps;
  std::vector<std::vector<double>> constants;
  bool all_ppt = true;
  for (Partition part : parts) {
    maps.push_back(graph_diagonal_pt_map(group, part));
    std::vector<double> lam(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) lam[i] += maps.back()(i, j) * p[j];
      all_ppt = all_ppt && lam[i] >= -1e-12;
    }
    constants.push_back(std::move(lam));
  }

  const bool dense_check = n <= 6;
  const HermitianOperator rho = dense_check ? graph_diagonal_operator(graph, frame, p)
                                            : HermitianOperator();
  SdpSolution sol;
  sol.method = "graph-diagonal";
  std::vector<double> s(d, 0.0);
  if (!all_ppt) {
    sdp::Problem prob;
    prob.c.assign(d, 1.0);
    sdp::Block pos;
    pos.kind = sdp::BlockKind::diagonal;
    pos.size = d;
    pos.constant_diag.assign(d, 0.0);
    pos.coefficients_diag.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
      pos.coefficients_diag[k].assign(d, 0.0);
      pos.coefficients_diag[k][k] = 1.0;
    }
    prob.blocks.push_back(std::move(pos));
    for (std::size_t b = 0; b < parts.size(); ++b) {
      sdp::Block blk;
      blk.kind = sdp::BlockKind::diagonal;
      blk.size = d;
      blk.constant_diag = constants[b];
      blk.coefficients_diag.resize(d);
      for (std::size_t k = 0; k < d; ++k) {
        blk.coefficients_diag[k].resize(d);
        for (std::size_t i = 0; i < d; ++i) blk.coefficients_diag[k][i] = maps[b](i, k);
      }
      prob.blocks.push_back(std::move(blk));
    }
    const sdp::Result res = sdp::solve(prob, options.solver);
    s = res.y;
    sol.primal_value = res.primal_objective;
    sol.dual_value = res.dual_objective;
    sol.duality_gap = res.gap();
    sol.dual_certificate = res.dual;
    sol.iterations = res.iterations;
    if (!res.converged) {
      sol.value = res.primal_objective;
      sol.graph_diagonal_sigma = s;
      throw SdpNotConverged("reduced PPT robustness did not converge", sol);
    }
  }
  double value = 0;
  for (double v : s) value += v;
  sol.value = value;
  sol.graph_diagonal_sigma = s;

  if (dense_check) {
    // Clip round-off negatives before building the dense operator; the check
    // below still sees any real infeasibility through the PT eigenvalues.
    std::vector<double> s_clip(s);
    double neg = 0;
    for (double& v : s_clip) {
      neg = std::min(neg, v);
      v = std::max(v, 0.0);
    }
    sol.sigma = graph_diagonal_operator(graph, frame, s_clip);
    detail::certify(sol, rho, parts);
    sol.sigma_min_eigenvalue = std::min(sol.sigma_min_eigenvalue, neg);
  } else {
    // Beyond six qubits the same eigenvalues come from the Walsh formula.
    sol.sigma_min_eigenvalue = *std::min_element(s.begin(), s.end());
    sol.checks.clear();
    for (std::size_t b = 0; b < parts.size(); ++b) {
      double lo = INFINITY;
      for (std::size_t i = 0; i < d; ++i) {
        double v = constants[b][i];
        for (std::size_t k = 0; k < d; ++k) v += maps[b](i, k) * s[k];
        lo = std::min(lo, v);
      }
      sol.checks.push_back({parts[b], lo});
    }
    double cert = 0;
    for (const auto& blk : sol.dual_certificate) cert = std::min(cert, blk.min_eigenvalue());
    sol.certificate_min_eigenvalue = cert;
  }
  if (!detail::accepted(sol, options)) {
    throw SdpNotConverged("reduced PPT robustness failed its feasibility checks", sol);
  }
  return sol;
}

}  // namespace graphent
