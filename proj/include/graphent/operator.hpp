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

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "graphent/eig.hpp"
#include "graphent/error.hpp"
#include "graphent/frame.hpp"
#include "graphent/graph.hpp"
#include "graphent/linalg.hpp"
#include "graphent/pauli.hpp"

namespace graphent {

// Largest register for which dense 2^n x 2^n operators are built.
inline constexpr std::size_t kMaxDenseQubits = 12;

/// Matrix-index bit that carries qubit q. Qubit 0 is the leftmost tensor
/// factor, hence the most significant bit of the computational index.
inline std::uint64_t qubit_bit(std::size_t n, std::size_t q) {
  return std::uint64_t{1} << (n - 1 - q);
}

/// Converts a qubit mask (bit q = qubit q) to matrix-index bit positions.
inline std::uint64_t matrix_mask(std::size_t n, std::uint64_t qubits) {
  std::uint64_t m = 0;
  for (std::size_t q = 0; q < n; ++q) {
    if ((qubits >> q) & 1u) m |= qubit_bit(n, q);
  }
  return m;
}

inline std::size_t dimension_qubits(std::size_t d) {
  if (d == 0 || !std::has_single_bit(d)) {
    throw InvalidArgument("operator dimension must be a power of two");
  }
  return static_cast<std::size_t>(std::countr_zero(d));
}

/// Dense d x d complex Hermitian matrix, d = 2^n.
class HermitianOperator {
 public:
  HermitianOperator() = default;

  explicit HermitianOperator(ComplexMatrix m, double tol = 1e-12) : m_(std::move(m)) {
    if (!m_.is_square()) throw InvalidArgument("operator must be square");
    n_ = dimension_qubits(m_.rows());
    if (hermitian_deviation(m_) > tol * std::max(1.0, m_.max_abs())) {
      throw InvalidArgument("operator is not Hermitian");
    }
  }

  static HermitianOperator zero(std::size_t d) { return HermitianOperator(ComplexMatrix(d, d)); }
  static HermitianOperator identity(std::size_t d) {
    return HermitianOperator(ComplexMatrix::identity(d));
  }
  static HermitianOperator maximally_mixed(std::size_t n) {
    const std::size_t d = std::size_t{1} << n;
    return HermitianOperator(ComplexMatrix::identity(d) * complex(1.0 / double(d)));
  }

  std::size_t dim() const { return m_.rows(); }
  std::size_t num_qubits() const { return n_; }
  const ComplexMatrix& matrix() const { return m_; }
  complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

  friend HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator(a.m_ + b.m_);
  }
  friend HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator(a.m_ - b.m_);
  }
  friend HermitianOperator operator*(double s, const HermitianOperator& a) {
    return HermitianOperator(a.m_ * complex(s));
  }

  /// True when every imaginary part is below tol.
  bool is_real(double tol = 1e-14) const {
    for (const auto& v : m_.data()) {
      if (std::abs(v.imag()) > tol) return false;
    }
    return true;
  }

 private:
  ComplexMatrix m_;
  std::size_t n_ = 0;
};

/// Normalized pure state with 2^n amplitudes.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::vector<complex> amps) : amps_(std::move(amps)) {
    n_ = dimension_qubits(amps_.size());
    double norm2 = 0;
    for (const auto& a : amps_) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > 1e-12) throw InvalidArgument("state vector is not normalized");
  }

  std::size_t dim() const { return amps_.size(); }
  std::size_t num_qubits() const { return n_; }
  std::span<const complex> amplitudes() const { return amps_; }
  complex operator[](std::size_t i) const { return amps_[i]; }

  HermitianOperator projector() const {
    const std::size_t d = dim();
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) m(i, j) = amps_[i] * std::conj(amps_[j]);
    }
    return HermitianOperator(std::move(m));
  }

 private:
  std::vector<complex> amps_;
  std::size_t n_ = 0;
};

inline void check_dense_size(std::size_t n) {
  if (n == 0 || n > kMaxDenseQubits) {
    throw InvalidArgument("dense operators are limited to 1..12 qubits");
  }
}

/// Signed tensor product of single-qubit Pauli matrices.
inline HermitianOperator pauli_to_matrix(const PauliString& p) {
  const std::size_t n = p.num_qubits();
  check_dense_size(n);
  const std::size_t d = std::size_t{1} << n;
  const std::uint64_t xm = matrix_mask(n, p.x_mask());
  const std::uint64_t zm = matrix_mask(n, p.z_mask());
  // Y|b> = i (-1)^b |b^1>, so the column phase is i^{#Y} (-1)^{|j & Z|}.
  static const complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const complex base = kIPow[p.y_count(~std::uint64_t{0}) % 4] * double(p.sign());
  ComplexMatrix m(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const bool flip = std::popcount(j & zm) & 1;
    m(j ^ xm, j) = flip ? -base : base;
  }
  return HermitianOperator(std::move(m));
}

namespace detail {

// Single-qubit unitary U with U X U^dag = image(X), U Z U^dag = image(Z):
// U|0> is the +1 eigenvector of image(Z) and U|1> = image(X) U|0>.
inline std::array<complex, 4> frame_unitary(const LocalFrame& frame, std::size_t q) {
  auto apply = [](SignedPauli sp, std::array<complex, 2> v) {
    std::array<complex, 2> r{};
    switch (sp.pauli) {
      case Pauli::I: r = v; break;
      case Pauli::X: r = {v[1], v[0]}; break;
      case Pauli::Z: r = {v[0], -v[1]}; break;
      case Pauli::Y: r = {complex(0, -1) * v[1], complex(0, 1) * v[0]}; break;
    }
    if (sp.negative) r = {-r[0], -r[1]};
    return r;
  };
  const auto& m = frame.qubit(q);
  std::array<complex, 2> e0{1.0, 0.0};
  auto pz = apply(m.image_of_z, e0);
  std::array<complex, 2> u0{e0[0] + pz[0], e0[1] + pz[1]};
  if (std::norm(u0[0]) + std::norm(u0[1]) < 1e-12) {
    std::array<complex, 2> e1{0.0, 1.0};
    pz = apply(m.image_of_z, e1);
    u0 = {e1[0] + pz[0], e1[1] + pz[1]};
  }
  const double norm = std::sqrt(std::norm(u0[0]) + std::norm(u0[1]));
  u0 = {u0[0] / norm, u0[1] / norm};
  auto u1 = apply(m.image_of_x, u0);
  // Row-major 2x2 with columns U|0>, U|1>.
  return {u0[0], u1[0], u0[1], u1[1]};
}

inline void apply_frame_unitaries(const LocalFrame& frame, std::vector<complex>& amps) {
  const std::size_t n = frame.num_qubits();
  for (std::size_t q = 0; q < n; ++q) {
    const auto u = frame_unitary(frame, q);
    const std::uint64_t bit = qubit_bit(n, q);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      if (i & bit) continue;
      const complex a0 = amps[i], a1 = amps[i | bit];
      amps[i] = u[0] * a0 + u[1] * a1;
      amps[i | bit] = u[2] * a0 + u[3] * a1;
    }
  }
}

}  // namespace detail

/// Graph-basis vector |{i}>: the joint eigenvector of the frame-transformed
/// generators with eigenvalue (-1)^{i_a} on generator a. Index bit a of
/// `index` is i_{a+1}.
inline StateVector graph_basis_vector(const Graph& graph, const LocalFrame& frame,
                                      std::uint64_t index) {
  const std::size_t n = graph.num_vertices();
  check_dense_size(n);
  if (frame.num_qubits() != n) throw InvalidArgument("frame and graph differ in qubit count");
  const std::size_t d = std::size_t{1} << n;
  const double amp = 1.0 / std::sqrt(double(d));
  const std::uint64_t zflip = matrix_mask(n, index);
  std::vector<std::uint64_t> edge_masks;
  for (auto [a, b] : graph.edges()) edge_masks.push_back(qubit_bit(n, a) | qubit_bit(n, b));
  std::vector<complex> amps(d);
  for (std::size_t j = 0; j < d; ++j) {
    int parity = std::popcount(j & zflip);
    for (auto em : edge_masks) parity += (j & em) == em;
    amps[j] = (parity & 1) ? -amp : amp;
  }
  detail::apply_frame_unitaries(frame, amps);
  return StateVector(std::move(amps));
}

/// CZ on every edge applied to |+>^n, then the frame's local unitaries.
inline StateVector graph_state_vector(const Graph& graph, const LocalFrame& frame) {
  return graph_basis_vector(graph, frame, 0);
}

inline StateVector graph_state_vector(const Graph& graph) {
  return graph_state_vector(graph, LocalFrame::identity(graph.num_vertices()));
}

/// sum_i p_i |{i}><{i}| in the computational basis.
inline HermitianOperator graph_diagonal_operator(const Graph& graph, const LocalFrame& frame,
                                                 std::span<const double> p) {
  const std::size_t n = graph.num_vertices();
  check_dense_size(n);
  const std::size_t d = std::size_t{1} << n;
  if (p.size() != d) throw InvalidArgument("population vector has wrong length");
  ComplexMatrix m(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    if (p[k] == 0.0) continue;
    const StateVector v = graph_basis_vector(graph, frame, k);
    for (std::size_t i = 0; i < d; ++i) {
      const complex vi = p[k] * v[i];
      for (std::size_t j = 0; j < d; ++j) m(i, j) += vi * std::conj(v[j]);
    }
  }
  return HermitianOperator(std::move(m));
}

/// Transposes the tensor factors of the listed qubits (bit q = qubit q).
inline HermitianOperator partial_transpose(const HermitianOperator& op, std::uint64_t qubits) {
  const std::size_t n = op.num_qubits();
  const std::size_t d = op.dim();
  const std::uint64_t mm = matrix_mask(n, qubits & ((n >= 64) ? ~0ull : ((1ull << n) - 1)));
  if (mm == 0) return op;
  ComplexMatrix r(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t i2 = (i & ~mm) | (j & mm);
      const std::size_t j2 = (j & ~mm) | (i & mm);
      r(i, j) = op(i2, j2);
    }
  }
  return HermitianOperator(std::move(r));
}

inline EigenDecomposition<complex> eig_hermitian(const HermitianOperator& op) {
  return eig_hermitian(op.matrix());
}

/// tr(rho^2) computed entry-wise.
inline double purity(const HermitianOperator& op) {
  double s = 0;
  for (const auto& v : op.matrix().data()) s += std::norm(v);
  return s;
}

/// <v|rho|v>
inline double fidelity_pure(const HermitianOperator& op, const StateVector& v) {
  if (op.dim() != v.dim()) throw InvalidArgument("operator and state differ in dimension");
  complex acc = 0;
  for (std::size_t i = 0; i < op.dim(); ++i) {
    complex row = 0;
    for (std::size_t j = 0; j < op.dim(); ++j) row += op(i, j) * v[j];
    acc += std::conj(v[i]) * row;
  }
  return acc.real();
}

/// Re tr(AB)
inline double trace_inner(const HermitianOperator& a, const HermitianOperator& b) {
  return trace_of_product(a.matrix(), b.matrix()).real();
}

/// -sum x log2 x over a probability-like vector; 0 log 0 = 0.
inline double shannon_entropy(std::span<const double> p) {
  double h = 0;
  for (double x : p) {
    if (x > 0) h -= x * std::log2(x);
  }
  return h;
}

/// Base-2 von Neumann entropy; eigenvalues below -1e-9 are an error.
inline double von_neumann_entropy(const HermitianOperator& op) {
  auto ev = eigenvalues_hermitian(op.matrix());
  for (double& x : ev) {
    if (x < -1e-9) throw InvalidArgument("entropy input has a negative eigenvalue");
    x = std::max(x, 0.0);
  }
  return shannon_entropy(ev);
}

}  // namespace graphent
