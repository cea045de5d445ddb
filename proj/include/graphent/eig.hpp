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
#include <numeric>
#include <vector>

#include "graphent/error.hpp"
#include "graphent/linalg.hpp"

namespace graphent {

template <typename T>
struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix<T> vectors;           // column j pairs with values[j]
};

namespace detail {

template <typename T>
double off_diagonal_norm2(const Matrix<T>& a) {
  double s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return s;
}

}  // namespace detail

/// Cyclic Jacobi eigensolver for real symmetric or complex Hermitian input.
///
/// Each rotation first removes the phase of a_pq with a diagonal unitary and
/// then applies the classical real rotation on the (p, q) plane. Sweeps run
/// until the off-diagonal mass is below (1e-15 ||A||_F)^2.
template <typename T>
EigenDecomposition<T> eig_hermitian(Matrix<T> a, bool want_vectors = true,
                                    double hermitian_tol = 1e-12) {
  if (!a.is_square()) throw InvalidArgument("eig_hermitian needs a square matrix");
  const double scale = std::max(1.0, a.max_abs());
  if (hermitian_deviation(a) > hermitian_tol * scale) {
    throw InvalidArgument("eig_hermitian input is not Hermitian");
  }
  const std::size_t n = a.rows();
  Matrix<T> v = want_vectors ? Matrix<T>::identity(n) : Matrix<T>();
  // Symmetrize exactly so rounding noise does not leak into the rotations.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = T(real_part(a(i, i)));
    for (std::size_t j = i + 1; j < n; ++j) {
      T m = (a(i, j) + conj_if(a(j, i))) * 0.5;
      a(i, j) = m;
      a(j, i) = conj_if(m);
    }
  }
  double frob2 = 0;
  for (const auto& x : a.data()) frob2 += std::norm(x);
  const double target = 1e-30 * frob2;

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (detail::off_diagonal_norm2(a) <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        if constexpr (is_complex<T>::value) {
          // Rotate the phase of column/row q so a_pq becomes real positive.
          const T phase = std::conj(a(p, q)) / mag;
          for (std::size_t k = 0; k < n; ++k) {
            a(k, q) *= phase;
            a(q, k) *= std::conj(phase);
          }
          a(q, q) = T(real_part(a(q, q)));
          if (want_vectors) {
            for (std::size_t k = 0; k < n; ++k) v(k, q) *= phase;
          }
        }
        const double apq = real_part(a(p, q));
        const double tau = (real_part(a(q, q)) - real_part(a(p, p))) / (2.0 * apq);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const T akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const T apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = T{};
        a(q, p) = T{};
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const T vkp = v(k, p), vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }
  if (sweep == kMaxSweeps) throw ConvergenceError("Jacobi eigensolver did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return real_part(a(i, i)) < real_part(a(j, j));
  });
  EigenDecomposition<T> out;
  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.values[j] = real_part(a(order[j], order[j]));
  if (want_vectors) {
    out.vectors = Matrix<T>(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
    }
  }
  return out;
}

template <typename T>
std::vector<double> eigenvalues_hermitian(const Matrix<T>& a) {
  return eig_hermitian(a, false).values;
}

template <typename T>
double min_eigenvalue(const Matrix<T>& a) {
  auto ev = eigenvalues_hermitian(a);
  return ev.empty() ? 0.0 : ev.front();
}

}  // namespace graphent
