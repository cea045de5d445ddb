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


// Reference computations used by the tests. Everything here is written the
// slow, obvious way and shares no code with the library beyond its types.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "graphent/linalg.hpp"

namespace oracle {

using cd = std::complex<double>;
using Dense = std::vector<std::vector<cd>>;

inline Dense zeros(std::size_t d) { return Dense(d, std::vector<cd>(d, 0.0)); }

inline Dense eye(std::size_t d) {
  Dense m = zeros(d);
  for (std::size_t i = 0; i < d; ++i) m[i][i] = 1.0;
  return m;
}

inline Dense single(char c) {
  const cd i(0, 1);
  switch (c) {
    case 'I': return {{1, 0}, {0, 1}};
    case 'X': return {{0, 1}, {1, 0}};
    case 'Y': return {{0, -i}, {i, 0}};
    case 'Z': return {{1, 0}, {0, -1}};
  }
  throw std::invalid_argument("bad Pauli letter");
}

inline Dense kron(const Dense& a, const Dense& b) {
  const std::size_t n = a.size(), m = b.size();
  Dense r = zeros(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) r[i * m + k][j * m + l] = a[i][j] * b[k][l];
  return r;
}

// "-XYZ": leftmost letter is the most significant tensor factor.
inline Dense pauli(const std::string& text) {
  std::string s = text;
  double sign = 1;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    sign = s[0] == '-' ? -1 : 1;
    s = s.substr(1);
  }
  Dense r = {{1}};
  for (char c : s) r = kron(r, single(c));
  for (auto& row : r)
    for (auto& v : row) v *= sign;
  return r;
}

inline Dense mul(const Dense& a, const Dense& b) {
  const std::size_t d = a.size();
  Dense r = zeros(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t j = 0; j < d; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline double max_diff(const Dense& a, const Dense& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

inline Dense from_matrix(const graphent::ComplexMatrix& m) {
  Dense r = zeros(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
  return r;
}

inline graphent::ComplexMatrix to_matrix(const Dense& a) {
  graphent::ComplexMatrix m(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = a[i][j];
  return m;
}

// Partial transpose written with explicit per-qubit digits; qubit 0 is the
// most significant digit.
inline Dense partial_transpose(const Dense& a, std::size_t n, const std::vector<bool>& on) {
  const std::size_t d = a.size();
  Dense r = zeros(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<int> di(n), dj(n);
      for (std::size_t q = 0; q < n; ++q) {
        di[q] = (i >> (n - 1 - q)) & 1;
        dj[q] = (j >> (n - 1 - q)) & 1;
        if (on[q]) std::swap(di[q], dj[q]);
      }
      std::size_t ii = 0, jj = 0;
      for (std::size_t q = 0; q < n; ++q) {
        ii = ii * 2 + di[q];
        jj = jj * 2 + dj[q];
      }
      r[i][j] = a[ii][jj];
    }
  }
  return r;
}

// Eigenvalues of a Hermitian matrix as roots of its characteristic
// polynomial (Faddeev-LeVerrier coefficients, bracketing plus bisection).
// Assumes well-separated eigenvalues.
inline std::vector<double> charpoly_eigenvalues(const Dense& a) {
  const std::size_t n = a.size();
  std::vector<cd> c(n + 1);
  c[n] = 1.0;
  Dense m = zeros(n);
  for (std::size_t k = 1; k <= n; ++k) {
    Dense am = mul(a, m);
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
    m = am;
    Dense t = mul(a, m);
    cd tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += t[i][i];
    c[n - k] = -tr / double(k);
  }
  auto poly = [&](double x) {
    double v = 0;
    for (std::size_t k = n + 1; k-- > 0;) v = v * x + c[k].real();
    return v;
  };
  double bound = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(a[i][j]);
    bound = std::max(bound, row);
  }
  bound += 1e-6;
  std::vector<double> roots;
  const int steps = 200000;
  double x0 = -bound, f0 = poly(x0);
  for (int s = 1; s <= steps; ++s) {
    double x1 = -bound + 2 * bound * s / steps, f1 = poly(x1);
    if (f0 == 0) roots.push_back(x0);
    if ((f0 < 0) != (f1 < 0) && f0 != 0 && f1 != 0) {
      double lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi), fm = poly(mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

inline Dense random_hermitian(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0, 1);
  Dense m = zeros(d);
  for (std::size_t i = 0; i < d; ++i) {
    m[i][i] = g(rng);
    for (std::size_t j = i + 1; j < d; ++j) {
      m[i][j] = cd(g(rng), g(rng));
      m[j][i] = std::conj(m[i][j]);
    }
  }
  return m;
}

inline std::vector<double> random_simplex(std::size_t d, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(d);
  double s = 0;
  for (auto& x : p) s += (x = e(rng));
  for (auto& x : p) x /= s;
  return p;
}

// Two-qubit worst-case purity. The feasible set is the segment
// p(t) = base + t (1, -1, -1, 1) intersected with p >= 0, and sum p^2 is a
// parabola in t, so the minimum is found in closed form.
inline double purity_min_two_qubits(double a1, double a2) {
  // bit a of index j is qubit a+1; sum_j p_j (-1)^{j_a} = a_{a+1}.
  // With u = (1 + a1)/2, v = (1 + a2)/2 a feasible point is the product.
  const double u = (1 + a1) / 2, v = (1 + a2) / 2;
  const double base[4] = {u * v, (1 - u) * v, u * (1 - v), (1 - u) * (1 - v)};
  const double dir[4] = {1, -1, -1, 1};
  double lo = -1e300, hi = 1e300;
  for (int j = 0; j < 4; ++j) {
    // base_j + t dir_j >= 0
    const double t = -base[j] / dir[j];
    if (dir[j] > 0) lo = std::max(lo, t);
    else hi = std::min(hi, t);
  }
  double t = 0;  // minimizer of sum (base + t dir)^2 is t = -sum(base*dir)/4
  double sd = 0;
  for (int j = 0; j < 4; ++j) sd += base[j] * dir[j];
  t = std::clamp(-sd / 4.0, lo, hi);
  double s = 0;
  for (int j = 0; j < 4; ++j) s += (base[j] + t * dir[j]) * (base[j] + t * dir[j]);
  return s;
}

}  // namespace oracle
