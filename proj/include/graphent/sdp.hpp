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
#include <limits>
#include <span>
#include <vector>

#include "graphent/eig.hpp"
#include "graphent/error.hpp"
#include "graphent/linalg.hpp"

// Primal-dual interior point solver for block-diagonal linear matrix
// inequalities:
//
//   minimize    c^T y
//   subject to  S_j = C_j + sum_i y_i A_ij  >= 0     for every block j
//
// together with its conic dual
//
//   maximize    -sum_j <C_j, X_j>
//   subject to  sum_j <A_ij, X_j> = c_i,  X_j >= 0.
//
// Blocks are real symmetric (dense) or diagonal (linear inequalities).
// Search directions are HKM with a Mehrotra predictor-corrector; iterates may
// start infeasible.
namespace graphent::sdp {

enum class BlockKind { dense, diagonal };

/// One constraint block. Dense blocks use `constant` / `coefficients`,
/// diagonal blocks use `constant_diag` / `coefficients_diag`. A coefficient
/// left empty means A_ij = 0.
struct Block {
  BlockKind kind = BlockKind::dense;
  std::size_t size = 0;
  RealMatrix constant;
  std::vector<RealMatrix> coefficients;
  std::vector<double> constant_diag;
  std::vector<std::vector<double>> coefficients_diag;

  bool has(std::size_t i) const {
    return kind == BlockKind::dense ? !coefficients[i].empty()
                                    : !coefficients_diag[i].empty();
  }
};

struct Problem {
  std::vector<double> c;
  std::vector<Block> blocks;

  std::size_t num_variables() const { return c.size(); }
};

/// Value of a block-diagonal matrix variable.
struct BlockValue {
  BlockKind kind = BlockKind::dense;
  RealMatrix dense;
  std::vector<double> diag;

  double min_eigenvalue() const {
    if (kind == BlockKind::diagonal) {
      return diag.empty() ? 0.0 : *std::min_element(diag.begin(), diag.end());
    }
    return graphent::min_eigenvalue(dense);
  }
};

struct Options {
  double gap_tolerance = 1e-7;          // relative: |pobj - dobj| / (1 + |pobj|)
  double feasibility_tolerance = 1e-9;  // relative residual norms
  std::size_t max_iterations = 200;
  double step_fraction = 0.98;
};

struct Result {
  std::vector<double> y;
  std::vector<BlockValue> slack;  // S_j
  std::vector<BlockValue> dual;   // X_j
  double primal_objective = 0.0;  // c^T y
  double dual_objective = 0.0;    // -sum <C_j, X_j>
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  std::size_t iterations = 0;
  bool converged = false;

  double gap() const { return primal_objective - dual_objective; }
};

namespace detail {

inline double frob_inner(const RealMatrix& a, const RealMatrix& b) {
  double s = 0;
  auto ad = a.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < ad.size(); ++i) s += ad[i] * bd[i];
  return s;
}

inline void symmetrize(RealMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = v;
      m(j, i) = v;
    }
  }
}

// Largest alpha with X + alpha dX >= 0, given X positive definite.
inline double max_step(const BlockValue& x, const BlockValue& dx) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (x.kind == BlockKind::diagonal) {
    double a = kInf;
    for (std::size_t i = 0; i < x.diag.size(); ++i) {
      if (dx.diag[i] < 0) a = std::min(a, -x.diag[i] / dx.diag[i]);
    }
    return a;
  }
  RealMatrix l = x.dense;
  if (!cholesky_in_place(l)) return 0.0;
  const RealMatrix li = lower_inverse(l);
  RealMatrix w = li * dx.dense * li.adjoint();
  symmetrize(w);
  const double lo = graphent::min_eigenvalue(w);
  return lo < 0 ? -1.0 / lo : kInf;
}

}  // namespace detail

/// Checks block shapes; throws InvalidArgument on inconsistencies.
inline void validate(const Problem& problem) {
  const std::size_t m = problem.num_variables();
  if (m == 0) throw InvalidArgument("SDP has no variables");
  for (const auto& b : problem.blocks) {
    if (b.size == 0) throw InvalidArgument("SDP block of size zero");
    if (b.kind == BlockKind::dense) {
      if (b.constant.rows() != b.size || b.constant.cols() != b.size ||
          b.coefficients.size() != m) {
        throw InvalidArgument("dense SDP block has inconsistent shape");
      }
      for (const auto& a : b.coefficients) {
        if (!a.empty() && (a.rows() != b.size || a.cols() != b.size)) {
          throw InvalidArgument("dense SDP coefficient has wrong shape");
        }
      }
    } else {
      if (b.constant_diag.size() != b.size || b.coefficients_diag.size() != m) {
        throw InvalidArgument("diagonal SDP block has inconsistent shape");
      }
      for (const auto& a : b.coefficients_diag) {
        if (!a.empty() && a.size() != b.size) {
          throw InvalidArgument("diagonal SDP coefficient has wrong length");
        }
      }
    }
  }
}

inline Result solve(const Problem& problem, const Options& options = {}) {
  validate(problem);
  const std::size_t m = problem.num_variables();
  const std::size_t nb = problem.blocks.size();

  double scale = 1.0;
  double c_norm = 0.0, const_norm = 0.0;
  for (double v : problem.c) c_norm = std::max(c_norm, std::abs(v));
  for (const auto& b : problem.blocks) {
    if (b.kind == BlockKind::dense) {
      const_norm = std::max(const_norm, b.constant.max_abs());
    } else {
      for (double v : b.constant_diag) const_norm = std::max(const_norm, std::abs(v));
    }
  }
  scale = 10.0 * std::max({1.0, c_norm, const_norm});

  std::size_t total_dim = 0;
  std::vector<double> y(m, 0.0);
  std::vector<BlockValue> x(nb), s(nb);
  for (std::size_t j = 0; j < nb; ++j) {
    const auto& b = problem.blocks[j];
    total_dim += b.size;
    x[j].kind = s[j].kind = b.kind;
    if (b.kind == BlockKind::dense) {
      x[j].dense = RealMatrix::identity(b.size) * scale;
      s[j].dense = RealMatrix::identity(b.size) * scale;
    } else {
      x[j].diag.assign(b.size, scale);
      s[j].diag.assign(b.size, scale);
    }
  }

  auto inner_a = [&](const Block& b, std::size_t i, const BlockValue& v) {
    if (b.kind == BlockKind::dense) return detail::frob_inner(b.coefficients[i], v.dense);
    double acc = 0;
    const auto& a = b.coefficients_diag[i];
    for (std::size_t l = 0; l < b.size; ++l) acc += a[l] * v.diag[l];
    return acc;
  };
  auto inner_c = [&](const Block& b, const BlockValue& v) {
    if (b.kind == BlockKind::dense) return detail::frob_inner(b.constant, v.dense);
    double acc = 0;
    for (std::size_t l = 0; l < b.size; ++l) acc += b.constant_diag[l] * v.diag[l];
    return acc;
  };
  // sum_i v_i A_ij (+ C_j when with_constant)
  auto combine = [&](const Block& b, std::span<const double> v, bool with_constant) {
    BlockValue out;
    out.kind = b.kind;
    if (b.kind == BlockKind::dense) {
      out.dense = with_constant ? b.constant : RealMatrix(b.size, b.size);
      for (std::size_t i = 0; i < m; ++i) {
        if (v[i] != 0.0 && b.has(i)) out.dense.add_scaled(b.coefficients[i], v[i]);
      }
    } else {
      out.diag = with_constant ? b.constant_diag : std::vector<double>(b.size, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        if (v[i] == 0.0 || !b.has(i)) continue;
        const auto& a = b.coefficients_diag[i];
        for (std::size_t l = 0; l < b.size; ++l) out.diag[l] += v[i] * a[l];
      }
    }
    return out;
  };

  Result result;
  std::vector<double> r_p(m);
  std::vector<BlockValue> r_d(nb), s_inv(nb);
  RealMatrix schur(m, m);

  for (std::size_t iter = 0;; ++iter) {
    // Residuals and objectives.
    double pobj = 0, dobj = 0;
    for (std::size_t i = 0; i < m; ++i) pobj += problem.c[i] * y[i];
    for (std::size_t j = 0; j < nb; ++j) dobj -= inner_c(problem.blocks[j], x[j]);
    double rp_norm = 0;
    for (std::size_t i = 0; i < m; ++i) {
      double acc = problem.c[i];
      for (std::size_t j = 0; j < nb; ++j) {
        if (problem.blocks[j].has(i)) acc -= inner_a(problem.blocks[j], i, x[j]);
      }
      r_p[i] = acc;
      rp_norm = std::max(rp_norm, std::abs(acc));
    }
    double rd_norm = 0, xs = 0;
    for (std::size_t j = 0; j < nb; ++j) {
      const auto& b = problem.blocks[j];
      r_d[j] = combine(b, y, true);
      if (b.kind == BlockKind::dense) {
        r_d[j].dense -= s[j].dense;
        rd_norm = std::max(rd_norm, r_d[j].dense.max_abs());
        xs += detail::frob_inner(x[j].dense, s[j].dense);
      } else {
        for (std::size_t l = 0; l < b.size; ++l) {
          r_d[j].diag[l] -= s[j].diag[l];
          rd_norm = std::max(rd_norm, std::abs(r_d[j].diag[l]));
          xs += x[j].diag[l] * s[j].diag[l];
        }
      }
    }
    result.primal_objective = pobj;
    result.dual_objective = dobj;
    result.primal_infeasibility = rd_norm / (1.0 + const_norm);
    result.dual_infeasibility = rp_norm / (1.0 + c_norm);
    result.iterations = iter;
    const double rel_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
    const double rel_comp = xs / (1.0 + std::abs(pobj));
    if (rel_gap <= options.gap_tolerance && rel_comp <= options.gap_tolerance &&
        result.primal_infeasibility <= options.feasibility_tolerance &&
        result.dual_infeasibility <= options.feasibility_tolerance) {
      result.converged = true;
      break;
    }
    if (iter >= options.max_iterations) break;

    const double mu = xs / double(total_dim);

    // S^-1 per block and the Schur complement M_ik = sum_j tr(A_ij X A_kj S^-1).
    for (std::size_t i = 0; i < m; ++i) std::fill(schur.row(i).begin(), schur.row(i).end(), 0.0);
    for (std::size_t j = 0; j < nb; ++j) {
      const auto& b = problem.blocks[j];
      s_inv[j].kind = b.kind;
      if (b.kind == BlockKind::dense) {
        s_inv[j].dense = spd_inverse(s[j].dense);
        for (std::size_t i = 0; i < m; ++i) {
          if (!b.has(i)) continue;
          const RealMatrix g = x[j].dense * b.coefficients[i] * s_inv[j].dense;
          for (std::size_t k = 0; k < m; ++k) {
            if (b.has(k)) schur(k, i) += detail::frob_inner(b.coefficients[k], g);
          }
        }
      } else {
        s_inv[j].diag.resize(b.size);
        std::vector<double> ratio(b.size);
        for (std::size_t l = 0; l < b.size; ++l) {
          s_inv[j].diag[l] = 1.0 / s[j].diag[l];
          ratio[l] = x[j].diag[l] / s[j].diag[l];
        }
        for (std::size_t i = 0; i < m; ++i) {
          if (!b.has(i)) continue;
          const auto& ai = b.coefficients_diag[i];
          for (std::size_t k = 0; k <= i; ++k) {
            if (!b.has(k)) continue;
            const auto& ak = b.coefficients_diag[k];
            double acc = 0;
            for (std::size_t l = 0; l < b.size; ++l) acc += ai[l] * ratio[l] * ak[l];
            schur(i, k) += acc;
            if (k != i) schur(k, i) += acc;
          }
        }
      }
    }
    detail::symmetrize(schur);
    RealMatrix chol = schur;
    {
      double diag_max = 0;
      for (std::size_t i = 0; i < m; ++i) diag_max = std::max(diag_max, schur(i, i));
      double shift = 0;
      while (!cholesky_in_place(chol)) {
        shift = shift == 0 ? 1e-14 * std::max(diag_max, 1e-300) : shift * 10;
        if (shift > diag_max) break;
        chol = schur;
        for (std::size_t i = 0; i < m; ++i) chol(i, i) += shift;
      }
    }

    // Solves for (dy, dS, dX) with complementarity target mu_t and an optional
    // second-order term Q = dX_aff dS_aff.
    auto direction = [&](double mu_t, const std::vector<BlockValue>* q,
                         std::vector<double>& dy, std::vector<BlockValue>& ds,
                         std::vector<BlockValue>& dx) {
      std::vector<BlockValue> t(nb);
      for (std::size_t j = 0; j < nb; ++j) {
        const auto& b = problem.blocks[j];
        t[j].kind = b.kind;
        if (b.kind == BlockKind::dense) {
          RealMatrix lhs = RealMatrix::identity(b.size) * mu_t;
          lhs -= x[j].dense * r_d[j].dense;
          if (q) lhs -= (*q)[j].dense;
          t[j].dense = lhs * s_inv[j].dense;
        } else {
          t[j].diag.resize(b.size);
          for (std::size_t l = 0; l < b.size; ++l) {
            double v = mu_t - x[j].diag[l] * r_d[j].diag[l];
            if (q) v -= (*q)[j].diag[l];
            t[j].diag[l] = v * s_inv[j].diag[l];
          }
        }
      }
      dy.assign(m, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        double acc = -problem.c[i];
        for (std::size_t j = 0; j < nb; ++j) {
          if (problem.blocks[j].has(i)) acc += inner_a(problem.blocks[j], i, t[j]);
        }
        dy[i] = acc;
      }
      cholesky_solve(chol, dy);
      ds.resize(nb);
      dx.resize(nb);
      for (std::size_t j = 0; j < nb; ++j) {
        const auto& b = problem.blocks[j];
        ds[j] = combine(b, dy, false);
        dx[j].kind = b.kind;
        if (b.kind == BlockKind::dense) {
          ds[j].dense += r_d[j].dense;
          // dX = mu_t S^-1 - X - (X dS + Q) S^-1 = T - X (dS - R) S^-1 - X
          RealMatrix u = x[j].dense * (ds[j].dense - r_d[j].dense) * s_inv[j].dense;
          dx[j].dense = t[j].dense - u - x[j].dense;
          detail::symmetrize(dx[j].dense);
        } else {
          dx[j].diag.resize(b.size);
          for (std::size_t l = 0; l < b.size; ++l) {
            ds[j].diag[l] += r_d[j].diag[l];
            dx[j].diag[l] = t[j].diag[l] -
                            x[j].diag[l] * (ds[j].diag[l] - r_d[j].diag[l]) * s_inv[j].diag[l] -
                            x[j].diag[l];
          }
        }
      }
    };
    auto step_lengths = [&](const std::vector<BlockValue>& dx, const std::vector<BlockValue>& ds) {
      double ap = std::numeric_limits<double>::infinity(), ad = ap;
      for (std::size_t j = 0; j < nb; ++j) {
        ap = std::min(ap, detail::max_step(x[j], dx[j]));
        ad = std::min(ad, detail::max_step(s[j], ds[j]));
      }
      return std::pair{std::min(1.0, options.step_fraction * ap),
                       std::min(1.0, options.step_fraction * ad)};
    };

    // Predictor.
    std::vector<double> dy;
    std::vector<BlockValue> ds, dx;
    direction(0.0, nullptr, dy, ds, dx);
    auto [ap_aff, ad_aff] = step_lengths(dx, ds);
    double xs_aff = 0;
    for (std::size_t j = 0; j < nb; ++j) {
      if (problem.blocks[j].kind == BlockKind::dense) {
        RealMatrix xa = x[j].dense;
        xa.add_scaled(dx[j].dense, ap_aff);
        RealMatrix sa = s[j].dense;
        sa.add_scaled(ds[j].dense, ad_aff);
        xs_aff += detail::frob_inner(xa, sa);
      } else {
        for (std::size_t l = 0; l < x[j].diag.size(); ++l) {
          xs_aff += (x[j].diag[l] + ap_aff * dx[j].diag[l]) *
                    (s[j].diag[l] + ad_aff * ds[j].diag[l]);
        }
      }
    }
    const double sigma_c = std::clamp(std::pow(std::max(xs_aff, 0.0) / xs, 3.0), 0.0, 1.0);

    // Corrector with the second-order term.
    std::vector<BlockValue> q(nb);
    for (std::size_t j = 0; j < nb; ++j) {
      q[j].kind = problem.blocks[j].kind;
      if (q[j].kind == BlockKind::dense) {
        q[j].dense = dx[j].dense * ds[j].dense;
      } else {
        q[j].diag.resize(dx[j].diag.size());
        for (std::size_t l = 0; l < q[j].diag.size(); ++l) q[j].diag[l] = dx[j].diag[l] * ds[j].diag[l];
      }
    }
    direction(sigma_c * mu, &q, dy, ds, dx);
    auto [ap, ad] = step_lengths(dx, ds);

    for (std::size_t j = 0; j < nb; ++j) {
      if (x[j].kind == BlockKind::dense) {
        x[j].dense.add_scaled(dx[j].dense, ap);
        s[j].dense.add_scaled(ds[j].dense, ad);
        detail::symmetrize(x[j].dense);
        detail::symmetrize(s[j].dense);
      } else {
        for (std::size_t l = 0; l < x[j].diag.size(); ++l) {
          x[j].diag[l] += ap * dx[j].diag[l];
          s[j].diag[l] += ad * ds[j].diag[l];
        }
      }
    }
    for (std::size_t i = 0; i < m; ++i) y[i] += ad * dy[i];
  }

  result.y = std::move(y);
  result.dual = std::move(x);
  result.slack = std::move(s);
  return result;
}

}  // namespace graphent::sdp
