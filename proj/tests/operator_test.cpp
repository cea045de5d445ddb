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


#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "graphent/eig.hpp"
#include "graphent/frame.hpp"
#include "graphent/graph.hpp"
#include "graphent/linalg.hpp"
#include "graphent/operator.hpp"
#include "graphent/stabilizer.hpp"
#include "oracles.hpp"

namespace graphent {
namespace {

double expectation(const HermitianOperator& op, const StateVector& v) {
  complex s = 0;
  for (std::size_t i = 0; i < v.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j) s += std::conj(v[i]) * op(i, j) * v[j];
  return s.real();
}

HermitianOperator bell() {
  const double r = 1 / std::sqrt(2.0);
  return StateVector({r, 0, 0, r}).projector();
}

TEST(PauliToMatrix, SmallExamples) {
  const auto z = pauli_to_matrix(PauliString::parse("Z"));
  EXPECT_EQ(z(0, 0), complex(1));
  EXPECT_EQ(z(1, 1), complex(-1));
  const auto zz = pauli_to_matrix(PauliString::parse("-ZZ"));
  const double want[4] = {-1, 1, 1, -1};
  for (int i = 0; i < 4; ++i) EXPECT_EQ(zz(i, i), complex(want[i]));
  const auto xz = pauli_to_matrix(PauliString::parse("XZ")).matrix();
  EXPECT_LT((xz * xz - ComplexMatrix::identity(4)).max_abs(), 1e-15);
}

TEST(PauliToMatrix, MatchesKroneckerOracleForEveryThreeQubitString) {
  const std::string letters = "IXYZ";
  for (int code = 0; code < 64; ++code) {
    std::string s;
    for (int q = 0; q < 3; ++q) s += letters[(code >> (2 * q)) & 3];
    for (const std::string& t : {s, "-" + s}) {
      const auto m = pauli_to_matrix(PauliString::parse(t)).matrix();
      EXPECT_LT(oracle::max_diff(oracle::from_matrix(m), oracle::pauli(t)), 1e-15) << t;
      const double tr = m.trace().real();
      EXPECT_NEAR(tr, s == "III" ? (t[0] == '-' ? -8 : 8) : 0, 1e-15);
    }
  }
}

TEST(PauliToMatrix, DimensionGuard) {
  EXPECT_THROW(pauli_to_matrix(PauliString(13)), InvalidArgument);
}

TEST(HermitianOperator, RejectsNonHermitianInput) {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(HermitianOperator{m}, InvalidArgument);
  EXPECT_THROW(HermitianOperator(ComplexMatrix(3, 3)), InvalidArgument);
}

TEST(GraphState, FourPathMatchesBranchExpansion) {
  // 1/2 (|+0 0+> + |+0 1-> + |-1 0+> + |-1 1->)
  const double h = 1 / std::sqrt(2.0);
  const oracle::Dense plus = {{h}, {h}}, minus = {{h}, {-h}}, zero = {{1}, {0}}, one = {{0}, {1}};
  auto ket = [](std::vector<oracle::Dense> f) {
    oracle::Dense r = {{1}};
    for (auto& x : f) r = oracle::kron(r, x);
    return r;
  };
  const std::vector<oracle::Dense> terms = {ket({plus, zero, zero, plus}), ket({plus, zero, one, minus}),
                                            ket({minus, one, zero, plus}), ket({minus, one, one, minus})};
  const auto v = graph_state_vector(Graph::path(4));
  for (std::size_t i = 0; i < 16; ++i) {
    complex want = 0;
    const double signs[] = {1, 1, 1, -1};
    for (std::size_t t = 0; t < terms.size(); ++t) want += 0.5 * signs[t] * terms[t][i][0];
    EXPECT_NEAR(std::abs(v[i] - want), 0, 1e-12) << i;
  }
}

TEST(GraphState, SingleVertexIsPlus) {
  const auto v = graph_state_vector(Graph(1, {}));
  EXPECT_NEAR(v[0].real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(v[1].real(), 1 / std::sqrt(2.0), 1e-15);
}

TEST(GraphState, FramedStatesAreStabilizedByEveryGroupElement) {
  struct Case {
    Graph g;
    LocalFrame f;
  };
  std::vector<Case> cases = {{Graph::path(4), frames::hyperentangled_c4()},
                             {frames::hyperentangled_lc6_graph(), frames::hyperentangled_lc6()},
                             {Graph::star(5), LocalFrame::identity(5)},
                             {Graph::cycle(6), LocalFrame::identity(6)},
                             {Graph::path(3), LocalFrame::identity(3)}};
  for (const auto& c : cases) {
    const auto v = graph_state_vector(c.g, c.f);
    const auto group = framed_group(c.g, c.f);
    for (const auto& s : group.elements()) {
      EXPECT_NEAR(expectation(pauli_to_matrix(s), v), 1.0, 1e-10) << s.str();
    }
  }
}

TEST(GraphState, BasisVectorsCarryTheirSignPattern) {
  const Graph g = Graph::path(4);
  const auto f = frames::hyperentangled_c4();
  const auto group = framed_group(g, f);
  for (std::uint64_t i = 0; i < 16; ++i) {
    const auto v = graph_basis_vector(g, f, i);
    for (std::size_t a = 0; a < 4; ++a) {
      const double want = ((i >> a) & 1u) ? -1.0 : 1.0;
      EXPECT_NEAR(expectation(pauli_to_matrix(group[std::uint64_t{1} << a]), v), want, 1e-10);
    }
  }
}

TEST(GraphState, FidelityWithItselfIsOne) {
  const auto v = graph_state_vector(Graph::path(4), frames::hyperentangled_c4());
  EXPECT_NEAR(fidelity_pure(v.projector(), v), 1.0, 1e-12);
}

TEST(GraphDiagonalOperator, HasTheRequestedSpectrumAndPopulations) {
  std::mt19937_64 rng(3);
  const auto p = oracle::random_simplex(8, rng);
  const Graph g = Graph::path(3);
  const auto f = LocalFrame::identity(3);
  const auto rho = graph_diagonal_operator(g, f, p);
  for (std::uint64_t i = 0; i < 8; ++i) {
    EXPECT_NEAR(fidelity_pure(rho, graph_basis_vector(g, f, i)), p[i], 1e-12);
  }
  EXPECT_NEAR(rho.trace(), 1.0, 1e-12);
}

TEST(PartialTranspose, BellProjectorSpectrum) {
  const auto pt = partial_transpose(bell(), 0b10);
  const auto ev = eigenvalues_hermitian(pt.matrix());
  const double want[4] = {-0.5, 0.5, 0.5, 0.5};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(ev[i], want[i], 1e-12);
}

TEST(PartialTranspose, EmptySubsetIsIdentityAndTwiceRestores) {
  std::mt19937_64 rng(5);
  const auto a = HermitianOperator(oracle::to_matrix(oracle::random_hermitian(8, rng)));
  EXPECT_EQ((partial_transpose(a, 0).matrix() - a.matrix()).max_abs(), 0.0);
  for (std::uint64_t s = 0; s < 8; ++s) {
    const auto once = partial_transpose(a, s);
    EXPECT_LT((partial_transpose(once, s).matrix() - a.matrix()).max_abs(), 1e-15);
    EXPECT_NEAR(once.trace(), a.trace(), 1e-12);
    std::vector<bool> on(3);
    for (int q = 0; q < 3; ++q) on[q] = (s >> q) & 1u;
    EXPECT_LT(oracle::max_diff(oracle::from_matrix(once.matrix()),
                               oracle::partial_transpose(oracle::from_matrix(a.matrix()), 3, on)),
              1e-15);
  }
}

TEST(PartialTranspose, PreservesSpectrumOfProductStates) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    // random product of single-qubit density matrices
    oracle::Dense r = {{1}};
    for (int q = 0; q < 3; ++q) {
      auto h = oracle::random_hermitian(2, rng);
      auto rho = oracle::mul(h, h);  // PSD
      const auto tr = rho[0][0] + rho[1][1];
      for (auto& row : rho)
        for (auto& v : row) v /= tr;
      r = oracle::kron(r, rho);
    }
    const HermitianOperator op(oracle::to_matrix(r), 1e-12);
    const auto ev = eigenvalues_hermitian(op.matrix());
    for (std::uint64_t s = 1; s < 8; ++s) {
      const auto evt = eigenvalues_hermitian(partial_transpose(op, s).matrix());
      for (int i = 0; i < 8; ++i) EXPECT_NEAR(ev[i], evt[i], 1e-10);
    }
  }
}

TEST(Eigen, DiagonalAndPauliX) {
  ComplexMatrix d(3, 3);
  d(0, 0) = 2.0;
  d(1, 1) = -1.0;
  d(2, 2) = 0.5;
  const auto ev = eigenvalues_hermitian(d);
  EXPECT_EQ(ev, (std::vector<double>{-1.0, 0.5, 2.0}));
  const auto x = eigenvalues_hermitian(pauli_to_matrix(PauliString::parse("X")).matrix());
  EXPECT_NEAR(x[0], -1, 1e-15);
  EXPECT_NEAR(x[1], 1, 1e-15);
}

TEST(Eigen, MatchesCharacteristicPolynomialRoots) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 4; ++trial) {
    const auto h = oracle::random_hermitian(8, rng);
    const auto roots = oracle::charpoly_eigenvalues(h);
    ASSERT_EQ(roots.size(), 8u);
    const auto ev = eigenvalues_hermitian(oracle::to_matrix(h));
    for (int i = 0; i < 8; ++i) EXPECT_NEAR(ev[i], roots[i], 1e-8);
  }
}

TEST(Eigen, ReconstructsAndIsOrthonormal) {
  std::mt19937_64 rng(23);
  for (std::size_t d : {2u, 5u, 16u, 32u}) {
    const auto a = oracle::to_matrix(oracle::random_hermitian(d, rng));
    const auto e = eig_hermitian(a);
    ComplexMatrix lam(d, d);
    for (std::size_t i = 0; i < d; ++i) lam(i, i) = e.values[i];
    const auto rec = e.vectors * lam * e.vectors.adjoint();
    EXPECT_LE((rec - a).max_abs(), 1e-9 * a.max_abs());
    EXPECT_LE((e.vectors.adjoint() * e.vectors - ComplexMatrix::identity(d)).max_abs(), 1e-10);
  }
  // real symmetric path
  RealMatrix r(6, 6);
  std::normal_distribution<double> g;
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) r(i, j) = r(j, i) = g(rng);
  const auto er = eig_hermitian(r);
  RealMatrix lam(6, 6);
  for (int i = 0; i < 6; ++i) lam(i, i) = er.values[i];
  EXPECT_LE((er.vectors * lam * er.vectors.adjoint() - r).max_abs(), 1e-9 * r.max_abs());
}

TEST(Eigen, RejectsNonHermitian) {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(eig_hermitian(m), InvalidArgument);
}

TEST(Scalars, PurityEntropyFidelity) {
  const auto v = graph_state_vector(Graph::path(3));
  EXPECT_NEAR(purity(v.projector()), 1.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(v.projector()), 0.0, 1e-9);
  const auto mm = HermitianOperator::maximally_mixed(4);
  EXPECT_NEAR(purity(mm), 1.0 / 16, 1e-15);
  EXPECT_NEAR(von_neumann_entropy(mm), 4.0, 1e-12);
  ComplexMatrix d(2, 2);
  d(0, 0) = 0.9;
  d(1, 1) = 0.1;
  const double h = -(0.9 * std::log2(0.9) + 0.1 * std::log2(0.1));
  EXPECT_NEAR(von_neumann_entropy(HermitianOperator(d)), h, 1e-12);
  EXPECT_NEAR(h, 0.469, 1e-3);
}

TEST(Scalars, PurityAgreesWithEigenvalueFormula) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 5; ++t) {
    auto h = oracle::random_hermitian(8, rng);
    auto rho = oracle::mul(h, h);
    oracle::cd tr = 0;
    for (int i = 0; i < 8; ++i) tr += rho[i][i];
    for (auto& row : rho)
      for (auto& v : row) v /= tr;
    const HermitianOperator op(oracle::to_matrix(rho), 1e-12);
    double s = 0;
    for (double e : eigenvalues_hermitian(op.matrix())) s += e * e;
    EXPECT_NEAR(purity(op), s, 1e-10);
  }
}

TEST(Scalars, EntropyRejectsNegativeSpectrum) {
  ComplexMatrix d(2, 2);
  d(0, 0) = 1.1;
  d(1, 1) = -0.1;
  EXPECT_THROW(von_neumann_entropy(HermitianOperator(d)), InvalidArgument);
}

TEST(Scalars, TraceInnerIsSymmetric) {
  std::mt19937_64 rng(31);
  const HermitianOperator a(oracle::to_matrix(oracle::random_hermitian(4, rng)));
  const HermitianOperator b(oracle::to_matrix(oracle::random_hermitian(4, rng)));
  EXPECT_NEAR(trace_inner(a, b), trace_inner(b, a), 1e-12);
}

}  // namespace
}  // namespace graphent
