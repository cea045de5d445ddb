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

#include "graphent/frame.hpp"
#include "graphent/graph.hpp"
#include "graphent/operator.hpp"
#include "graphent/reconstruction.hpp"
#include "oracles.hpp"

namespace graphent {
namespace {

// Slow character sums, independent of the butterfly transform.
std::vector<double> char_sum(const std::vector<double>& v, double scale) {
  const std::size_t d = v.size();
  std::vector<double> out(d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) out[i] += ((std::popcount(i & k) & 1) ? -1.0 : 1.0) * v[k];
  for (auto& x : out) x *= scale;
  return out;
}

MeasurementRecord full_record(const Graph& g, const std::vector<double>& m, double sigma) {
  MeasurementRecord r(g, LocalFrame::identity(g.num_vertices()));
  for (GroupIndex k = 1; k < m.size(); ++k) r.set(k, {m[k], sigma, std::nullopt});
  return r;
}

TEST(Walsh, ExamplesFromDefinition) {
  EXPECT_EQ(walsh_populations(std::vector<double>(8, 1.0)),
            (std::vector<double>{1, 0, 0, 0, 0, 0, 0, 0}));
  std::vector<double> m(16, 0.0);
  m[0] = 1;
  for (double p : walsh_populations(m)) EXPECT_DOUBLE_EQ(p, 1.0 / 16);
  const auto p = walsh_populations(std::vector<double>{1, 0.5, 0.5, 0.25});
  const double want[4] = {0.5625, 0.1875, 0.1875, 0.0625};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(p[i], want[i], 1e-15);
}

TEST(Walsh, RequiresUnitIdentityEntry) {
  EXPECT_THROW(walsh_populations(std::vector<double>{0.9, 0.5}), InvalidArgument);
  EXPECT_THROW(walsh_populations(std::vector<double>{1, 0.5, 0.5}), InvalidArgument);
}

TEST(Walsh, ForwardExamples) {
  std::vector<double> delta(8, 0.0);
  delta[0] = 1;
  EXPECT_EQ(expectations_from_populations(delta), std::vector<double>(8, 1.0));
  const auto m = expectations_from_populations(std::vector<double>(4, 0.25));
  EXPECT_DOUBLE_EQ(m[0], 1.0);
  for (int k = 1; k < 4; ++k) EXPECT_DOUBLE_EQ(m[k], 0.0);
}

TEST(Walsh, RoundTripExhaustiveOnBasisUpToFourQubits) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::size_t d = std::size_t{1} << n;
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<double> e(d, 0.0);
      e[j] = 1;
      const auto m = expectations_from_populations(e);
      EXPECT_EQ(m, char_sum(e, 1.0));
      const auto back = walsh_populations(m);
      for (std::size_t i = 0; i < d; ++i) EXPECT_NEAR(back[i], e[i], 1e-12);
    }
  }
}

TEST(Walsh, RoundTripRandomUpToSixQubits) {
  std::mt19937_64 rng(41);
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto p = oracle::random_simplex(std::size_t{1} << n, rng);
    const auto m = expectations_from_populations(p);
    const auto slow = char_sum(p, 1.0);
    const auto back = walsh_populations(m);
    for (std::size_t i = 0; i < p.size(); ++i) {
      EXPECT_NEAR(m[i], slow[i], 1e-12);
      EXPECT_NEAR(back[i], p[i], 1e-12);
    }
    double s = 0;
    for (double x : back) s += x;
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(RawFidelity, Examples) {
  MeasurementRecord r1(Graph(1, {}), LocalFrame::identity(1));
  r1.set(1, {0.8, 0.01, std::nullopt});
  EXPECT_NEAR(raw_fidelity(r1).value, 0.9, 1e-15);
  EXPECT_NEAR(raw_fidelity(r1).sigma, 0.005, 1e-15);
  const auto ideal = full_record(Graph::path(4), std::vector<double>(16, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(raw_fidelity(ideal).value, 1.0);
}

TEST(RawFidelity, EqualsFirstPopulationAndNeedsFullGroup) {
  std::mt19937_64 rng(43);
  const auto m = expectations_from_populations(oracle::random_simplex(16, rng));
  const auto rec = full_record(Graph::path(4), m, 0.01);
  EXPECT_EQ(raw_fidelity(rec).value, walsh_populations(m)[0]);
  MeasurementRecord partial(Graph::path(4), LocalFrame::identity(4));
  partial.set(1, {0.9, 0.01, std::nullopt});
  EXPECT_THROW(raw_fidelity(partial), InvalidArgument);
  EXPECT_THROW(partial.full_expectations(), InvalidArgument);
}

TEST(RawPurity, ExamplesAndParseval) {
  EXPECT_DOUBLE_EQ(raw_purity(std::vector<double>(8, 1.0)), 1.0);
  std::vector<double> mixed(16, 0.0);
  mixed[0] = 1;
  EXPECT_DOUBLE_EQ(raw_purity(mixed), 1.0 / 16);
  EXPECT_NEAR(raw_purity(std::vector<double>{1, 0.5, 0.5, 0.25}), (1 + 0.25 + 0.25 + 0.0625) / 4, 1e-15);

  std::mt19937_64 rng(47);
  const auto p = oracle::random_simplex(8, rng);
  const auto rho = graph_diagonal_operator(Graph::path(3), LocalFrame::identity(3), p);
  EXPECT_NEAR(raw_purity(expectations_from_populations(p)), purity(rho), 1e-12);
}

TEST(Record, ValidatesEntries) {
  MeasurementRecord r(Graph::path(2), LocalFrame::identity(2));
  EXPECT_THROW(r.set(4, {0.5, 0.1, std::nullopt}), InvalidArgument);
  EXPECT_THROW(r.set(1, {1.5, 0.1, std::nullopt}), InvalidArgument);
  EXPECT_THROW(r.set(0, {0.9, 0.0, std::nullopt}), InvalidArgument);
  EXPECT_NO_THROW(r.set(0, {1.0, 0.0, std::nullopt}));
  EXPECT_TRUE(r.contains(0));
  EXPECT_FALSE(r.has_generators());
  r.set(1, {0.9, 0.01, std::nullopt});
  r.set(2, {0.9, 0.01, std::nullopt});
  EXPECT_TRUE(r.has_generators());
  EXPECT_FALSE(r.has_full_group());
  EXPECT_THROW(MeasurementRecord(Graph::path(3), LocalFrame::identity(2)), InvalidArgument);
}

TEST(MlFit, RecoversConsistentPhysicalData) {
  std::mt19937_64 rng(53);
  for (std::size_t n : {2u, 3u, 4u}) {
    const auto p = oracle::random_simplex(std::size_t{1} << n, rng);
    const auto rec = full_record(Graph::path(n), expectations_from_populations(p), 0.01);
    const auto fit = ml_fit(rec);
    EXPECT_LE(fit.kkt_residual, 1e-9);
    EXPECT_LE(fit.objective, 1e-10);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(fit.state[i], p[i], 1e-6);
  }
}

TEST(MlFit, RecoversBoundaryStateWithZeros) {
  std::vector<double> p(16, 0.0);
  p[0] = 0.7;
  p[5] = 0.3;
  const auto rec = full_record(Graph::path(4), expectations_from_populations(p), 0.003);
  const auto fit = ml_fit(rec);
  for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(fit.state[i], p[i], 1e-6);
}

TEST(MlFit, NegativeRawPopulationIsRepaired) {
  // Ideal data with one stabilizer pushed past its physical value.
  std::vector<double> m(16, 0.97);
  m[0] = 1;
  m[15] = 0.6;
  const auto raw = walsh_populations(m);
  ASSERT_LT(*std::min_element(raw.begin(), raw.end()), 0.0);
  const auto rec = full_record(Graph::path(4), m, 0.01);
  const auto fit = ml_fit(rec);
  for (double x : fit.state.p()) EXPECT_GE(x, 0.0);
  std::vector<double> clipped(raw);
  double s = 0;
  for (double& x : clipped) s += (x = std::max(x, 0.0));
  for (double& x : clipped) x /= s;
  EXPECT_LE(fit.objective, WeightedObjective(rec).value(clipped));
}

TEST(MlFit, ObjectiveIsStartIndependent) {
  std::mt19937_64 rng(59);
  std::vector<double> m(16);
  std::uniform_real_distribution<double> u(0.2, 0.95);
  m[0] = 1;
  for (std::size_t k = 1; k < 16; ++k) m[k] = u(rng);
  const auto rec = full_record(Graph::path(4), m, 0.02);
  const double f0 = ml_fit(rec).objective;
  for (int s = 0; s < 5; ++s) {
    MlFitOptions opt;
    opt.start = oracle::random_simplex(16, rng);
    EXPECT_NEAR(ml_fit(rec, opt).objective, f0, 1e-8);
  }
}

TEST(MlFit, IsDeterministic) {
  std::vector<double> m(8, 0.8);
  m[0] = 1;
  const auto rec = full_record(Graph::path(3), m, 0.05);
  const auto a = ml_fit(rec), b = ml_fit(rec);
  EXPECT_EQ(std::vector<double>(a.state.p().begin(), a.state.p().end()),
            std::vector<double>(b.state.p().begin(), b.state.p().end()));
}

TEST(MlFit, GeneratorOnlyRecordGivesFeasibleState) {
  MeasurementRecord rec(Graph::path(4), frames::hyperentangled_c4());
  const double a[4] = {0.994, 0.849, 0.937, 0.911};
  for (std::size_t i = 0; i < 4; ++i) rec.set(GroupIndex{1} << i, {a[i], 0.003, std::nullopt});
  const auto fit = ml_fit(rec);
  const auto m = expectations_from_populations(fit.state.p());
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(m[std::size_t{1} << i], a[i], 1e-6);
}

TEST(MlFit, ShotCountStandsInForMissingSigma) {
  MeasurementRecord rec(Graph::path(2), LocalFrame::identity(2));
  rec.set(1, {0.9, 0.0, 1000});
  rec.set(2, {1.0, 0.0, 1000});
  rec.set(3, {0.9, 0.0, 1000});
  EXPECT_NO_THROW(ml_fit(rec));
  MeasurementRecord bad(Graph::path(2), LocalFrame::identity(2));
  bad.set(1, {0.9, 0.0, std::nullopt});
  EXPECT_THROW(ml_fit(bad), InvalidArgument);
}

TEST(MlFit, EmptyRecordIsAnError) {
  EXPECT_THROW(ml_fit(MeasurementRecord(Graph::path(2), LocalFrame::identity(2))), InvalidArgument);
}

TEST(Simplex, ProjectionIsFeasibleAndIdempotent) {
  std::mt19937_64 rng(61);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> v(9);
    for (auto& x : v) x = g(rng);
    const auto p = project_to_simplex(v);
    double s = 0;
    for (double x : p) {
      EXPECT_GE(x, 0.0);
      s += x;
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
    const auto q = project_to_simplex(p);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(p[i], q[i], 1e-15);
  }
}

}  // namespace
}  // namespace graphent
