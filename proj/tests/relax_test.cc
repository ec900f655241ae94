// Copyright 2026 The Authors.
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

#include "bed/relax.h"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "bed/errors.h"
#include "oracle.h"
#include "test_util.h"

namespace bed {
namespace {

using testing::design;
using testing::vec;

void expect_feasible(const Vector& w, int k) {
  EXPECT_GE(w.minCoeff(), 0.0);
  EXPECT_LE(w.maxCoeff(), 1.0);
  EXPECT_NEAR(w.sum(), k, 1e-6);
}

TEST(ProjectCappedSimplex, Examples) {
  const Vector a = project_capped_simplex(vec({2, 2, 0, 0}), 2);
  EXPECT_TRUE(a.isApprox(vec({1, 1, 0, 0})));
  const Vector b = project_capped_simplex(vec({0.9, 0.1, 0}), 1);
  EXPECT_NEAR((b - vec({0.9, 0.1, 0})).cwiseAbs().maxCoeff(), 0.0, 1e-12);
  EXPECT_TRUE(project_capped_simplex(vec({5, -3}), 2).isApprox(vec({1, 1})));
  EXPECT_THROW(project_capped_simplex(vec({1, 2}), 3), std::invalid_argument);
}

TEST(ProjectCappedSimplexProperty, FeasibleIdempotentAndNearest) {
  std::mt19937_64 gen(61);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 12;
    const int k = 1 + t % (n - 1);
    const Vector v = 2.0 * oracle::random_matrix(gen, n, 1);
    const Vector w = project_capped_simplex(v, k);
    EXPECT_GE(w.minCoeff(), 0.0);
    EXPECT_LE(w.maxCoeff(), 1.0);
    EXPECT_NEAR(w.sum(), k, 1e-9);
    EXPECT_LE((project_capped_simplex(w, k) - w).cwiseAbs().maxCoeff(), 1e-9);
    // No random feasible point is closer to v.
    for (int r = 0; r < 20; ++r) {
      Vector z(n);
      for (int i = 0; i < n; ++i) z(i) = u(gen);
      z = project_capped_simplex(z, k);  // feasible
      EXPECT_LE((w - v).squaredNorm(), (z - v).squaredNorm() + 1e-9);
    }
  }
}

TEST(EntropicProjection, FeasibleAndProportional) {
  const Vector w = entropic_project_capped_simplex(vec({4, 1, 1, 2}), 2);
  expect_feasible(w, 2);
  EXPECT_DOUBLE_EQ(w(0), 1.0);
  EXPECT_NEAR(w(1) / w(3), 0.5, 1e-12);
  EXPECT_THROW(entropic_project_capped_simplex(vec({1, 0, 0}), 2), std::invalid_argument);
}

TEST(RelaxConfig, Validation) {
  RelaxConfig c;
  c.tol = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = RelaxConfig{};
  c.max_iters = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_EQ(parse_relax_method("pgd"), RelaxMethod::kProjectedGradient);
  EXPECT_THROW(parse_relax_method("newton"), std::invalid_argument);
}

TEST(Solve, FullSelectionIsForced) {
  std::mt19937_64 gen(62);
  const DesignMatrix x = design(oracle::random_matrix(gen, 5, 2));
  const Prior prior(SymMatrix::identity(2, 0.1));
  const RelaxSolution s = solve(x, prior, Criterion::a_optimal(), 5);
  EXPECT_TRUE(s.w.isApprox(Vector::Ones(5)));
  EXPECT_NEAR(s.objective, eval(Criterion::a_optimal(), covariance(x), prior), 1e-12);
}

TEST(Solve, SingularStartThrows) {
  const DesignMatrix x = design({{1, 0}, {2, 0}, {3, 0}});
  EXPECT_THROW(solve(x, Prior(SymMatrix::zero(2)), Criterion::a_optimal(), 2), SingularMatrix);
  EXPECT_THROW(solve(x, Prior(SymMatrix::identity(2)), Criterion::a_optimal(), 0),
               std::invalid_argument);
}

class SolveOracle : public ::testing::TestWithParam<RelaxMethod> {};

TEST_P(SolveOracle, BeatsRandomFeasiblePointsAndBruteForce) {
  std::mt19937_64 gen(63);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RelaxConfig cfg;
  cfg.method = GetParam();
  for (int t = 0; t < 5; ++t) {
    const Matrix xm = oracle::random_matrix(gen, 10, 2);
    const Matrix a = 0.1 * Matrix::Identity(2, 2);
    const DesignMatrix x = design(xm);
    const Prior prior{SymMatrix(a)};
    const int k = 4;
    const RelaxSolution s = solve(x, prior, Criterion::a_optimal(), k, cfg);
    expect_feasible(s.w, k);
    EXPECT_NEAR(s.objective, oracle::crit_a(oracle::weighted_gram(xm, s.w) + a), 1e-10);

    double best_random = std::numeric_limits<double>::infinity();
    for (int r = 0; r < 10000; ++r) {
      Vector z(10);
      for (int i = 0; i < 10; ++i) z(i) = u(gen);
      z = project_capped_simplex(z, k);
      best_random = std::min(best_random, oracle::crit_a(oracle::weighted_gram(xm, z) + a));
    }
    EXPECT_LE(s.objective, best_random + 1e-9);
    const double opt = oracle::brute_opt(xm, a, k, [](const Matrix& m) { return oracle::crit_a(m); });
    EXPECT_LE(s.objective, opt + 1e-4);
  }
}

INSTANTIATE_TEST_SUITE_P(Methods, SolveOracle,
                         ::testing::Values(RelaxMethod::kMirrorDescent,
                                           RelaxMethod::kProjectedGradient));

TEST(SolveProperty, BacktrackingHistoryIsNonincreasing) {
  std::mt19937_64 gen(64);
  for (RelaxMethod method : {RelaxMethod::kMirrorDescent, RelaxMethod::kProjectedGradient}) {
    for (int t = 0; t < 10; ++t) {
      RelaxConfig cfg;
      cfg.method = method;
      const DesignMatrix x = design(oracle::random_matrix(gen, 15, 3));
      const Prior prior(SymMatrix::identity(3, 0.05), vec({1, -1, 0.5}));
      for (CriterionKind kind : {CriterionKind::kA, CriterionKind::kC, CriterionKind::kD,
                                 CriterionKind::kV}) {
        const RelaxSolution s = solve(x, prior, Criterion::of_kind(kind, x, prior), 6, cfg);
        expect_feasible(s.w, 6);
        for (std::size_t i = 1; i < s.history.size(); ++i) {
          EXPECT_LE(s.history[i], s.history[i - 1] + 1e-12 * std::abs(s.history[i - 1]));
        }
      }
    }
  }
}

TEST(SolveProperty, LowerBoundsEverySubsetForAllCriteria) {
  std::mt19937_64 gen(65);
  for (int t = 0; t < 6; ++t) {
    const int n = 8 + t % 5;
    const Matrix xm = oracle::random_matrix(gen, n, 2);
    const Matrix a = 0.2 * Matrix::Identity(2, 2);
    const Vector c = vec({1.0, 0.3});
    const DesignMatrix x = design(xm);
    const Prior prior(SymMatrix(a), c);
    const int k = 3 + t % 3;
    const std::pair<CriterionKind, std::function<double(const Matrix&)>> cases[] = {
        {CriterionKind::kA, [](const Matrix& m) { return oracle::crit_a(m); }},
        {CriterionKind::kC, [&](const Matrix& m) { return oracle::crit_c(m, c); }},
        {CriterionKind::kD, [](const Matrix& m) { return oracle::crit_d(m); }},
        {CriterionKind::kV, [&](const Matrix& m) { return oracle::crit_v(m, xm); }},
    };
    for (const auto& [kind, f] : cases) {
      const RelaxSolution s = solve(x, prior, Criterion::of_kind(kind, x, prior), k);
      EXPECT_LE(s.objective, oracle::brute_opt(xm, a, k, f) * (1 + 1e-6))
          << criterion_letter(kind);
    }
  }
}

TEST(SolveProperty, DObjectiveInvariantUnderRowPermutation) {
  std::mt19937_64 gen(66);
  const Matrix xm = oracle::random_matrix(gen, 12, 3);
  std::vector<int> perm(12);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), gen);
  const Matrix permuted = oracle::rows_of(xm, perm);
  const Prior prior(SymMatrix::identity(3, 0.1));
  RelaxConfig cfg;
  cfg.tol = 1e-12;
  cfg.max_iters = 20000;
  const double a = solve(design(xm), prior, Criterion::d_optimal(), 5, cfg).objective;
  const double b = solve(design(permuted), prior, Criterion::d_optimal(), 5, cfg).objective;
  EXPECT_NEAR(a, b, 1e-8);
}

}  // namespace
}  // namespace bed
