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

#include "bed/selector.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "bed/errors.h"
#include "oracle.h"
#include "test_util.h"

namespace bed {
namespace {

using testing::design;

// Recomputed from the formula, independent of the library helpers.
double bound_factor(double d_w, int k) {
  return 1.0 + 8.0 * d_w / k + 8.0 * std::sqrt(std::max(0.0, std::log(k / d_w)) / k);
}

void expect_valid_subset(const DesignResult& r, int n, int k) {
  ASSERT_EQ(static_cast<int>(r.subset.size()), k);
  const std::set<int> unique(r.subset.begin(), r.subset.end());
  EXPECT_EQ(static_cast<int>(unique.size()), k);
  EXPECT_GE(*unique.begin(), 0);
  EXPECT_LT(*unique.rbegin(), n);
  EXPECT_TRUE(std::is_sorted(r.subset.begin(), r.subset.end()));
}

TEST(Certificate, Formulas) {
  EXPECT_NEAR(certificate_factor(2.0, 50), bound_factor(2.0, 50), 1e-14);
  EXPECT_NEAR(rejection_eps(2.0, 2000), 4.0 * 2 / 2000 + 6.0 * std::sqrt(std::log(1000.0) / 2000),
              1e-14);
  EXPECT_EQ(rejection_eps(10.0, 12), 1.0);
  // k < d_w: the log term is dropped, not NaN.
  EXPECT_TRUE(std::isfinite(certificate_factor(30.0, 12)));
  EXPECT_TRUE(std::isfinite(certificate_factor(0.0, 12)));
}

TEST(Select, Validation) {
  std::mt19937_64 gen(71);
  const DesignMatrix x = design(oracle::random_matrix(gen, 6, 2));
  const Prior prior(SymMatrix::identity(2));
  const Criterion a = Criterion::a_optimal();
  Rng rng(1);
  EXPECT_THROW(select(x, prior, a, Vector::Constant(6, 0.5), 2, rng), InfeasibleWeights);
  Vector big = Vector::Zero(6);
  big(0) = 2.0;
  EXPECT_THROW(select(x, prior, a, big, 2, rng), InfeasibleWeights);
  EXPECT_THROW(select(x, prior, a, Vector::Constant(5, 0.4), 2, rng), InfeasibleWeights);
  EXPECT_THROW(select_uniform(x, prior, a, 7, rng), InfeasibleWeights);
}

TEST(Select, FullSelection) {
  std::mt19937_64 gen(72);
  const DesignMatrix x = design(oracle::random_matrix(gen, 7, 3));
  const Prior prior(SymMatrix::identity(3, 0.1));
  Rng rng(2);
  const DesignResult r = select(x, prior, Criterion::a_optimal(), Vector::Ones(7), 7, rng);
  expect_valid_subset(r, 7, 7);
  EXPECT_NEAR(r.value, eval(Criterion::a_optimal(), covariance(x), prior), 1e-12);
  const DesignResult u = select_uniform(x, prior, Criterion::a_optimal(), 7, rng);
  EXPECT_NEAR(u.value, eval(Criterion::a_optimal(), covariance(x), prior), 1e-12);
}

TEST(Select, SingularWeightedMatrixThrows) {
  const DesignMatrix x = design({{1, 0}, {2, 0}, {0, 1}});
  Rng rng(3);
  Vector w(3);
  w << 1.0, 1.0, 0.0;
  EXPECT_THROW(select(x, Prior(SymMatrix::zero(2)), Criterion::a_optimal(), w, 2, rng),
               SingularMatrix);
}

TEST(SelectUniform, CertificateOnRandomInstance) {
  std::mt19937_64 gen(73);
  const int n = 30, k = 12;
  const DesignMatrix x = design(oracle::random_matrix(gen, n, 3));
  const Prior prior(SymMatrix::identity(3, 0.1));
  const Criterion crit = Criterion::a_optimal();
  const SymMatrix sigma = covariance(x);
  const double base = eval(crit, sigma.scaled(static_cast<double>(k) / n), prior);
  const double d_w = scaled_effective_dim(sigma, prior.a, k, n).value;
  double attempts = 0.0;
  for (int run = 0; run < 25; ++run) {
    Rng rng(1000 + run);
    const DesignResult r = select_uniform(x, prior, crit, k, rng);
    expect_valid_subset(r, n, k);
    EXPECT_NEAR(r.d_w, d_w, 1e-10);
    EXPECT_NEAR(r.value, eval(crit, subset_covariance(x, r.subset), prior), 1e-10);
    if (r.accepted_by == AcceptedBy::kBoundAccept) {
      EXPECT_LE(r.value, bound_factor(d_w, k) * base);
    }
    attempts += r.attempts;
  }
  EXPECT_LE(attempts / 25, 10.0 * k / d_w);
}

TEST(SelectUniform, DeterministicGivenSeed) {
  std::mt19937_64 gen(74);
  const DesignMatrix x = design(oracle::random_matrix(gen, 20, 2));
  const Prior prior(SymMatrix::identity(2, 0.1));
  Rng a(9), b(9);
  EXPECT_EQ(select_uniform(x, prior, Criterion::a_optimal(), 6, a).subset,
            select_uniform(x, prior, Criterion::a_optimal(), 6, b).subset);
}

TEST(SelectUniform, AddingAnIndexNeverIncreasesValue) {
  std::mt19937_64 gen(75);
  const int n = 25;
  const DesignMatrix x = design(oracle::random_matrix(gen, n, 3));
  const Prior prior(SymMatrix::identity(3, 0.1), Vector::Ones(3));
  for (CriterionKind kind : {CriterionKind::kA, CriterionKind::kC, CriterionKind::kD,
                             CriterionKind::kV}) {
    const Criterion crit = Criterion::of_kind(kind, x, prior);
    Rng rng(11);
    const DesignResult r = select_uniform(x, prior, crit, 8, rng);
    expect_valid_subset(r, n, 8);
    for (int extra = 0; extra < n; ++extra) {
      if (std::find(r.subset.begin(), r.subset.end(), extra) != r.subset.end()) continue;
      std::vector<int> bigger = r.subset;
      bigger.push_back(extra);
      EXPECT_LE(eval(crit, subset_covariance(x, bigger), prior), r.value * (1 + 1e-12));
    }
  }
}

TEST(SelectUniform, RandomPadKeepsSubsetValid) {
  std::mt19937_64 gen(76);
  const DesignMatrix x = design(oracle::random_matrix(gen, 30, 2));
  const Prior prior(SymMatrix::identity(2, 0.5));
  SelectOptions opts;
  opts.pad = PadRule::kRandom;
  for (int run = 0; run < 20; ++run) {
    Rng rng(run);
    const DesignResult r = select_uniform(x, prior, Criterion::a_optimal(), 10, rng, opts);
    expect_valid_subset(r, 30, 10);
    EXPECT_LE(r.sampled_size, 10);
  }
}

TEST(SelectUniform, OutsideRegimeIsFlagged) {
  std::mt19937_64 gen(77);
  const DesignMatrix x = design(oracle::random_matrix(gen, 20, 4));
  const Prior prior(SymMatrix::identity(4, 1e-3));
  Rng rng(4);
  const DesignResult r = select_uniform(x, prior, Criterion::a_optimal(), 5, rng);
  EXPECT_FALSE(r.in_guarantee_regime);
  EXPECT_EQ(r.eps_used, 1.0);
  expect_valid_subset(r, 20, 5);
}

TEST(SelectRelaxed, OracleOnTinyInstances) {
  std::mt19937_64 gen(78);
  for (int k : {4, 8}) {
    const Matrix xm = oracle::random_matrix(gen, 10, 2);
    const Matrix a = 0.1 * Matrix::Identity(2, 2);
    const DesignMatrix x = design(xm);
    const Prior prior{SymMatrix(a)};
    const RelaxSolution relaxed = solve(x, prior, Criterion::a_optimal(), k);
    Rng rng(5);
    const DesignResult r = select_relaxed(x, prior, Criterion::a_optimal(), k, rng, relaxed);
    const double opt =
        oracle::brute_opt(xm, a, k, [](const Matrix& m) { return oracle::crit_a(m); });
    expect_valid_subset(r, 10, k);
    EXPECT_GE(r.value, relaxed.objective - 1e-8);
    EXPECT_LE(relaxed.objective, opt + 1e-4);
    EXPECT_NEAR(r.base_value, relaxed.objective, 1e-10);
    if (k == 8) {
      EXPECT_LE(r.value, 1.5 * opt);
    }
  }
}

TEST(AcceptedBy, Names) {
  EXPECT_EQ(accepted_by_name(AcceptedBy::kBoundAccept), "bound-accept");
  EXPECT_EQ(accepted_by_name(AcceptedBy::kBestSeenFallback), "best-seen-fallback");
  EXPECT_EQ(parse_pad_rule("random"), PadRule::kRandom);
  EXPECT_THROW(parse_pad_rule("x"), std::invalid_argument);
}

}  // namespace
}  // namespace bed
