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

#include "bed/numerics.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bed/errors.h"
#include "oracle.h"

namespace bed {
namespace {

SymMatrix random_spd(std::mt19937_64& gen, int d) {
  return SymMatrix(oracle::random_psd(gen, d, /*spd=*/true));
}

TEST(SymMatrix, RejectsNonSquareAndNonFinite) {
  EXPECT_THROW(SymMatrix(Matrix::Zero(2, 3)), std::invalid_argument);
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = m(1, 0) = std::nan("");
  EXPECT_THROW(SymMatrix{m}, std::invalid_argument);
}

TEST(SymMatrix, RejectsClearlyAsymmetric) {
  Matrix m{{1.0, 2.0}, {0.0, 1.0}};
  EXPECT_THROW(SymMatrix{m}, std::invalid_argument);
}

TEST(SymMatrix, AveragesRoundoffAsymmetry) {
  Matrix m{{1.0, 0.5 + 1e-12}, {0.5, 1.0}};
  const SymMatrix s(m);
  EXPECT_EQ(s(0, 1), s(1, 0));
}

TEST(SymMatrix, PlusOuter) {
  const SymMatrix s = SymMatrix::zero(2).plus_outer(Vector::Ones(2), 2.0);
  EXPECT_DOUBLE_EQ(s(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(s(0, 1), 2.0);
}

TEST(SymEigen, Identity) {
  const EigenPair e = sym_eigen(SymMatrix::identity(3));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(e.values(i), 1.0, 1e-14);
  EXPECT_NEAR((e.vectors.transpose() * e.vectors - Matrix::Identity(3, 3)).norm(), 0.0, 1e-12);
}

TEST(SymEigen, DiagonalIsSortedDescending) {
  const EigenPair e = sym_eigen(SymMatrix::diagonal(Vector{{1.0, 3.0}}));
  EXPECT_DOUBLE_EQ(e.values(0), 3.0);
  EXPECT_DOUBLE_EQ(e.values(1), 1.0);
  EXPECT_NEAR(std::abs(e.vectors(1, 0)), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(e.vectors(0, 1)), 1.0, 1e-14);
}

TEST(SymEigen, ReconstructsRandomSymmetric) {
  std::mt19937_64 gen(11);
  const Matrix b = oracle::random_matrix(gen, 5, 5);
  const SymMatrix s(0.5 * (b + b.transpose()));
  const EigenPair e = sym_eigen(s);
  const Matrix back = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
  EXPECT_LE((back - s.matrix()).cwiseAbs().maxCoeff(), 1e-8);
  for (int i = 1; i < 5; ++i) EXPECT_GE(e.values(i - 1), e.values(i));
}

TEST(PsdSolve, IdentityAndScaledIdentity) {
  const Matrix b = Matrix::Constant(3, 2, 1.5);
  EXPECT_TRUE(psd_solve(SymMatrix::identity(3), b).isApprox(b));
  EXPECT_TRUE(psd_solve(SymMatrix::identity(3, 2.0), b).isApprox(b / 2.0));
}

TEST(PsdSolve, MatchesExplicitInverse) {
  std::mt19937_64 gen(12);
  const SymMatrix m = random_spd(gen, 6);
  const Matrix b = oracle::random_matrix(gen, 6, 3);
  const Matrix expected = oracle::inverse(m.matrix()) * b;
  EXPECT_LE((psd_solve(m, b) - expected).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(PsdSolve, ThrowsOnSingular) {
  EXPECT_THROW(psd_solve(SymMatrix::diagonal(Vector{{1.0, 0.0}}), Matrix::Ones(2, 1)),
               SingularMatrix);
}

TEST(Logdet, KnownValues) {
  EXPECT_NEAR(logdet(SymMatrix::identity(4)), 0.0, 1e-14);
  EXPECT_NEAR(logdet(SymMatrix::diagonal(Vector{{2.0, 3.0}})), std::log(6.0), 1e-14);
}

TEST(Logdet, SingularIsMinusInfinity) {
  EXPECT_EQ(logdet(SymMatrix::diagonal(Vector{{1.0, 0.0}})),
            -std::numeric_limits<double>::infinity());
  EXPECT_EQ(logdet(SymMatrix::diagonal(Vector{{1.0, 1e-13}})),
            -std::numeric_limits<double>::infinity());
}

TEST(Logdet, MatchesLuDeterminant) {
  std::mt19937_64 gen(13);
  const SymMatrix m = random_spd(gen, 5);
  EXPECT_NEAR(logdet(m), std::log(oracle::det(m.matrix())), 1e-8);
}

TEST(Singularity, RelativeCutoff) {
  EXPECT_TRUE(is_singular(SymMatrix::diagonal(Vector{{1.0, 1e-13}})));
  EXPECT_FALSE(is_singular(SymMatrix::diagonal(Vector{{1.0, 1e-11}})));
  // Scale invariant.
  EXPECT_FALSE(is_singular(SymMatrix::diagonal(Vector{{1e-20, 1e-30}})));
  EXPECT_TRUE(is_singular(SymMatrix::zero(2)));
}

TEST(PsdFactor, TraceInverseAndInverseSqrt) {
  const PsdFactor f(SymMatrix::diagonal(Vector{{4.0, 1.0}}));
  EXPECT_DOUBLE_EQ(f.trace_inverse(), 1.25);
  const Matrix r = f.inverse_sqrt();
  EXPECT_NEAR(r(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(r(1, 1), 1.0, 1e-15);
  const PsdFactor g(SymMatrix::zero(2));
  EXPECT_EQ(g.trace_inverse(), std::numeric_limits<double>::infinity());
  EXPECT_THROW(g.inverse(), SingularMatrix);
}

TEST(IsPsd, Basic) {
  EXPECT_TRUE(is_psd(SymMatrix::zero(3)));
  EXPECT_TRUE(is_psd(SymMatrix::diagonal(Vector{{1.0, 0.0}})));
  EXPECT_FALSE(is_psd(SymMatrix::diagonal(Vector{{1.0, -0.1}})));
}

// Properties over random SPD matrices.
TEST(NumericsProperty, ExpLogdetIsEigenvalueProduct) {
  std::mt19937_64 gen(14);
  for (int trial = 0; trial < 50; ++trial) {
    const SymMatrix m = random_spd(gen, 1 + trial % 6);
    const double prod = sym_eigen(m).values.prod();
    EXPECT_NEAR(std::exp(logdet(m)) / prod, 1.0, 1e-6);
  }
}

TEST(NumericsProperty, SolveInvertsMultiply) {
  std::mt19937_64 gen(15);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + trial % 6;
    const SymMatrix m = random_spd(gen, d);
    const Matrix x = oracle::random_matrix(gen, d, 2);
    EXPECT_LE((psd_solve(m, m.matrix() * x) - x).cwiseAbs().maxCoeff(), 1e-8);
  }
}

}  // namespace
}  // namespace bed
