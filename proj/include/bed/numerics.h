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

// Dense symmetric linear algebra shared by every other module.
//
// All routines go through a symmetric eigendecomposition. At the sizes this
// library targets (d up to a few hundred) that costs little more than a
// Cholesky factorization and gives a single, scale-invariant definition of
// "singular": the smallest eigenvalue is at most kSingularTol times the
// largest one.

#ifndef BED_NUMERICS_H_
#define BED_NUMERICS_H_

#include <Eigen/Dense>

namespace bed {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kSingularTol = 1e-12;

// Square symmetric matrix. The constructor symmetrizes its argument as
// (M + M^T) / 2, which removes the drift accumulated by outer-product sums;
// inputs that are far from symmetric are rejected.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Matrix m);

  static SymMatrix zero(int dim);
  static SymMatrix identity(int dim, double scale = 1.0);
  static SymMatrix diagonal(const Vector& diag);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  SymMatrix operator+(const SymMatrix& other) const;
  SymMatrix scaled(double s) const;
  // this + s * v v^T
  SymMatrix plus_outer(const Vector& v, double s = 1.0) const;

 private:
  Matrix m_;
};

// values are nonincreasing; vectors holds the matching orthonormal columns.
struct EigenPair {
  Vector values;
  Matrix vectors;
};

// Throws NumericalFailure when the QR iteration does not converge.
EigenPair sym_eigen(const SymMatrix& m);

// Spectral factorization of a PSD matrix, reused when several solves or
// determinants are needed for one matrix.
class PsdFactor {
 public:
  explicit PsdFactor(const SymMatrix& m);

  int dim() const { return static_cast<int>(eig_.values.size()); }
  bool singular() const { return singular_; }
  const EigenPair& eigen() const { return eig_; }

  // Throws SingularMatrix when singular().
  Matrix solve(const Matrix& rhs) const;
  Vector solve(const Vector& rhs) const;
  Matrix inverse() const;
  Matrix inverse_sqrt() const;

  // -infinity when singular().
  double logdet() const;
  // +infinity when singular().
  double trace_inverse() const;

 private:
  void require_nonsingular() const;

  EigenPair eig_;
  bool singular_ = false;
};

// Solves m * result = rhs for PSD, numerically nonsingular m.
Matrix psd_solve(const SymMatrix& m, const Matrix& rhs);

// log det(m); -infinity when m is singular to tolerance.
double logdet(const SymMatrix& m);

bool is_singular(const SymMatrix& m);

// Smallest eigenvalue >= -rel_tol * largest magnitude.
bool is_psd(const SymMatrix& m, double rel_tol = 1e-10);

}  // namespace bed

#endif  // BED_NUMERICS_H_
