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

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bed/errors.h"

namespace bed {

SymMatrix::SymMatrix(Matrix m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("SymMatrix: matrix is " +
                                std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
  }
  if (!m.allFinite()) {
    throw std::invalid_argument("SymMatrix: non-finite entry");
  }
  const double scale = m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
  const double asym = m.size() ? (m - m.transpose()).cwiseAbs().maxCoeff() : 0.0;
  if (asym > 1e-8 * (1.0 + scale)) {
    throw std::invalid_argument("SymMatrix: input is not symmetric");
  }
  m_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::zero(int dim) { return SymMatrix(Matrix::Zero(dim, dim)); }

SymMatrix SymMatrix::identity(int dim, double scale) {
  return SymMatrix(scale * Matrix::Identity(dim, dim));
}

SymMatrix SymMatrix::diagonal(const Vector& diag) {
  return SymMatrix(Matrix(diag.asDiagonal()));
}

SymMatrix SymMatrix::operator+(const SymMatrix& other) const {
  if (other.dim() != dim()) throw std::invalid_argument("SymMatrix: dim mismatch");
  SymMatrix out;
  out.m_ = m_ + other.m_;
  return out;
}

SymMatrix SymMatrix::scaled(double s) const {
  SymMatrix out;
  out.m_ = s * m_;
  return out;
}

SymMatrix SymMatrix::plus_outer(const Vector& v, double s) const {
  SymMatrix out;
  out.m_ = m_ + s * v * v.transpose();
  return out;
}

EigenPair sym_eigen(const SymMatrix& m) {
  const int d = m.dim();
  EigenPair out;
  if (d == 0) return out;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("sym_eigen: eigensolver did not converge");
  }
  // Eigen returns ascending order.
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

PsdFactor::PsdFactor(const SymMatrix& m) : eig_(sym_eigen(m)) {
  if (dim() == 0) return;
  const double top = eig_.values(0);
  const double bottom = eig_.values(dim() - 1);
  singular_ = !(top > 0.0) || bottom <= kSingularTol * top;
}

void PsdFactor::require_nonsingular() const {
  if (singular_) throw SingularMatrix("matrix is singular to tolerance");
}

Matrix PsdFactor::solve(const Matrix& rhs) const {
  require_nonsingular();
  const Matrix& v = eig_.vectors;
  return v * (eig_.values.cwiseInverse().asDiagonal() * (v.transpose() * rhs));
}

Vector PsdFactor::solve(const Vector& rhs) const {
  require_nonsingular();
  const Matrix& v = eig_.vectors;
  return v * (eig_.values.cwiseInverse().asDiagonal() * (v.transpose() * rhs));
}

Matrix PsdFactor::inverse() const {
  require_nonsingular();
  const Matrix& v = eig_.vectors;
  return v * eig_.values.cwiseInverse().asDiagonal() * v.transpose();
}

Matrix PsdFactor::inverse_sqrt() const {
  require_nonsingular();
  const Matrix& v = eig_.vectors;
  return v * eig_.values.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose();
}

double PsdFactor::logdet() const {
  if (singular_) return -std::numeric_limits<double>::infinity();
  return eig_.values.array().log().sum();
}

double PsdFactor::trace_inverse() const {
  if (singular_) return std::numeric_limits<double>::infinity();
  return eig_.values.cwiseInverse().sum();
}

Matrix psd_solve(const SymMatrix& m, const Matrix& rhs) {
  return PsdFactor(m).solve(rhs);
}

double logdet(const SymMatrix& m) { return PsdFactor(m).logdet(); }

bool is_singular(const SymMatrix& m) { return PsdFactor(m).singular(); }

bool is_psd(const SymMatrix& m, double rel_tol) {
  if (m.dim() == 0) return true;
  const Vector values = sym_eigen(m).values;
  const double scale = values.cwiseAbs().maxCoeff();
  return values(values.size() - 1) >= -rel_tol * scale;
}

}  // namespace bed
