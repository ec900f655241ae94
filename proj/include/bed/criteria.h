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

// Bayesian optimality criteria f_A(Sigma) for a design covariance Sigma and
// prior precision A. With M = Sigma + A:
//
//   A-optimality   tr(M^-1)
//   C-optimality   c^T M^-1 c
//   D-optimality   det(M)^(-1/d)
//   V-optimality   (1/n) tr(X M^-1 X^T) = (1/n) tr(M^-1 X^T X)
//
// A singular M evaluates to +infinity, never an error, so that subsets with
// too few rows still compare (and lose) against everything else.

#ifndef BED_CRITERIA_H_
#define BED_CRITERIA_H_

#include <memory>
#include <string_view>

#include "bed/dataset.h"
#include "bed/numerics.h"

namespace bed {

enum class CriterionKind { kA, kC, kD, kV };

CriterionKind parse_criterion_kind(std::string_view name);
char criterion_letter(CriterionKind kind);

class Criterion {
 public:
  static Criterion a_optimal();
  static Criterion c_optimal(Vector c);
  static Criterion d_optimal();
  // Precomputes X^T X once; copies share it.
  static Criterion v_optimal(const DesignMatrix& x);

  // Builds the criterion of the given kind; C takes its direction from the
  // prior, V its reference design from x.
  static Criterion of_kind(CriterionKind kind, const DesignMatrix& x, const Prior& prior);

  CriterionKind kind() const { return kind_; }
  const Vector& c() const { return c_; }
  const Matrix& gram() const { return *gram_; }
  int reference_rows() const { return n_ref_; }

 private:
  explicit Criterion(CriterionKind kind) : kind_(kind) {}

  CriterionKind kind_;
  Vector c_;
  std::shared_ptr<const Matrix> gram_;
  int n_ref_ = 0;
};

// Criterion value from a factorization of M = Sigma + A.
double eval_factored(const Criterion& crit, const PsdFactor& m);

double eval(const Criterion& crit, const SymMatrix& sigma, const Prior& prior);

// d f_A(Sigma_w) / d w_i for Sigma_w = sum_i w_i x_i x_i^T. Throws
// SingularMatrix when Sigma_w + A is singular.
Vector grad_w(const Criterion& crit, const DesignMatrix& x, const Vector& w, const Prior& prior);

struct EffDim {
  double value;
};

// tr(Sigma (Sigma + A)^-1). Throws SingularMatrix.
EffDim effective_dim(const SymMatrix& sigma, const SymMatrix& a);

// d_A((k/n) Sigma_X), identical to d_{(n/k) A}(Sigma_X).
EffDim scaled_effective_dim(const SymMatrix& sigma_x, const SymMatrix& a, int k, int n);

}  // namespace bed

#endif  // BED_CRITERIA_H_
