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

#include "incremental.h"

#include <cmath>
#include <limits>

namespace bed::internal {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

IncrementalDesign::IncrementalDesign(const DesignMatrix& x, const Prior& prior,
                                     const Criterion& crit)
    : x_(x),
      prior_(prior),
      crit_(crit),
      sigma_(Matrix::Zero(x.d(), x.d())),
      factor_(prior.a) {
  refactor();
}

void IncrementalDesign::refactor() {
  factor_ = PsdFactor(SymMatrix(sigma_) + prior_.a);
  if (!factor_.singular()) m_inv_ = factor_.inverse();
}

void IncrementalDesign::add(int i) {
  const auto row = x_.x().row(i);
  sigma_.noalias() += row.transpose() * row;
  members_.push_back(i);
  refactor();
}

double IncrementalDesign::value() const { return eval_factored(crit_, factor_); }

std::vector<double> IncrementalDesign::candidate_scores(std::span<const char> taken) const {
  const auto& rows = x_.x();
  const int n = x_.n();
  const Matrix u = rows * m_inv_;
  const Vector s = Vector::Ones(n) + u.cwiseProduct(rows).rowwise().sum();

  Vector scores(n);
  switch (crit_.kind()) {
    case CriterionKind::kA: {
      const double base = m_inv_.trace();
      scores = base - (u.rowwise().squaredNorm().array() / s.array()).matrix().array();
      break;
    }
    case CriterionKind::kC: {
      const Vector cu = m_inv_ * crit_.c();
      const double base = crit_.c().dot(cu);
      const Vector t = rows * cu;
      scores = base - (t.array().square() / s.array());
      break;
    }
    case CriterionKind::kD: {
      scores = -(factor_.logdet() + s.array().log());
      break;
    }
    case CriterionKind::kV: {
      const Matrix ug = u * crit_.gram();
      const double base = (m_inv_ * crit_.gram()).trace();
      const Vector q = ug.cwiseProduct(u).rowwise().sum();
      scores = (base - q.array() / s.array()) / crit_.reference_rows();
      break;
    }
  }
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = taken[i] ? kInf : scores(i);
  return out;
}

std::vector<double> IncrementalDesign::singular_scores(std::span<const char> taken) const {
  const int n = x_.n();
  std::vector<double> out(n, kInf);
  const EigenPair& eig = factor_.eigen();
  const int d = x_.d();
  const double top = eig.values(0);
  int nullity = 0;
  for (int j = d - 1; j >= 0; --j) {
    if (top > 0.0 && eig.values(j) > kSingularTol * top) break;
    ++nullity;
  }
  if (nullity != 1) return out;
  const Vector null_dir = eig.vectors.col(d - 1);
  const SymMatrix m(sigma_);
  for (int i = 0; i < n; ++i) {
    if (taken[i]) continue;
    const Vector xi = x_.row(i);
    const double along = null_dir.dot(xi);
    if (along * along <= 1e-10 * xi.squaredNorm()) continue;
    const PsdFactor f(m.plus_outer(xi) + prior_.a);
    if (f.singular()) continue;
    out[i] = crit_.kind() == CriterionKind::kD ? -f.logdet() : eval_factored(crit_, f);
  }
  return out;
}

int IncrementalDesign::best_candidate(std::span<const char> taken) const {
  const int n = x_.n();
  const auto scores = factor_.singular() ? singular_scores(taken) : candidate_scores(taken);
  int best = -1;
  for (int i = 0; i < n; ++i) {
    if (taken[i]) continue;
    if (best < 0 || scores[i] < scores[best]) best = i;
  }
  if (best < 0 || std::isfinite(scores[best])) return best;

  // All candidates leave the matrix singular: grow the span instead.
  const EigenPair& eig = factor_.eigen();
  const double top = eig.values(0);
  const int d = x_.d();
  int rank = 0;
  while (rank < d && top > 0.0 && eig.values(rank) > kSingularTol * top) ++rank;
  const Matrix null_basis = eig.vectors.rightCols(d - rank);
  double best_gain = -1.0;
  for (int i = 0; i < n; ++i) {
    if (taken[i]) continue;
    const double gain = (null_basis.transpose() * x_.row(i)).squaredNorm();
    if (gain > best_gain) {
      best_gain = gain;
      best = i;
    }
  }
  return best;
}

}  // namespace bed::internal
