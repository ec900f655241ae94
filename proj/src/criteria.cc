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

#include "bed/criteria.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "bed/errors.h"

namespace bed {

CriterionKind parse_criterion_kind(std::string_view name) {
  if (name == "A" || name == "a") return CriterionKind::kA;
  if (name == "C" || name == "c") return CriterionKind::kC;
  if (name == "D" || name == "d") return CriterionKind::kD;
  if (name == "V" || name == "v") return CriterionKind::kV;
  throw std::invalid_argument("unknown criterion '" + std::string(name) + "'");
}

char criterion_letter(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::kA: return 'A';
    case CriterionKind::kC: return 'C';
    case CriterionKind::kD: return 'D';
    case CriterionKind::kV: return 'V';
  }
  return '?';
}

Criterion Criterion::a_optimal() { return Criterion(CriterionKind::kA); }

Criterion Criterion::c_optimal(Vector c) {
  if (c.size() == 0 || c.isZero(0.0)) {
    throw std::invalid_argument("C-optimality needs a nonzero direction c");
  }
  Criterion crit(CriterionKind::kC);
  crit.c_ = std::move(c);
  return crit;
}

Criterion Criterion::d_optimal() { return Criterion(CriterionKind::kD); }

Criterion Criterion::v_optimal(const DesignMatrix& x) {
  Criterion crit(CriterionKind::kV);
  crit.gram_ = std::make_shared<const Matrix>(covariance(x).matrix());
  crit.n_ref_ = x.n();
  return crit;
}

Criterion Criterion::of_kind(CriterionKind kind, const DesignMatrix& x, const Prior& prior) {
  switch (kind) {
    case CriterionKind::kA: return a_optimal();
    case CriterionKind::kC:
      if (!prior.c) throw std::invalid_argument("C-optimality needs a c vector");
      return c_optimal(*prior.c);
    case CriterionKind::kD: return d_optimal();
    case CriterionKind::kV: return v_optimal(x);
  }
  throw std::invalid_argument("bad criterion kind");
}

double eval_factored(const Criterion& crit, const PsdFactor& m) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (m.singular()) return kInf;
  switch (crit.kind()) {
    case CriterionKind::kA:
      return m.trace_inverse();
    case CriterionKind::kC:
      return crit.c().dot(m.solve(crit.c()));
    case CriterionKind::kD:
      return std::exp(-m.logdet() / m.dim());
    case CriterionKind::kV:
      return m.solve(crit.gram()).trace() / crit.reference_rows();
  }
  return kInf;
}

double eval(const Criterion& crit, const SymMatrix& sigma, const Prior& prior) {
  return eval_factored(crit, PsdFactor(sigma + prior.a));
}

Vector grad_w(const Criterion& crit, const DesignMatrix& x, const Vector& w, const Prior& prior) {
  const PsdFactor m(covariance(x, w) + prior.a);
  if (m.singular()) throw SingularMatrix("grad_w: Sigma_w + A is singular");
  const Matrix m_inv = m.inverse();
  const auto& rows = x.x();

  switch (crit.kind()) {
    case CriterionKind::kA: {
      const Matrix y = rows * m_inv;
      return -y.rowwise().squaredNorm();
    }
    case CriterionKind::kC: {
      const Vector u = m_inv * crit.c();
      return -(rows * u).array().square().matrix();
    }
    case CriterionKind::kD: {
      const Vector q = (rows * m_inv).cwiseProduct(rows).rowwise().sum();
      const double f = std::exp(-m.logdet() / m.dim());
      return (-f / m.dim()) * q;
    }
    case CriterionKind::kV: {
      const Matrix y = rows * m_inv;
      const Vector q = (y * crit.gram()).cwiseProduct(y).rowwise().sum();
      return -q / crit.reference_rows();
    }
  }
  throw std::invalid_argument("bad criterion kind");
}

EffDim effective_dim(const SymMatrix& sigma, const SymMatrix& a) {
  const PsdFactor m(sigma + a);
  const double t = m.solve(sigma.matrix()).trace();
  return EffDim{std::clamp(t, 0.0, static_cast<double>(sigma.dim()))};
}

EffDim scaled_effective_dim(const SymMatrix& sigma_x, const SymMatrix& a, int k, int n) {
  if (k < 1 || n < k) throw std::invalid_argument("scaled_effective_dim: need 1 <= k <= n");
  return effective_dim(sigma_x.scaled(static_cast<double>(k) / n), a);
}

}  // namespace bed
