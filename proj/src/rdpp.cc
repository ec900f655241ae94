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

#include "bed/rdpp.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

#include "bed/criteria.h"
#include "bed/errors.h"

namespace bed {

namespace {

// Rows with 1 - p_i below this are always in S through the Bernoulli part,
// so their rows of B cannot affect the law of the union.
constexpr double kSaturated = 1e-15;
// Spectrum entries at or below this are treated as exact zeros.
constexpr double kZeroEig = 1e-14;
constexpr double kDegenerate = 1e-12;
constexpr int kMaxRestarts = 100;

}  // namespace

WeightVector::WeightVector(Vector p) : p_(std::move(p)) {
  for (Eigen::Index i = 0; i < p_.size(); ++i) {
    if (!(p_(i) >= 0.0 && p_(i) <= 1.0)) {
      throw std::invalid_argument("weight p_" + std::to_string(i) + " is outside [0, 1]");
    }
  }
}

Matrix SpectralKernel::marginal_kernel() const {
  const Vector q = (Vector::Ones(n()) - p_.values()).cwiseMax(0.0).cwiseSqrt();
  const Matrix scaled = q.asDiagonal() * eigvecs_;
  Matrix k = scaled * eigvals_.asDiagonal() * scaled.transpose();
  k.diagonal() += p_.values();
  return k;
}

SpectralKernel build_kernel(const DesignMatrix& x, const Prior& prior, const WeightVector& p) {
  if (p.n() != x.n()) throw std::invalid_argument("build_kernel: weight length != n");
  SymMatrix sigma_p = covariance(x, p.values());
  PsdFactor z(sigma_p + prior.a);
  if (z.singular()) throw SingularMatrix("build_kernel: A + X^T D_p X is singular");

  RowMatrix b = p.values().cwiseSqrt().asDiagonal() * x.x() * z.inverse_sqrt();
  for (int i = 0; i < x.n(); ++i) {
    if (1.0 - p[i] < kSaturated) b.row(i).setZero();
  }

  SpectralKernel kernel(p, std::move(z), std::move(sigma_p), prior.a);
  Eigen::BDCSVD<Matrix> svd(Matrix(b), Eigen::ComputeThinU);
  const Vector sv = svd.singularValues();
  std::vector<int> keep;
  for (int j = 0; j < sv.size(); ++j) {
    if (sv(j) * sv(j) > kZeroEig) keep.push_back(j);
  }
  kernel.eigvals_.resize(static_cast<Eigen::Index>(keep.size()));
  kernel.eigvecs_.resize(x.n(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    kernel.eigvals_(c) = std::clamp(sv(keep[c]) * sv(keep[c]), 0.0, 1.0);
    kernel.eigvecs_.col(c) = svd.matrixU().col(keep[c]);
  }
  return kernel;
}

namespace {

// Modified Gram-Schmidt with renormalization. False when a column loses
// its mass, which only happens through rounding.
bool orthonormalize(Matrix& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      v.col(j) -= v.col(i).dot(v.col(j)) * v.col(i);
    }
    const double norm = v.col(j).norm();
    if (norm < kDegenerate) return false;
    v.col(j) /= norm;
  }
  return true;
}

// Sequential phase for an orthonormal n x m basis. Returns false on a
// degenerate pivot.
bool sample_elementary(Matrix v, Rng& rng, std::vector<int>& out) {
  out.clear();
  while (v.cols() > 0) {
    const Vector mass = v.rowwise().squaredNorm();
    const double total = mass.sum();
    if (!(total > kDegenerate)) return false;
    double u = rng.uniform() * total;
    // Rounding can leave u >= 0 after the loop; fall back to the last row
    // that carries mass.
    Eigen::Index pick = mass.size() - 1;
    while (pick > 0 && mass(pick) == 0.0) --pick;
    for (Eigen::Index i = 0; i < mass.size(); ++i) {
      u -= mass(i);
      if (u < 0.0) {
        pick = i;
        break;
      }
    }
    out.push_back(static_cast<int>(pick));

    Eigen::Index pivot = 0;
    v.row(pick).cwiseAbs().maxCoeff(&pivot);
    const double pivot_val = v(pick, pivot);
    if (std::abs(pivot_val) < kDegenerate) return false;
    const Vector pivot_col = v.col(pivot);
    // Zero out row `pick` in every other column, then drop the pivot column.
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      if (j == pivot) continue;
      v.col(j) -= (v(pick, j) / pivot_val) * pivot_col;
    }
    const Eigen::Index last = v.cols() - 1;
    if (pivot != last) v.col(pivot) = v.col(last);
    v.conservativeResize(Eigen::NoChange, last);
    if (!orthonormalize(v)) return false;
  }
  return true;
}

}  // namespace

Sample sample(const SpectralKernel& kernel, Rng& rng) {
  const int n = kernel.n();
  const Vector& lambda = kernel.eigvals();
  std::vector<int> t;
  for (int attempt = 0; attempt < kMaxRestarts; ++attempt) {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index j = 0; j < lambda.size(); ++j) {
      if (rng.bernoulli(lambda(j))) cols.push_back(j);
    }
    Matrix basis(n, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) basis.col(c) = kernel.eigvecs().col(cols[c]);
    if (sample_elementary(std::move(basis), rng, t)) {
      Sample out;
      std::vector<char> in(n, 0);
      for (int i : t) in[i] = 1;
      out.diag.t_size = static_cast<int>(t.size());
      for (int i = 0; i < n; ++i) {
        if (rng.bernoulli(kernel.p()[i])) {
          ++out.diag.bern_size;
          in[i] = 1;
        }
      }
      for (int i = 0; i < n; ++i) {
        if (in[i]) out.subset.push_back(i);
      }
      out.diag.union_size = static_cast<int>(out.subset.size());
      return out;
    }
  }
  throw NumericalFailure("sample: DPP phase degenerate after repeated restarts");
}

double pmf(const DesignMatrix& x, const Prior& prior, const WeightVector& p,
           std::span<const int> s) {
  const int n = x.n();
  if (p.n() != n) throw std::invalid_argument("pmf: weight length != n");
  std::vector<char> in(n, 0);
  for (int i : s) {
    if (i < 0 || i >= n || in[i]) throw std::invalid_argument("pmf: bad subset");
    in[i] = 1;
  }
  const double log_z = PsdFactor(covariance(x, p.values()) + prior.a).logdet();
  if (!std::isfinite(log_z)) throw SingularMatrix("pmf: A + X^T D_p X is singular");

  double log_w = 0.0;
  for (int i = 0; i < n; ++i) {
    const double pi = p[i];
    if (in[i]) {
      if (pi == 0.0) return 0.0;
      log_w += std::log(pi);
    } else {
      if (pi == 1.0) return 0.0;
      log_w += std::log1p(-pi);
    }
  }
  const double log_s = logdet(subset_covariance(x, s) + prior.a);
  if (!std::isfinite(log_s)) return 0.0;
  return std::exp(log_s - log_z + log_w);
}

ExpectedSize expected_size(const SpectralKernel& kernel) {
  const Vector& p = kernel.p().values();
  const Vector k_diag =
      kernel.eigvecs().array().square().matrix() * kernel.eigvals();
  const double exact = p.sum() + (Vector::Ones(p.size()) - p).dot(k_diag);
  const double bound =
      effective_dim(kernel.weighted_covariance(), kernel.prior_precision()).value + p.sum();
  return ExpectedSize{exact, bound};
}

SubsetMask mask_of(std::span<const int> subset) {
  SubsetMask mask = 0;
  for (int i : subset) {
    if (i < 0 || i >= 32) throw std::invalid_argument("mask_of: index out of range");
    mask |= SubsetMask{1} << i;
  }
  return mask;
}

std::vector<int> subset_of(SubsetMask mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1U) out.push_back(i);
  }
  return out;
}

double SubsetLaw::total() const {
  return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

SubsetLaw enumerate_law(const DesignMatrix& x, const Prior& prior, const WeightVector& p) {
  const int n = x.n();
  if (n > 20) throw TooLarge("enumerate_law: n = " + std::to_string(n) + " exceeds 20");
  if (p.n() != n) throw std::invalid_argument("enumerate_law: weight length != n");
  const double log_z = PsdFactor(covariance(x, p.values()) + prior.a).logdet();
  if (!std::isfinite(log_z)) throw SingularMatrix("enumerate_law: A + X^T D_p X is singular");

  const SubsetMask count = SubsetMask{1} << n;
  std::vector<double> probs(count, 0.0);
  for (SubsetMask mask = 0; mask < count; ++mask) {
    double w = 1.0;
    for (int i = 0; i < n; ++i) w *= (mask >> i) & 1U ? p[i] : 1.0 - p[i];
    if (w == 0.0) continue;
    const auto members = subset_of(mask);
    const double log_s = logdet(subset_covariance(x, members) + prior.a);
    if (std::isfinite(log_s)) probs[mask] = w * std::exp(log_s - log_z);
  }
  return SubsetLaw(n, std::move(probs));
}

}  // namespace bed
