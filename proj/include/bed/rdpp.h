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

// Regularized determinantal point process over subsets S of [n]:
//
//   Pr(S) = det(X_S^T X_S + A) / det(Z) * prod_{i in S} p_i * prod_{i not in S} (1 - p_i),
//   Z = A + X^T diag(p) X.
//
// It is the correlation DPP with kernel D_p + (I - D_p)^1/2 K (I - D_p)^1/2,
// K = B B^T, B = D_p^1/2 X Z^-1/2, and equals in law the union of a draw
// from the rank <= d DPP with kernel K and independent Bernoulli(p_i)
// indicators. That union is what sample() draws, after an O(n d^2) thin SVD
// of B; the n x n kernel is never formed outside of marginal_kernel().

#ifndef BED_RDPP_H_
#define BED_RDPP_H_

#include <cstdint>
#include <span>
#include <vector>

#include "bed/dataset.h"
#include "bed/numerics.h"
#include "bed/rng.h"

namespace bed {

// Inclusion weights p in [0, 1]^n.
class WeightVector {
 public:
  explicit WeightVector(Vector p);
  static WeightVector uniform(int n, double value) {
    return WeightVector(Vector::Constant(n, value));
  }

  int n() const { return static_cast<int>(p_.size()); }
  const Vector& values() const { return p_; }
  double operator[](int i) const { return p_(i); }

 private:
  Vector p_;
};

class SpectralKernel {
 public:
  int n() const { return p_.n(); }
  // Nonzero spectrum of B B^T, clamped into [0, 1], with the matching
  // n x r orthonormal eigenvectors.
  const Vector& eigvals() const { return eigvals_; }
  const Matrix& eigvecs() const { return eigvecs_; }
  const WeightVector& p() const { return p_; }
  const PsdFactor& z_factor() const { return z_; }
  // X^T D_p X and A, kept for the expected-size bound.
  const SymMatrix& weighted_covariance() const { return sigma_p_; }
  const SymMatrix& prior_precision() const { return a_; }

  // Dense n x n correlation kernel D_p + (I - D_p)^1/2 B B^T (I - D_p)^1/2.
  Matrix marginal_kernel() const;

 private:
  friend SpectralKernel build_kernel(const DesignMatrix&, const Prior&, const WeightVector&);
  SpectralKernel(WeightVector p, PsdFactor z, SymMatrix sigma_p, SymMatrix a)
      : p_(std::move(p)), z_(std::move(z)), sigma_p_(std::move(sigma_p)), a_(std::move(a)) {}

  WeightVector p_;
  PsdFactor z_;
  SymMatrix sigma_p_;
  SymMatrix a_;
  Vector eigvals_;
  Matrix eigvecs_;
};

// Throws SingularMatrix when Z = A + X^T D_p X is singular to tolerance.
SpectralKernel build_kernel(const DesignMatrix& x, const Prior& prior, const WeightVector& p);

struct SampleDiag {
  int t_size = 0;     // |T|, the DPP part
  int bern_size = 0;  // number of Bernoulli successes
  int union_size = 0;
};

struct Sample {
  std::vector<int> subset;  // sorted
  SampleDiag diag;
};

// One exact draw. The DPP phase is the classical spectral sampler: keep
// eigenvector j with probability lambda_j, then repeatedly pick a
// coordinate with probability proportional to the squared row norm of the
// kept basis and project the basis onto the complement of that coordinate.
// A numerically degenerate basis restarts the whole draw.
Sample sample(const SpectralKernel& kernel, Rng& rng);

// Exact probability of subset s, computed from log-determinants.
double pmf(const DesignMatrix& x, const Prior& prior, const WeightVector& p,
           std::span<const int> s);

struct ExpectedSize {
  double exact;  // tr of the marginal kernel
  double bound;  // d_A(X^T D_p X) + sum_i p_i
};

ExpectedSize expected_size(const SpectralKernel& kernel);

// Bit i of a mask marks index i.
using SubsetMask = std::uint32_t;

SubsetMask mask_of(std::span<const int> subset);
std::vector<int> subset_of(SubsetMask mask);

// Full law over the 2^n subsets, indexed by mask.
class SubsetLaw {
 public:
  SubsetLaw(int n, std::vector<double> probs) : n_(n), probs_(std::move(probs)) {}

  int n() const { return n_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](SubsetMask mask) const { return probs_[mask]; }
  const std::vector<double>& probabilities() const { return probs_; }
  double total() const;

 private:
  int n_;
  std::vector<double> probs_;
};

// Throws TooLarge for n > 20.
SubsetLaw enumerate_law(const DesignMatrix& x, const Prior& prior, const WeightVector& p);

}  // namespace bed

#endif  // BED_RDPP_H_
