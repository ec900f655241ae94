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

// First-order solver for the continuous relaxation
//
//   minimize f_A(sum_i w_i x_i x_i^T)  over  0 <= w_i <= 1, sum_i w_i = k.
//
// A/C/V are minimized directly. D is minimized through -log det(Sigma_w + A),
// which is convex in w and has the same minimizers as det(.)^(-1/d).

#ifndef BED_RELAX_H_
#define BED_RELAX_H_

#include <string_view>
#include <vector>

#include "bed/criteria.h"
#include "bed/dataset.h"
#include "bed/numerics.h"

namespace bed {

enum class RelaxMethod {
  kMirrorDescent,      // exponentiated gradient + entropic capped-simplex projection
  kProjectedGradient,  // gradient step + Euclidean capped-simplex projection
};

enum class StepRule { kFixed, kBacktracking };

RelaxMethod parse_relax_method(std::string_view name);

struct RelaxConfig {
  int max_iters = 5000;
  double tol = 1e-7;  // relative objective decrease
  StepRule step_rule = StepRule::kBacktracking;
  // Fixed step, or the initial trial step under backtracking. Steps are
  // taken along g / max|g|, so eta is in units of weight.
  double eta = 1.0;
  RelaxMethod method = RelaxMethod::kMirrorDescent;
  // Armijo sufficient-decrease constant.
  double armijo_c = 1e-4;
  // Stop after this many consecutive iterations below tol.
  int patience = 5;

  void validate() const;
};

struct RelaxSolution {
  Vector w;
  double objective = 0.0;  // criteria eval at Sigma_w
  int iters = 0;
  bool converged = false;
  // Minimized objective per accepted iterate, starting point first (-logdet
  // for D, the criterion itself otherwise).
  std::vector<double> history;
};

RelaxSolution solve(const DesignMatrix& x, const Prior& prior, const Criterion& crit, int k,
                    const RelaxConfig& cfg = {});

// Euclidean projection onto {0 <= w <= 1, sum w = k}: clip(v - tau, 0, 1)
// with tau located by bisection and then solved exactly on the active set.
Vector project_capped_simplex(const Vector& v, int k);

// KL projection of a positive vector onto the same set: min(1, c * v).
Vector entropic_project_capped_simplex(const Vector& v, int k);

}  // namespace bed

#endif  // BED_RELAX_H_
