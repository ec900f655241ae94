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

#ifndef BED_SRC_INCREMENTAL_H_
#define BED_SRC_INCREMENTAL_H_

#include <span>
#include <vector>

#include "bed/criteria.h"
#include "bed/dataset.h"
#include "bed/numerics.h"

namespace bed::internal {

// Grows a subset S one index at a time and scores every candidate
// S + {i} through Sherman-Morrison updates of (X_S^T X_S + A)^-1, so one
// greedy step costs O(n d^2). Shared by the greedy baseline and by the
// padding step of the selector.
class IncrementalDesign {
 public:
  IncrementalDesign(const DesignMatrix& x, const Prior& prior, const Criterion& crit);

  void add(int i);

  // Index minimizing f_A(S + {i}) among i with !taken[i]; ties go to the
  // lowest index. While X_S^T X_S + A is singular and no single addition
  // makes it invertible, every candidate scores +inf and the one with the
  // largest component outside the current span wins instead. -1 when no
  // candidate is left.
  int best_candidate(std::span<const char> taken) const;

  const std::vector<int>& members() const { return members_; }
  double value() const;

 private:
  void refactor();
  // Scores comparable across candidates; smaller is better. For D this is
  // -log det, for the others the criterion value itself.
  std::vector<double> candidate_scores(std::span<const char> taken) const;
  std::vector<double> singular_scores(std::span<const char> taken) const;

  const DesignMatrix& x_;
  const Prior& prior_;
  const Criterion& crit_;
  std::vector<int> members_;
  Matrix sigma_;
  PsdFactor factor_;
  Matrix m_inv_;
};

}  // namespace bed::internal

#endif  // BED_SRC_INCREMENTAL_H_
