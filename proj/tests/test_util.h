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

#ifndef BED_TESTS_TEST_UTIL_H_
#define BED_TESTS_TEST_UTIL_H_

#include <initializer_list>
#include <vector>

#include "bed/dataset.h"
#include "bed/numerics.h"

namespace bed::testing {

inline DesignMatrix design(const Matrix& x) { return DesignMatrix(RowMatrix(x)); }

inline DesignMatrix design(std::initializer_list<std::initializer_list<double>> rows) {
  RowMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return DesignMatrix(std::move(m));
}

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

inline Prior prior_of(const Matrix& a) { return Prior(SymMatrix(a)); }

}  // namespace bed::testing

#endif  // BED_TESTS_TEST_UTIL_H_
