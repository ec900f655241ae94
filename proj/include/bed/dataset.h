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

#ifndef BED_DATASET_H_
#define BED_DATASET_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "bed/numerics.h"

namespace bed {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// n candidate experiments x_1..x_n in R^d, stored as the rows of X.
// Labels are carried along for provenance only.
class DesignMatrix {
 public:
  explicit DesignMatrix(RowMatrix rows, std::optional<Vector> labels = std::nullopt);

  int n() const { return static_cast<int>(rows_.rows()); }
  int d() const { return static_cast<int>(rows_.cols()); }
  const RowMatrix& x() const { return rows_; }
  Vector row(int i) const { return rows_.row(i).transpose(); }
  const std::optional<Vector>& labels() const { return labels_; }

 private:
  RowMatrix rows_;
  std::optional<Vector> labels_;
};

// Gaussian prior precision A (PSD) and the optional C-optimality direction.
struct Prior {
  Prior(SymMatrix a, std::optional<Vector> c = std::nullopt);

  static Prior scaled_identity(int d, double scale) {
    return Prior(SymMatrix::identity(d, scale));
  }

  int dim() const { return a.dim(); }

  SymMatrix a;
  std::optional<Vector> c;
};

// libsvm / svmlight text: "label idx:val idx:val ...", 1-based strictly
// increasing indices, '#' to end of line is a comment. d is the largest
// index present; absent entries are zero. Throws ParseError.
DesignMatrix parse_libsvm(std::istream& in);

// Reads a file, or standard input when path is "-". Throws DataError when
// the file cannot be opened.
DesignMatrix load_libsvm(const std::string& path);

// Writes nonzero entries with shortest round-trip formatting; re-parsing
// yields bit-identical rows and the same d.
void write_libsvm(std::ostream& out, const DesignMatrix& x);

// sum_i w_i x_i x_i^T (w_i = 1 when weights are omitted).
SymMatrix covariance(const DesignMatrix& x);
SymMatrix covariance(const DesignMatrix& x, const Vector& weights);

// X_S^T X_S
SymMatrix subset_covariance(const DesignMatrix& x, std::span<const int> subset);

// Rescales every nonzero row to unit max-norm.
DesignMatrix normalize_rows(const DesignMatrix& x);

// Diagonal of (1 - eps) (d/s) I_S + eps I with S the first s coordinates.
Vector lowrank_diagonal(int d, int s, double eps);

// A design whose covariance equals diag(diag) exactly: row j is the axis
// vector e_{j mod d} scaled so the rows sharing an axis sum to the target
// entry. Row order is shuffled with seed. Requires n >= d.
DesignMatrix synth_diagonal(const Vector& diag, int n, std::uint64_t seed);

// synth_diagonal(lowrank_diagonal(d, s, eps), n, seed). With s == d this is
// the identity-covariance design.
DesignMatrix synth_lowrank(int d, int s, double eps, int n, std::uint64_t seed);

// Whitespace-separated reals. d x d for a prior file, d for a vector.
Prior load_prior_file(const std::string& path, int d);
Vector load_vector_file(const std::string& path, int expected_len);

}  // namespace bed

#endif  // BED_DATASET_H_
