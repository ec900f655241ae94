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

#ifndef BED_BENCH_H_
#define BED_BENCH_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bed/criteria.h"
#include "bed/dataset.h"
#include "bed/relax.h"
#include "bed/rng.h"
#include "bed/selector.h"

namespace bed {

enum class Method { kRdppSdp, kRdppUniform, kGreedy, kUniform, kPredictiveLength };

Method parse_method(std::string_view name);
std::string_view method_name(Method m);
const std::vector<Method>& all_methods();

struct ExperimentSpec {
  // libsvm path, or "lowrank:d,s,eps,n[,seed]" for a synthetic design.
  std::string dataset;
  bool normalize = false;
  std::optional<double> prior_scale;  // A = scale I; default 1/n
  std::string prior_file;             // overrides prior_scale
  CriterionKind criterion = CriterionKind::kA;
  std::string c_vector_file;          // required for C
  std::vector<int> k_grid;            // empty: default grid over [d, 5d]
  int trials = 25;
  std::uint64_t seed = 0;
  std::vector<Method> methods = all_methods();
  SelectOptions select;
  RelaxConfig relax;
  bool squared_norms = false;  // predictive-length weights
  bool timing = true;          // false writes runtime_ms = 0 for byte-stable output
  int threads = 1;
};

// Reads a spec file of `key = value` lines (strings quoted, lists in
// brackets, '#' comments). Throws ParseError.
ExperimentSpec parse_spec(std::istream& in);
ExperimentSpec load_spec(const std::string& path);

// d, d + step, ..., up to 5d, clipped to n, with step = max(1, d/2).
std::vector<int> default_k_grid(int d, int n);

struct ResultRow {
  Method method = Method::kUniform;
  int k = 0;
  int trial = 0;
  double value = 0.0;  // NaN for a failed trial
  double ratio = 0.0;  // value / f_A((k/n) Sigma_X)
  double runtime_ms = 0.0;
  std::uint64_t seed = 0;
};

// Seed of one (method, k, trial) cell; independent of scheduling.
std::uint64_t cell_seed(std::uint64_t seed, Method m, int k, int trial);

DesignMatrix load_dataset(const ExperimentSpec& spec);
Prior make_prior(const ExperimentSpec& spec, const DesignMatrix& x);

// Rows in canonical order (method, k, trial). Throws on invalid spec or
// unreadable data; per-trial failures become NaN rows.
std::vector<ResultRow> run(const ExperimentSpec& spec);
std::vector<ResultRow> run(const ExperimentSpec& spec, const DesignMatrix& x, const Prior& prior);

void write_csv_header(std::ostream& out);
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Percentile bootstrap interval for the mean. Throws TooFewValues.
Interval bootstrap_ci(const std::vector<double>& values, double level, int resamples, Rng& rng);

double median(std::vector<double> values);

struct DeffRow {
  std::string cov;  // "identity" or "lowrank"
  int k = 0;
  double d_scaled = 0.0;  // d_{(n/k)A}(Sigma)
  double d_full = 0.0;    // d_A(Sigma)
};

// Sigma_1 = I and Sigma_2 = (1 - eps)(d/s) I_S + eps I taken as X^T X,
// A = a_scale I, scaled dimension computed for a pool of n rows.
std::vector<DeffRow> deff_compare(int d, int s, double eps, double a_scale,
                                  const std::vector<int>& k_grid, int n);

void write_deff_csv(std::ostream& out, const std::vector<DeffRow>& rows);

}  // namespace bed

#endif  // BED_BENCH_H_
