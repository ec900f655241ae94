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

#include "bed/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "bed/baselines.h"
#include "bed/errors.h"

namespace bed {

Method parse_method(std::string_view name) {
  if (name == "rdpp-sdp") return Method::kRdppSdp;
  if (name == "rdpp-uniform") return Method::kRdppUniform;
  if (name == "greedy") return Method::kGreedy;
  if (name == "uniform") return Method::kUniform;
  if (name == "predictive-length" || name == "plen") return Method::kPredictiveLength;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kRdppSdp: return "rdpp-sdp";
    case Method::kRdppUniform: return "rdpp-uniform";
    case Method::kGreedy: return "greedy";
    case Method::kUniform: return "uniform";
    case Method::kPredictiveLength: return "predictive-length";
  }
  return "?";
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods = {Method::kRdppSdp, Method::kRdppUniform,
                                              Method::kGreedy, Method::kUniform,
                                              Method::kPredictiveLength};
  return methods;
}

std::vector<int> default_k_grid(int d, int n) {
  const int step = std::max(1, d / 2);
  std::vector<int> grid;
  for (int k = d; k <= 5 * d && k <= n; k += step) grid.push_back(k);
  if (grid.empty()) grid.push_back(std::min(d, n));
  return grid;
}

std::uint64_t cell_seed(std::uint64_t seed, Method m, int k, int trial) {
  std::uint64_t h = hash_tag(method_name(m));
  h = mix64(h ^ static_cast<std::uint64_t>(k));
  h = mix64(h ^ (static_cast<std::uint64_t>(trial) << 32));
  return seed ^ h;
}

DesignMatrix load_dataset(const ExperimentSpec& spec) {
  constexpr std::string_view kSynth = "lowrank:";
  DesignMatrix x = [&] {
    if (!spec.dataset.starts_with(kSynth)) return load_libsvm(spec.dataset);
    std::vector<double> f;
    std::string_view rest = std::string_view(spec.dataset).substr(kSynth.size());
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      f.push_back(std::stod(std::string(rest.substr(0, comma))));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    if (f.size() != 4 && f.size() != 5) {
      throw DataError("synthetic dataset must be lowrank:d,s,eps,n[,seed]");
    }
    const auto seed = f.size() == 5 ? static_cast<std::uint64_t>(f[4]) : spec.seed;
    return synth_lowrank(static_cast<int>(f[0]), static_cast<int>(f[1]), f[2],
                         static_cast<int>(f[3]), seed);
  }();
  return spec.normalize ? normalize_rows(x) : x;
}

Prior make_prior(const ExperimentSpec& spec, const DesignMatrix& x) {
  Prior prior = spec.prior_file.empty()
                    ? Prior::scaled_identity(x.d(), spec.prior_scale.value_or(1.0 / x.n()))
                    : load_prior_file(spec.prior_file, x.d());
  if (!spec.c_vector_file.empty()) prior.c = load_vector_file(spec.c_vector_file, x.d());
  return prior;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Cell {
  Method method;
  int k;
  int trial;
};

}  // namespace

std::vector<ResultRow> run(const ExperimentSpec& spec) {
  const DesignMatrix x = load_dataset(spec);
  return run(spec, x, make_prior(spec, x));
}

std::vector<ResultRow> run(const ExperimentSpec& spec, const DesignMatrix& x,
                           const Prior& prior) {
  if (spec.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (spec.threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (spec.methods.empty()) throw std::invalid_argument("no methods selected");
  const int n = x.n();
  const std::vector<int> grid = spec.k_grid.empty() ? default_k_grid(x.d(), n) : spec.k_grid;
  for (int k : grid) {
    if (k < 1 || k > n) {
      throw std::invalid_argument(fmt::format("k = {} outside [1, {}]", k, n));
    }
  }
  const Criterion crit = Criterion::of_kind(spec.criterion, x, prior);
  const SymMatrix sigma_x = covariance(x);

  std::map<int, double> reference;
  for (int k : grid) {
    reference[k] = eval(crit, sigma_x.scaled(static_cast<double>(k) / n), prior);
  }

  // The relaxation is deterministic, so it is solved once per k and its cost
  // is charged to every rdpp-sdp trial at that k.
  struct Relaxed {
    std::optional<RelaxSolution> sol;
    double ms = 0.0;
  };
  std::map<int, Relaxed> relaxed;
  if (std::find(spec.methods.begin(), spec.methods.end(), Method::kRdppSdp) !=
      spec.methods.end()) {
    for (int k : grid) {
      const auto start = Clock::now();
      Relaxed r;
      try {
        r.sol = solve(x, prior, crit, k, spec.relax);
      } catch (const NumericalFailure&) {
      }
      r.ms = elapsed_ms(start);
      relaxed[k] = std::move(r);
    }
  }

  std::vector<Cell> cells;
  for (Method m : spec.methods) {
    for (int k : grid) {
      for (int t = 0; t < spec.trials; ++t) cells.push_back({m, k, t});
    }
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return std::tuple(method_name(a.method), a.k, a.trial) <
           std::tuple(method_name(b.method), b.k, b.trial);
  });
  cells.erase(std::unique(cells.begin(), cells.end(),
                          [](const Cell& a, const Cell& b) {
                            return a.method == b.method && a.k == b.k && a.trial == b.trial;
                          }),
              cells.end());

  std::vector<ResultRow> rows(cells.size());
  auto run_cell = [&](std::size_t idx) {
    const Cell& c = cells[idx];
    ResultRow row;
    row.method = c.method;
    row.k = c.k;
    row.trial = c.trial;
    row.seed = cell_seed(spec.seed, c.method, c.k, c.trial);
    Rng rng(row.seed);
    const auto start = Clock::now();
    double extra_ms = 0.0;
    try {
      std::vector<int> subset;
      switch (c.method) {
        case Method::kRdppSdp: {
          const Relaxed& r = relaxed.at(c.k);
          extra_ms = r.ms;
          if (!r.sol) throw NumericalFailure("relaxation failed");
          subset = select_relaxed(x, prior, crit, c.k, rng, *r.sol, spec.select).subset;
          break;
        }
        case Method::kRdppUniform:
          subset = select_uniform(x, prior, crit, c.k, rng, spec.select).subset;
          break;
        case Method::kGreedy:
          subset = greedy_bottom_up(x, prior, crit, c.k).subset;
          break;
        case Method::kUniform:
          subset = uniform_subset(n, c.k, rng);
          break;
        case Method::kPredictiveLength:
          subset = predictive_length(x, c.k, rng, spec.squared_norms);
          break;
      }
      row.value = eval(crit, subset_covariance(x, subset), prior);
    } catch (const NumericalFailure&) {
      row.value = kNaN;
    } catch (const InfeasibleWeights&) {
      row.value = kNaN;
    }
    row.runtime_ms = spec.timing ? elapsed_ms(start) + extra_ms : 0.0;
    row.ratio = row.value / reference.at(c.k);
    rows[idx] = row;
  };

  if (spec.threads == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (int t = 0; t < spec.threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) run_cell(i);
      });
    }
  }
  return rows;
}

void write_csv_header(std::ostream& out) {
  out << "method,k,trial,value,ratio,runtime_ms,seed\n";
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  write_csv_header(out);
  for (const ResultRow& r : rows) {
    fmt::print(out, "{},{},{},{},{},{},{}\n", method_name(r.method), r.k, r.trial, r.value,
               r.ratio, r.runtime_ms, r.seed);
  }
}

double median(std::vector<double> values) {
  if (values.empty()) throw TooFewValues("median of an empty list");
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (values.size() % 2 == 1) return *mid;
  return 0.5 * (*mid + *std::max_element(values.begin(), mid));
}

Interval bootstrap_ci(const std::vector<double>& values, double level, int resamples, Rng& rng) {
  if (values.size() < 2) throw TooFewValues("bootstrap needs at least 2 values");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level must be in (0, 1)");
  if (resamples < 1) throw std::invalid_argument("resamples must be >= 1");
  const std::size_t m = values.size();
  std::vector<double> means(resamples);
  for (double& mean : means) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) sum += values[rng.below(m)];
    mean = sum / static_cast<double>(m);
  }
  std::sort(means.begin(), means.end());
  const double alpha = 0.5 * (1.0 - level);
  auto quantile = [&](double q) {
    const double pos = q * (resamples - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, means.size() - 1);
    return means[lo] + (pos - lo) * (means[hi] - means[lo]);
  };
  return {quantile(alpha), quantile(1.0 - alpha)};
}

std::vector<DeffRow> deff_compare(int d, int s, double eps, double a_scale,
                                  const std::vector<int>& k_grid, int n) {
  const SymMatrix a = SymMatrix::identity(d, a_scale);
  const std::pair<const char*, SymMatrix> covs[] = {
      {"identity", SymMatrix::identity(d)},
      {"lowrank", SymMatrix::diagonal(lowrank_diagonal(d, s, eps))},
  };
  std::vector<DeffRow> rows;
  for (const auto& [name, sigma] : covs) {
    const double full = effective_dim(sigma, a).value;
    for (int k : k_grid) {
      rows.push_back({name, k, scaled_effective_dim(sigma, a, k, n).value, full});
    }
  }
  return rows;
}

void write_deff_csv(std::ostream& out, const std::vector<DeffRow>& rows) {
  out << "cov,k,d_scaled,d_full\n";
  for (const DeffRow& r : rows) fmt::print(out, "{},{},{},{}\n", r.cov, r.k, r.d_scaled, r.d_full);
}

}  // namespace bed
