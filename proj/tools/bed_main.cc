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

// bed: command-line front end.
//   bed design      choose k rows of a design
//   bed bench run   criterion-vs-k experiment, CSV out
//   bed bench deff  scaled vs full effective dimension, CSV out
//   bed sample      subset-size histogram of the regularized DPP

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>

#include "bed/baselines.h"
#include "bed/bench.h"
#include "bed/errors.h"
#include "bed/rdpp.h"
#include "bed/relax.h"
#include "bed/selector.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

std::uint64_t seed_or_env(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("BED_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(fmt::format("BED_SEED is not an integer: '{}'", env));
    }
  }
  return 0;
}

// Writes to path, or stdout for "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw bed::DataError("cannot open '" + path + "' for writing");
  fn(out);
}

struct DesignArgs {
  std::string data;
  std::string criterion = "A";
  int k = 0;
  std::string method = "rdpp-sdp";
  std::optional<double> prior_scale;
  std::string prior_file;
  std::string c_vector;
  std::optional<std::uint64_t> seed;
  std::string pad = "greedy";
  bool normalize = false;
  int max_attempts = 1000;
};

int run_design(const DesignArgs& a) {
  bed::ExperimentSpec spec;
  spec.dataset = a.data;
  spec.normalize = a.normalize;
  spec.prior_scale = a.prior_scale;
  spec.prior_file = a.prior_file;
  spec.c_vector_file = a.c_vector;
  spec.criterion = bed::parse_criterion_kind(a.criterion);
  spec.seed = seed_or_env(a.seed);

  const bed::DesignMatrix x = bed::load_dataset(spec);
  const bed::Prior prior = bed::make_prior(spec, x);
  const bed::Criterion crit = bed::Criterion::of_kind(spec.criterion, x, prior);
  const bed::Method method = bed::parse_method(a.method);
  bed::SelectOptions opts;
  opts.pad = bed::parse_pad_rule(a.pad);
  opts.max_attempts = a.max_attempts;
  if (a.k < 1 || a.k > x.n()) {
    throw std::invalid_argument(fmt::format("--k must be in [1, {}]", x.n()));
  }

  bed::Rng rng(spec.seed);
  bed::DesignResult result;
  switch (method) {
    case bed::Method::kRdppSdp:
      result = bed::select_relaxed(x, prior, crit, a.k, rng, bed::RelaxConfig{}, opts);
      break;
    case bed::Method::kRdppUniform:
      result = bed::select_uniform(x, prior, crit, a.k, rng, opts);
      break;
    case bed::Method::kGreedy:
      result = bed::greedy_bottom_up(x, prior, crit, a.k);
      break;
    case bed::Method::kUniform:
      result.subset = bed::uniform_subset(x.n(), a.k, rng);
      break;
    case bed::Method::kPredictiveLength:
      result.subset = bed::predictive_length(x, a.k, rng);
      break;
  }
  result.value = bed::eval(crit, bed::subset_covariance(x, result.subset), prior);

  fmt::print("subset: {}\n", fmt::join(result.subset, " "));
  fmt::print("value: {}\n", result.value);
  if (method == bed::Method::kRdppSdp || method == bed::Method::kRdppUniform) {
    fmt::print("accepted_by: {}\n", bed::accepted_by_name(result.accepted_by));
    fmt::print("attempts: {}\n", result.attempts);
    fmt::print("d_w: {}\n", result.d_w);
    fmt::print("bound: {}\n", result.bound_factor * result.base_value);
    if (!result.in_guarantee_regime) {
      fmt::print(std::cerr, "note: k < 4 d_w, the acceptance bound is not guaranteed\n");
    }
  }
  return 0;
}

struct BenchArgs {
  std::string spec_file;
  std::string data;
  std::string criterion = "A";
  std::optional<double> prior_scale;
  std::string prior_file;
  std::string c_vector;
  std::vector<int> k_grid;
  int trials = 25;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> methods;
  std::string pad = "greedy";
  std::string relax_method = "mirror-descent";
  bool normalize = false;
  bool squared_norms = false;
  std::string timing = "on";
  int threads = 1;
  std::string out = "-";
};

int run_bench(const BenchArgs& a) {
  bed::ExperimentSpec spec;
  if (!a.spec_file.empty()) {
    spec = bed::load_spec(a.spec_file);
  } else {
    if (a.data.empty()) throw CLI::ValidationError("bench run", "--spec or --data is required");
    spec.dataset = a.data;
    spec.criterion = bed::parse_criterion_kind(a.criterion);
    spec.prior_scale = a.prior_scale;
    spec.prior_file = a.prior_file;
    spec.c_vector_file = a.c_vector;
    spec.k_grid = a.k_grid;
    spec.trials = a.trials;
    spec.normalize = a.normalize;
    spec.squared_norms = a.squared_norms;
    spec.threads = a.threads;
    spec.select.pad = bed::parse_pad_rule(a.pad);
    spec.relax.method = bed::parse_relax_method(a.relax_method);
    if (!a.methods.empty()) {
      spec.methods.clear();
      for (const auto& m : a.methods) spec.methods.push_back(bed::parse_method(m));
    }
  }
  if (a.seed || a.spec_file.empty()) spec.seed = seed_or_env(a.seed);
  if (a.timing == "off") spec.timing = false;

  const auto rows = bed::run(spec);
  with_output(a.out, [&](std::ostream& out) { bed::write_csv(out, rows); });
  return 0;
}

struct DeffArgs {
  int d = 100;
  int s = 10;
  double eps = 1e-2;
  double a_scale = 1e-2;
  int n = 0;  // 0: 2d
  std::vector<int> k_grid;
  std::string out = "-";
};

int run_deff(const DeffArgs& a) {
  const int n = a.n > 0 ? a.n : 2 * a.d;
  std::vector<int> grid = a.k_grid;
  if (grid.empty()) {
    for (int k = 1; k <= n; ++k) grid.push_back(k);
  }
  const auto rows = bed::deff_compare(a.d, a.s, a.eps, a.a_scale, grid, n);
  with_output(a.out, [&](std::ostream& out) { bed::write_deff_csv(out, rows); });
  return 0;
}

struct SampleArgs {
  std::string data;
  std::string p;
  int draws = 1000;
  std::optional<double> prior_scale;
  std::string prior_file;
  std::optional<std::uint64_t> seed;
  std::string out = "-";
};

// uniform:K gives p_i = K/n; a/b gives p_i = a/b; otherwise a file of n reals.
bed::WeightVector parse_p(const std::string& text, int n) {
  if (text.starts_with("uniform:")) {
    const std::string rest = text.substr(8);
    const auto slash = rest.find('/');
    const double k = std::stod(rest.substr(0, slash));
    const double denom = slash == std::string::npos ? n : std::stod(rest.substr(slash + 1));
    return bed::WeightVector::uniform(n, k / denom);
  }
  const auto slash = text.find('/');
  if (slash != std::string::npos && text.find_first_not_of("0123456789./") == std::string::npos) {
    return bed::WeightVector::uniform(n, std::stod(text.substr(0, slash)) /
                                             std::stod(text.substr(slash + 1)));
  }
  return bed::WeightVector(bed::load_vector_file(text, n));
}

int run_sample(const SampleArgs& a) {
  bed::ExperimentSpec spec;
  spec.dataset = a.data;
  spec.prior_scale = a.prior_scale;
  spec.prior_file = a.prior_file;
  const bed::DesignMatrix x = bed::load_dataset(spec);
  const bed::Prior prior = bed::make_prior(spec, x);
  const bed::WeightVector p = parse_p(a.p, x.n());
  const bed::SpectralKernel kernel = bed::build_kernel(x, prior, p);
  if (a.draws < 1) throw std::invalid_argument("--draws must be >= 1");

  bed::Rng rng(seed_or_env(a.seed));
  std::map<int, int> hist;
  for (int i = 0; i < a.draws; ++i) ++hist[bed::sample(kernel, rng).diag.union_size];
  const bed::ExpectedSize es = bed::expected_size(kernel);

  with_output(a.out, [&](std::ostream& out) {
    out << "size,count,frequency\n";
    for (const auto& [size, count] : hist) {
      fmt::print(out, "{},{},{}\n", size, count, static_cast<double>(count) / a.draws);
    }
  });
  fmt::print(std::cerr, "expected size {} (bound {})\n", es.exact, es.bound);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian experimental design with regularized determinantal point processes"};
  app.require_subcommand(1);

  DesignArgs design;
  auto* cmd_design = app.add_subcommand("design", "Select k rows of a design matrix");
  cmd_design->add_option("--data", design.data, "libsvm file, '-' for stdin")->required();
  cmd_design->add_option("--criterion", design.criterion, "A, C, D or V");
  cmd_design->add_option("--k", design.k, "Subset size")->required();
  cmd_design->add_option("--method", design.method,
                         "rdpp-sdp, rdpp-uniform, greedy, uniform or plen");
  auto* ps = cmd_design->add_option("--prior-scale", design.prior_scale, "A = scale I");
  cmd_design->add_option("--prior-file", design.prior_file, "d x d prior precision")
      ->excludes(ps);
  cmd_design->add_option("--c-vector", design.c_vector, "Direction for C-optimality");
  cmd_design->add_option("--seed", design.seed);
  cmd_design->add_option("--pad", design.pad, "greedy or random");
  cmd_design->add_option("--max-attempts", design.max_attempts);
  cmd_design->add_flag("--normalize", design.normalize, "Scale rows to unit max-norm");

  auto* cmd_bench = app.add_subcommand("bench", "Benchmarks");
  cmd_bench->require_subcommand(1);

  BenchArgs bench;
  auto* cmd_run = cmd_bench->add_subcommand("run", "Criterion value vs k for several methods");
  cmd_run->add_option("--spec", bench.spec_file, "Experiment spec file");
  cmd_run->add_option("--data", bench.data, "libsvm file or lowrank:d,s,eps,n[,seed]");
  cmd_run->add_option("--criterion", bench.criterion);
  auto* bps = cmd_run->add_option("--prior-scale", bench.prior_scale, "A = scale I (default 1/n)");
  cmd_run->add_option("--prior-file", bench.prior_file)->excludes(bps);
  cmd_run->add_option("--c-vector", bench.c_vector);
  cmd_run->add_option("--k-grid", bench.k_grid, "Subset sizes (default d..5d)")->delimiter(',');
  cmd_run->add_option("--trials", bench.trials);
  cmd_run->add_option("--seed", bench.seed);
  cmd_run->add_option("--methods", bench.methods, "Comma-separated method names")
      ->delimiter(',');
  cmd_run->add_option("--pad", bench.pad);
  cmd_run->add_option("--relax-method", bench.relax_method, "mirror-descent or projected-gradient");
  cmd_run->add_flag("--normalize", bench.normalize);
  cmd_run->add_flag("--squared-norms", bench.squared_norms, "predictive-length uses ||x||^2");
  cmd_run->add_option("--timing", bench.timing, "on, or off to write runtime_ms = 0")
      ->check(CLI::IsMember({"on", "off"}));
  cmd_run->add_option("--threads", bench.threads);
  cmd_run->add_option("--out", bench.out, "CSV path, '-' for stdout");

  DeffArgs deff;
  auto* cmd_deff = cmd_bench->add_subcommand("deff", "Scaled vs full effective dimension");
  cmd_deff->add_option("--d", deff.d);
  cmd_deff->add_option("--s", deff.s);
  cmd_deff->add_option("--eps", deff.eps);
  cmd_deff->add_option("--a-scale", deff.a_scale);
  cmd_deff->add_option("--n", deff.n, "Pool size (default 2d)");
  cmd_deff->add_option("--k-grid", deff.k_grid, "Subset sizes (default 1..n)")->delimiter(',');
  cmd_deff->add_option("--out", deff.out);

  SampleArgs sample;
  auto* cmd_sample = app.add_subcommand("sample", "Subset-size histogram of the regularized DPP");
  cmd_sample->add_option("--data", sample.data)->required();
  cmd_sample->add_option("--p", sample.p, "uniform:K[/N], a/b, or a file of n reals")
      ->required();
  cmd_sample->add_option("--draws", sample.draws);
  auto* sps = cmd_sample->add_option("--prior-scale", sample.prior_scale);
  cmd_sample->add_option("--prior-file", sample.prior_file)->excludes(sps);
  cmd_sample->add_option("--seed", sample.seed);
  cmd_sample->add_option("--out", sample.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*cmd_design) return run_design(design);
    if (*cmd_run) return run_bench(bench);
    if (*cmd_deff) return run_deff(deff);
    if (*cmd_sample) return run_sample(sample);
  } catch (const CLI::Error& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const bed::DataError& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kExitData;
  } catch (const bed::NumericalFailure& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
