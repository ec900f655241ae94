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

#include "bed/dataset.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string_view>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "bed/errors.h"
#include "bed/rng.h"

namespace bed {

DesignMatrix::DesignMatrix(RowMatrix rows, std::optional<Vector> labels)
    : rows_(std::move(rows)), labels_(std::move(labels)) {
  if (rows_.rows() < 1 || rows_.cols() < 1) {
    throw DataError("design matrix must have n >= 1 and d >= 1");
  }
  if (!rows_.allFinite()) throw DataError("design matrix has non-finite entries");
  if (labels_ && labels_->size() != rows_.rows()) {
    throw DataError("label count does not match row count");
  }
}

Prior::Prior(SymMatrix a_in, std::optional<Vector> c_in)
    : a(std::move(a_in)), c(std::move(c_in)) {
  if (!is_psd(a)) throw DataError("prior precision is not positive semidefinite");
  if (c && c->size() != a.dim()) throw DataError("c vector has wrong dimension");
}

namespace {

struct SparseRow {
  double label;
  std::vector<std::pair<int, double>> entries;
};

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

bool parse_real(std::string_view tok, double& out) {
  // from_chars rejects a leading '+', which some writers emit.
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size() && std::isfinite(out);
}

bool parse_index(std::string_view tok, long& out) {
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace

DesignMatrix parse_libsvm(std::istream& in) {
  std::vector<SparseRow> rows;
  long max_index = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    const auto tokens = split_ws(view);
    if (tokens.empty()) continue;

    SparseRow row;
    if (!parse_real(tokens[0], row.label)) {
      throw ParseError(line_no, fmt::format("bad label '{}'", tokens[0]));
    }
    long prev = 0;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const std::string_view tok = tokens[t];
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(line_no, fmt::format("expected idx:val, got '{}'", tok));
      }
      long idx = 0;
      double val = 0.0;
      if (!parse_index(tok.substr(0, colon), idx)) {
        throw ParseError(line_no, fmt::format("bad index in '{}'", tok));
      }
      if (idx <= 0) {
        throw ParseError(line_no, fmt::format("nonpositive index {}", idx));
      }
      if (idx <= prev) {
        throw ParseError(line_no, fmt::format("index {} does not increase", idx));
      }
      if (!parse_real(tok.substr(colon + 1), val)) {
        throw ParseError(line_no, fmt::format("bad value in '{}'", tok));
      }
      prev = idx;
      row.entries.emplace_back(static_cast<int>(idx - 1), val);
    }
    max_index = std::max(max_index, prev);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(line_no, "no data rows");
  if (max_index == 0) throw ParseError(line_no, "no features in any row");

  RowMatrix x = RowMatrix::Zero(static_cast<Eigen::Index>(rows.size()), max_index);
  Vector labels(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    labels(i) = rows[i].label;
    for (const auto& [j, v] : rows[i].entries) x(i, j) = v;
  }
  return DesignMatrix(std::move(x), std::move(labels));
}

DesignMatrix load_libsvm(const std::string& path) {
  if (path == "-") return parse_libsvm(std::cin);
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  try {
    return parse_libsvm(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.detail());
  }
}

void write_libsvm(std::ostream& out, const DesignMatrix& x) {
  const bool last_column_empty = (x.x().col(x.d() - 1).array() == 0.0).all();
  for (int i = 0; i < x.n(); ++i) {
    std::string line = fmt::format("{}", x.labels() ? (*x.labels())(i) : 0.0);
    for (int j = 0; j < x.d(); ++j) {
      const double v = x.x()(i, j);
      if (v != 0.0) line += fmt::format(" {}:{}", j + 1, v);
    }
    // Keeps d stable across a round trip.
    if (i == 0 && last_column_empty) line += fmt::format(" {}:0", x.d());
    out << line << '\n';
  }
}

SymMatrix covariance(const DesignMatrix& x) {
  Matrix g = Matrix::Zero(x.d(), x.d());
  g.selfadjointView<Eigen::Lower>().rankUpdate(x.x().transpose());
  return SymMatrix(g.selfadjointView<Eigen::Lower>());
}

SymMatrix covariance(const DesignMatrix& x, const Vector& weights) {
  if (weights.size() != x.n()) throw std::invalid_argument("covariance: weight length");
  if (!weights.allFinite()) throw std::invalid_argument("covariance: non-finite weight");
  const Matrix g = x.x().transpose() * weights.asDiagonal() * x.x();
  return SymMatrix(g);
}

SymMatrix subset_covariance(const DesignMatrix& x, std::span<const int> subset) {
  Matrix g = Matrix::Zero(x.d(), x.d());
  for (int i : subset) {
    g.selfadjointView<Eigen::Lower>().rankUpdate(x.x().row(i).transpose());
  }
  return SymMatrix(g.selfadjointView<Eigen::Lower>());
}

DesignMatrix normalize_rows(const DesignMatrix& x) {
  RowMatrix rows = x.x();
  for (int i = 0; i < x.n(); ++i) {
    const double m = rows.row(i).cwiseAbs().maxCoeff();
    if (m > 0.0) rows.row(i) /= m;
  }
  return DesignMatrix(std::move(rows), x.labels());
}

Vector lowrank_diagonal(int d, int s, double eps) {
  if (d < 1 || s < 1 || s > d) throw std::invalid_argument("lowrank_diagonal: need 1 <= s <= d");
  if (!(eps > 0.0)) throw std::invalid_argument("lowrank_diagonal: eps must be positive");
  Vector diag = Vector::Constant(d, eps);
  diag.head(s).array() += (1.0 - eps) * static_cast<double>(d) / s;
  return diag;
}

DesignMatrix synth_diagonal(const Vector& diag, int n, std::uint64_t seed) {
  const int d = static_cast<int>(diag.size());
  if (d < 1 || n < d) throw std::invalid_argument("synth_diagonal: need n >= d >= 1");
  if ((diag.array() < 0.0).any()) throw std::invalid_argument("synth_diagonal: negative entry");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed, hash_tag("synth"));
  for (int i = n - 1; i > 0; --i) {
    std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  }

  RowMatrix rows = RowMatrix::Zero(n, d);
  for (int j = 0; j < n; ++j) {
    const int axis = j % d;
    const int copies = n / d + (axis < n % d ? 1 : 0);
    rows(order[j], axis) = std::sqrt(diag(axis) / copies);
  }
  return DesignMatrix(std::move(rows));
}

DesignMatrix synth_lowrank(int d, int s, double eps, int n, std::uint64_t seed) {
  return synth_diagonal(lowrank_diagonal(d, s, eps), n, seed);
}

namespace {

std::vector<double> read_reals(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::vector<double> values;
  std::string tok;
  while (in >> tok) {
    double v = 0.0;
    if (!parse_real(tok, v)) throw DataError(path + ": bad number '" + tok + "'");
    values.push_back(v);
  }
  return values;
}

}  // namespace

Prior load_prior_file(const std::string& path, int d) {
  const auto values = read_reals(path);
  if (values.size() != static_cast<std::size_t>(d) * d) {
    throw DataError(fmt::format("{}: expected {}x{} matrix, found {} numbers", path, d, d,
                                values.size()));
  }
  Matrix a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = values[static_cast<std::size_t>(i) * d + j];
  }
  try {
    return Prior(SymMatrix(a));
  } catch (const std::invalid_argument& e) {
    throw DataError(path + ": " + e.what());
  }
}

Vector load_vector_file(const std::string& path, int expected_len) {
  const auto values = read_reals(path);
  if (values.size() != static_cast<std::size_t>(expected_len)) {
    throw DataError(fmt::format("{}: expected {} numbers, found {}", path, expected_len,
                                values.size()));
  }
  return Eigen::Map<const Vector>(values.data(), expected_len);
}

}  // namespace bed
