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

// Flat subset of TOML: one `key = value` per line, values are quoted
// strings, numbers, booleans or single-line arrays of those.

#include <charconv>
#include <fstream>
#include <istream>
#include <string>
#include <variant>
#include <vector>

#include "bed/bench.h"
#include "bed/errors.h"

namespace bed {

namespace {

using Scalar = std::variant<std::string, double, bool>;

struct Value {
  std::vector<Scalar> items;
  bool is_array = false;
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line) : s_(text), line_(line) {}

  Value value() {
    skip_ws();
    Value v;
    if (peek() == '[') {
      ++pos_;
      v.is_array = true;
      skip_ws();
      while (peek() != ']') {
        v.items.push_back(scalar());
        skip_ws();
        if (peek() == ',') {
          ++pos_;
          skip_ws();
        } else if (peek() != ']') {
          fail("expected ',' or ']' in array");
        }
      }
      ++pos_;
    } else {
      v.items.push_back(scalar());
    }
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] != '#') fail("trailing characters after value");
    return v;
  }

 private:
  char peek() const {
    if (pos_ >= s_.size()) fail("unexpected end of line");
    return s_[pos_];
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  Scalar scalar() {
    const char c = peek();
    if (c == '"') {
      const auto end = s_.find('"', pos_ + 1);
      if (end == std::string_view::npos) fail("unterminated string");
      std::string out(s_.substr(pos_ + 1, end - pos_ - 1));
      pos_ = end + 1;
      return out;
    }
    if (s_.substr(pos_).starts_with("true")) {
      pos_ += 4;
      return true;
    }
    if (s_.substr(pos_).starts_with("false")) {
      pos_ += 5;
      return false;
    }
    const char* first = s_.data() + pos_;
    if (*first == '+') ++first;
    double d = 0.0;
    const auto [ptr, ec] = std::from_chars(first, s_.data() + s_.size(), d);
    if (ec != std::errc()) fail("expected a string, number or boolean");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return d;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

struct Field {
  std::string key;
  Value value;
  std::size_t line;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line, key + ": " + what);
  }

  const Scalar& one() const {
    if (value.is_array) fail("expected a single value");
    return value.items.front();
  }

  std::string str() const {
    if (const auto* s = std::get_if<std::string>(&one())) return *s;
    fail("expected a string");
  }

  double num() const {
    if (const auto* d = std::get_if<double>(&one())) return *d;
    fail("expected a number");
  }

  bool boolean() const {
    if (const auto* b = std::get_if<bool>(&one())) return *b;
    fail("expected true or false");
  }

  long long integer() const {
    const double d = num();
    if (d != static_cast<double>(static_cast<long long>(d))) fail("expected an integer");
    return static_cast<long long>(d);
  }

  std::vector<Scalar> list() const {
    if (!value.is_array) fail("expected an array");
    return value.items;
  }
};

}  // namespace

ExperimentSpec parse_spec(std::istream& in) {
  ExperimentSpec spec;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
    Field f{std::string(trim(line.substr(0, eq))), {}, line_no};
    f.value = LineParser(line.substr(eq + 1), line_no).value();

    try {
      if (f.key == "dataset") {
        spec.dataset = f.str();
      } else if (f.key == "normalize") {
        spec.normalize = f.boolean();
      } else if (f.key == "prior_scale") {
        spec.prior_scale = f.num();
      } else if (f.key == "prior_file") {
        spec.prior_file = f.str();
      } else if (f.key == "criterion") {
        spec.criterion = parse_criterion_kind(f.str());
      } else if (f.key == "c_vector") {
        spec.c_vector_file = f.str();
      } else if (f.key == "k_grid") {
        spec.k_grid.clear();
        for (const Scalar& s : f.list()) {
          const auto* d = std::get_if<double>(&s);
          if (!d || *d != static_cast<int>(*d)) f.fail("k_grid entries must be integers");
          spec.k_grid.push_back(static_cast<int>(*d));
        }
      } else if (f.key == "trials") {
        spec.trials = static_cast<int>(f.integer());
      } else if (f.key == "seed") {
        spec.seed = static_cast<std::uint64_t>(f.integer());
      } else if (f.key == "methods") {
        spec.methods.clear();
        for (const Scalar& s : f.list()) {
          const auto* name = std::get_if<std::string>(&s);
          if (!name) f.fail("methods entries must be strings");
          spec.methods.push_back(parse_method(*name));
        }
      } else if (f.key == "pad") {
        spec.select.pad = parse_pad_rule(f.str());
      } else if (f.key == "max_attempts") {
        spec.select.max_attempts = static_cast<int>(f.integer());
      } else if (f.key == "relax_method") {
        spec.relax.method = parse_relax_method(f.str());
      } else if (f.key == "relax_max_iters") {
        spec.relax.max_iters = static_cast<int>(f.integer());
      } else if (f.key == "relax_tol") {
        spec.relax.tol = f.num();
      } else if (f.key == "squared_norms") {
        spec.squared_norms = f.boolean();
      } else if (f.key == "timing") {
        spec.timing = f.boolean();
      } else if (f.key == "threads") {
        spec.threads = static_cast<int>(f.integer());
      } else {
        f.fail("unknown key");
      }
    } catch (const std::invalid_argument& e) {
      f.fail(e.what());
    }
  }
  if (spec.dataset.empty()) throw ParseError(line_no, "missing required key 'dataset'");
  return spec;
}

ExperimentSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open spec file '" + path + "'");
  try {
    return parse_spec(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.detail());
  }
}

}  // namespace bed
