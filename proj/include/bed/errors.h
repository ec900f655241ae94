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

#ifndef BED_ERRORS_H_
#define BED_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bed {

// Data problems: malformed input files, invalid user-supplied vectors.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what),
        line_(line),
        detail_(what) {}

  std::size_t line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

class AllZeroRows : public DataError {
 public:
  AllZeroRows() : DataError("every row of the design matrix is zero") {}
};

// Numerical failures. Callers that can continue (criterion evaluation,
// greedy scoring) map SingularMatrix to +infinity instead of propagating.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrix : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class InfeasibleWeights : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NoSizeFeasibleDraw : public NumericalFailure {
 public:
  explicit NoSizeFeasibleDraw(int attempts)
      : NumericalFailure("no draw with |S| <= k in " +
                         std::to_string(attempts) + " attempts") {}
};

class TooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TooFewValues : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace bed

#endif  // BED_ERRORS_H_
