// Copyright 2026 The GEM Embedding Authors.
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

#ifndef GEM_ERROR_H_
#define GEM_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gem {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file. `line()` is 1-based; 0 when not line-specific.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Input that parses but cannot be processed (empty corpus, constant series,
// non-finite matrix entries, size mismatches).
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(what) {}
};

// Iterative decomposition exceeded its iteration cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::size_t rows, std::size_t cols)
      : Error(what + " (" + std::to_string(rows) + "x" + std::to_string(cols) +
              ")"),
        rows_(rows),
        cols_(cols) {}
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
};

}  // namespace gem

#endif  // GEM_ERROR_H_
