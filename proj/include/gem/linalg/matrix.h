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

#ifndef GEM_LINALG_MATRIX_H_
#define GEM_LINALG_MATRIX_H_

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace gem {

using Vector = std::vector<double>;

// Dense column-major matrix of doubles. Columns are contiguous, which is the
// access pattern of every algorithm here (word vectors are columns).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Matrix Identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  // Builds a rows x cols matrix from column vectors of equal length.
  static Matrix FromColumns(std::span<const Vector> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[c * rows_ + r];
  }
  double operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[c * rows_ + r];
  }

  std::span<double> col(std::size_t c) {
    assert(c < cols_);
    return {data_.data() + c * rows_, rows_};
  }
  std::span<const double> col(std::size_t c) const {
    assert(c < cols_);
    return {data_.data() + c * rows_, rows_};
  }

  // Appends a column; on an empty 0x0 matrix this fixes the row count.
  void AppendColumn(std::span<const double> column);

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  bool AllFinite() const;
  double FrobeniusNorm() const;

  Matrix Transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

}  // namespace gem

#endif  // GEM_LINALG_MATRIX_H_
