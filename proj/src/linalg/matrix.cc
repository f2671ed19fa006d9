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

#include "gem/linalg/matrix.h"

#include <algorithm>
#include <cmath>

#include "gem/error.h"
#include "gem/simd/kernels.h"

namespace gem {

Matrix Matrix::FromColumns(std::span<const Vector> columns) {
  if (columns.empty()) return Matrix();
  Matrix m(columns.front().size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != m.rows()) {
      throw DataError("FromColumns: column " + std::to_string(j) +
                      " has length " + std::to_string(columns[j].size()) +
                      ", expected " + std::to_string(m.rows()));
    }
    std::copy(columns[j].begin(), columns[j].end(), m.col(j).begin());
  }
  return m;
}

void Matrix::AppendColumn(std::span<const double> column) {
  if (cols_ == 0 && rows_ == 0) rows_ = column.size();
  if (column.size() != rows_) {
    throw DataError("AppendColumn: length " + std::to_string(column.size()) +
                    " does not match row count " + std::to_string(rows_));
  }
  data_.insert(data_.end(), column.begin(), column.end());
  ++cols_;
}

bool Matrix::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double x) { return std::isfinite(x); });
}

double Matrix::FrobeniusNorm() const {
  return std::sqrt(simd::squared_norm(data_));
}

Matrix Matrix::Transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    for (std::size_t r = 0; r < rows_; ++r) t(c, r) = (*this)(r, c);
  }
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DataError("matrix product: shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      simd::axpy(b(k, j), a.col(k), out.col(j));
    }
  }
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DataError("matrix difference: shape mismatch");
  }
  Matrix out = a;
  simd::axpy(-1.0, b.data(), out.data());
  return out;
}

}  // namespace gem
