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

#include <algorithm>
#include <cmath>

#include "gem/error.h"
#include "gem/linalg/decompose.h"
#include "gem/simd/kernels.h"

namespace gem {
namespace {

// Orthonormalizes the columns of `work` in place, writing coefficients into
// the upper triangle of `r` (k x k, zero-initialized). Columns found to be
// dependent are zeroed.
void ModifiedGramSchmidt(Matrix& work, Matrix& r, double rank_tol) {
  const std::size_t k = work.cols();
  std::vector<bool> live(k, false);
  for (std::size_t j = 0; j < k; ++j) {
    std::span<double> column = work.col(j);
    const double original_norm = std::sqrt(simd::squared_norm(column));
    for (std::size_t i = 0; i < j; ++i) {
      if (!live[i]) continue;
      const double coeff = simd::dot(work.col(i), column);
      r(i, j) = coeff;
      simd::axpy(-coeff, work.col(i), column);
    }
    const double residual = std::sqrt(simd::squared_norm(column));
    if (original_norm == 0.0 || residual <= rank_tol * original_norm) {
      std::fill(column.begin(), column.end(), 0.0);
      r(j, j) = 0.0;
    } else {
      simd::scale(1.0 / residual, column);
      r(j, j) = residual;
      live[j] = true;
    }
  }
}

void RequireFinite(const Matrix& a, const char* who) {
  if (!a.AllFinite()) throw DataError(std::string(who) + ": non-finite input");
}

}  // namespace

QrResult qr_decompose(const Matrix& a, double rank_tol) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw DataError("qr_decompose: empty matrix");
  }
  RequireFinite(a, "qr_decompose");
  QrResult out{a, Matrix(a.cols(), a.cols())};
  ModifiedGramSchmidt(out.q, out.r, rank_tol);
  return out;
}

ResidualBasis residual_basis_of_window(const Matrix& window, double rank_tol) {
  if (window.cols() == 0) {
    throw DataError("residual_basis: window has no target column");
  }
  RequireFinite(window, "residual_basis");
  Matrix work = window;
  Matrix r(window.cols(), window.cols());
  ModifiedGramSchmidt(work, r, rank_tol);
  const std::size_t last = window.cols() - 1;
  ResidualBasis out;
  out.q.assign(work.col(last).begin(), work.col(last).end());
  out.r.resize(window.cols());
  for (std::size_t i = 0; i < window.cols(); ++i) out.r[i] = r(i, last);
  return out;
}

ResidualBasis residual_basis(const Matrix& context,
                             std::span<const double> target, double rank_tol) {
  Matrix window;
  if (context.cols() > 0) {
    if (context.rows() != target.size()) {
      throw DataError("residual_basis: context rows do not match target");
    }
    window = context;
  }
  window.AppendColumn(target);
  return residual_basis_of_window(window, rank_tol);
}

}  // namespace gem
