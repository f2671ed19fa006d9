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
#include <limits>
#include <numeric>

#include "gem/error.h"
#include "gem/linalg/decompose.h"
#include "gem/simd/kernels.h"

namespace gem {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxJacobiSweeps = 100;

// Eigenvalues below this fraction of the largest are treated as zero when
// deciding the rank of a Gram matrix (a singular-value ratio of 1e-6).
constexpr double kGramRankTol = 1e-12;

// Flips the sign of column j of `u` (and of `v`, if given) so that its
// largest-magnitude entry is positive. Lowest row wins ties.
void CanonicalizeSign(Matrix& u, Matrix* v, std::size_t j) {
  std::span<double> column = u.col(j);
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t i = 0; i < column.size(); ++i) {
    if (std::abs(column[i]) > best_abs) {
      best_abs = std::abs(column[i]);
      best = i;
    }
  }
  if (best_abs > 0.0 && column[best] < 0.0) {
    simd::scale(-1.0, column);
    if (v != nullptr) simd::scale(-1.0, v->col(j));
  }
}

// One-sided Jacobi on the columns of `work` (rows x cols). On return the
// columns of `work` are mutually orthogonal and work_in = work * rot^T.
void HestenesJacobi(Matrix& work, Matrix& rot) {
  const std::size_t n = work.cols();
  const double tol = std::max<double>(work.rows(), 1.0) * kEps;
  const double frob = work.FrobeniusNorm();
  const double negligible = (kEps * frob) * (kEps * frob);
  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = simd::squared_norm(work.col(p));
        const double beta = simd::squared_norm(work.col(q));
        if (alpha <= negligible || beta <= negligible) continue;
        const double gamma = simd::dot(work.col(p), work.col(q));
        if (std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        simd::rotate(work.col(p), work.col(q), c, s);
        simd::rotate(rot.col(p), rot.col(q), c, s);
        rotated = true;
      }
    }
    if (!rotated) return;
  }
  throw ConvergenceError("svd_thin: Jacobi sweeps did not converge",
                         work.rows(), work.cols());
}

// Householder reduction of the symmetric matrix held in `v` to tridiagonal
// form. On return `diag`/`off` hold the tridiagonal and `v` the accumulated
// orthogonal transform. Adapted from the EISPACK tred2 routine.
void Tridiagonalize(Matrix& v, Vector& diag, Vector& off) {
  const std::size_t n = v.rows();
  for (std::size_t j = 0; j < n; ++j) diag[j] = v(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(diag[k]);
    if (scale == 0.0) {
      off[i] = diag[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        diag[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        diag[k] /= scale;
        h += diag[k] * diag[k];
      }
      double f = diag[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      off[i] = scale * g;
      h -= f * g;
      diag[i - 1] = f - g;
      std::fill(off.begin(), off.begin() + i, 0.0);

      for (std::size_t j = 0; j < i; ++j) {
        f = diag[j];
        v(j, i) = f;
        g = off[j] + v(j, j) * f;
        // Column j below the diagonal, rows j+1 .. i-1.
        if (j + 1 < i) {
          const std::size_t len = i - j - 1;
          const double* col = &v(j + 1, j);
          g += simd::kernels().dot(col, &diag[j + 1], len);
          simd::kernels().axpy(f, col, &off[j + 1], len);
        }
        off[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        off[j] /= h;
        f += off[j] * diag[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) off[j] -= hh * diag[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = diag[j];
        g = off[j];
        double* col = &v(j, j);
        const std::size_t len = i - j;
        simd::kernels().axpy(-f, &off[j], col, len);
        simd::kernels().axpy(-g, &diag[j], col, len);
        diag[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    diag[i] = h;
  }

  // Accumulate the transformations.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = diag[i + 1];
    if (h != 0.0) {
      const std::size_t len = i + 1;
      const double* next = &v(0, i + 1);
      for (std::size_t k = 0; k < len; ++k) diag[k] = next[k] / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double* col = &v(0, j);
        const double g = simd::kernels().dot(next, col, len);
        simd::kernels().axpy(-g, diag.data(), col, len);
      }
    }
    for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    diag[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  off[0] = 0.0;
}

// Implicit QL on the tridiagonal (diag, off), accumulating into `v`.
// Adapted from the EISPACK tql2 routine.
void TridiagonalQl(Matrix& v, Vector& diag, Vector& off) {
  const std::size_t n = v.rows();
  for (std::size_t i = 1; i < n; ++i) off[i - 1] = off[i];
  off[n - 1] = 0.0;

  const std::size_t max_iterations = 100 * n;
  std::size_t iterations = 0;
  double shift_total = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(diag[l]) + std::abs(off[l]));
    std::size_t m = l;
    while (m < n && std::abs(off[m]) > kEps * tst1) ++m;
    if (m == n) m = n - 1;

    if (m > l) {
      do {
        if (++iterations > max_iterations) {
          throw ConvergenceError("symmetric_eigen: QL iteration cap reached",
                                 n, n);
        }
        double g = diag[l];
        double p = (diag[l + 1] - g) / (2.0 * off[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        diag[l] = off[l] / (p + r);
        diag[l + 1] = off[l] * (p + r);
        const double dl1 = diag[l + 1];
        double h = g - diag[l];
        for (std::size_t i = l + 2; i < n; ++i) diag[i] -= h;
        shift_total += h;

        p = diag[m];
        double c = 1.0;
        double c2 = c;
        double c3 = c;
        const double el1 = off[l + 1];
        double s = 0.0;
        double s2 = 0.0;
        for (std::size_t i = m; i-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * off[i];
          h = c * p;
          r = std::hypot(p, off[i]);
          off[i + 1] = s * r;
          s = off[i] / r;
          c = p / r;
          p = c * diag[i] - s * g;
          diag[i + 1] = h + s * (c * g + s * diag[i]);
          simd::rotate(v.col(i), v.col(i + 1), c, s);
        }
        p = -s * s2 * c3 * el1 * off[l] / dl1;
        off[l] = s * p;
        diag[l] = c * p;
      } while (std::abs(off[l]) > kEps * tst1);
    }
    diag[l] += shift_total;
    off[l] = 0.0;
  }
}

}  // namespace

SymmetricEigen symmetric_eigen(const Matrix& symmetric) {
  const std::size_t n = symmetric.rows();
  if (n == 0 || symmetric.cols() != n) {
    throw DataError("symmetric_eigen: matrix must be square and non-empty");
  }
  if (!symmetric.AllFinite()) {
    throw DataError("symmetric_eigen: non-finite input");
  }
  Matrix v = symmetric;
  Vector diag(n);
  Vector off(n);
  Tridiagonalize(v, diag, off);
  TridiagonalQl(v, diag, off);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return diag[a] > diag[b];
  });
  SymmetricEigen out{Vector(n), Matrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = diag[order[j]];
    std::copy(v.col(order[j]).begin(), v.col(order[j]).end(),
              out.vectors.col(j).begin());
  }
  return out;
}

SvdResult svd_thin(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw DataError("svd_thin: empty matrix");
  }
  if (!a.AllFinite()) throw DataError("svd_thin: non-finite input");

  // Jacobi runs on whichever orientation has fewer columns. For a wide input
  // A^T = W * rot^T, so A = rot * W^T and the roles of U and V swap.
  const bool wide = a.cols() > a.rows();
  Matrix work = wide ? a.Transposed() : a;
  Matrix rot = Matrix::Identity(work.cols());
  HestenesJacobi(work, rot);

  const std::size_t p = work.cols();
  Vector norms(p);
  for (std::size_t j = 0; j < p; ++j) {
    norms[j] = std::sqrt(simd::squared_norm(work.col(j)));
  }
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return norms[x] > norms[y];
  });
  const double largest = norms[order.front()];
  const double zero_cut =
      largest * static_cast<double>(std::max(a.rows(), a.cols())) * kEps;

  SvdResult out{Matrix(a.rows(), p), Vector(p), Matrix(a.cols(), p)};
  for (std::size_t j = 0; j < p; ++j) {
    const std::size_t src = order[j];
    const double sigma = norms[src] <= zero_cut ? 0.0 : norms[src];
    out.sigma[j] = sigma;
    // Normalized Jacobi column and its rotation column.
    Vector left(work.col(src).begin(), work.col(src).end());
    if (sigma > 0.0) {
      simd::scale(1.0 / norms[src], left);
    } else {
      std::fill(left.begin(), left.end(), 0.0);
    }
    std::span<const double> right = rot.col(src);
    if (wide) {
      std::copy(right.begin(), right.end(), out.u.col(j).begin());
      std::copy(left.begin(), left.end(), out.v.col(j).begin());
      if (sigma == 0.0) {
        std::fill(out.u.col(j).begin(), out.u.col(j).end(), 0.0);
      }
    } else {
      std::copy(left.begin(), left.end(), out.u.col(j).begin());
      std::copy(right.begin(), right.end(), out.v.col(j).begin());
    }
    CanonicalizeSign(out.u, &out.v, j);
  }
  return out;
}

LeadingDirections top_left_singular(const Matrix& x, std::size_t count) {
  if (x.rows() == 0 || x.cols() == 0) {
    throw DataError("top_left_singular: empty matrix");
  }
  if (!x.AllFinite()) throw DataError("top_left_singular: non-finite input");
  const std::size_t d = x.rows();

  // Gram = sum_i x_i x_i^T; fill the upper triangle column by column, then
  // mirror.
  Matrix gram(d, d);
  for (std::size_t i = 0; i < x.cols(); ++i) {
    std::span<const double> column = x.col(i);
    for (std::size_t b = 0; b < d; ++b) {
      if (column[b] == 0.0) continue;
      simd::kernels().axpy(column[b], column.data(), &gram(0, b), b + 1);
    }
  }
  for (std::size_t b = 0; b < d; ++b) {
    for (std::size_t a = b + 1; a < d; ++a) gram(a, b) = gram(b, a);
  }

  SymmetricEigen eig = symmetric_eigen(gram);
  const double top = std::max(eig.values.front(), 0.0);
  std::size_t keep = 0;
  const std::size_t limit = std::min(count, d);
  while (keep < limit && top > 0.0 && eig.values[keep] > kGramRankTol * top) {
    ++keep;
  }

  LeadingDirections out{Matrix(d, keep), Vector(keep)};
  for (std::size_t j = 0; j < keep; ++j) {
    out.sigma[j] = std::sqrt(std::max(eig.values[j], 0.0));
    std::copy(eig.vectors.col(j).begin(), eig.vectors.col(j).end(),
              out.directions.col(j).begin());
    CanonicalizeSign(out.directions, nullptr, j);
  }
  return out;
}

}  // namespace gem
