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

// Small dense factorizations: modified Gram-Schmidt QR with explicit
// rank-deficiency semantics, one-sided Jacobi thin SVD, and leading left
// singular vectors of a wide matrix via its Gram matrix.

#ifndef GEM_LINALG_DECOMPOSE_H_
#define GEM_LINALG_DECOMPOSE_H_

#include <cstddef>
#include <span>

#include "gem/linalg/matrix.h"

namespace gem {

inline constexpr double kDefaultRankTol = 1e-8;

struct QrResult {
  Matrix q;  // d x k; a column is either unit length or exactly zero
  Matrix r;  // k x k upper triangular, non-negative diagonal
};

// Modified Gram-Schmidt. Column j is declared linearly dependent when its
// residual norm is <= rank_tol * (original norm of column j); its Q column is
// then zero and R(j, j) = 0. Throws DataError on non-finite input.
QrResult qr_decompose(const Matrix& a, double rank_tol = kDefaultRankTol);

struct ResidualBasis {
  Vector q;  // unit novel direction of the target, or all zeros
  Vector r;  // coefficients; r.back() is the residual norm
};

// Last column of Q and R for qr_decompose([context | target]).
ResidualBasis residual_basis(const Matrix& context,
                             std::span<const double> target,
                             double rank_tol = kDefaultRankTol);

// Same as residual_basis(window[:, :-1], window[:, -1]) without splitting the
// matrix. The window must have at least one column.
ResidualBasis residual_basis_of_window(const Matrix& window,
                                       double rank_tol = kDefaultRankTol);

struct SvdResult {
  Matrix u;      // d x p, p = min(d, k); zero columns where sigma == 0
  Vector sigma;  // length p, non-increasing, non-negative
  Matrix v;      // k x p, orthonormal columns
};

// Thin SVD by one-sided (Hestenes) Jacobi. Each nonzero column of U has its
// largest-magnitude entry positive (first such row on ties); V follows.
// Throws ConvergenceError after the sweep cap, DataError on non-finite input.
SvdResult svd_thin(const Matrix& a);

struct LeadingDirections {
  Matrix directions;  // d x k', k' <= min(K, rank)
  Vector sigma;       // singular values, non-increasing
};

// Leading left singular vectors of x (d x N) through the symmetric
// eigendecomposition of x * x^T. Directions whose eigenvalue is numerically
// zero are dropped, so fewer than `count` may be returned. Same sign
// convention as svd_thin.
LeadingDirections top_left_singular(const Matrix& x, std::size_t count);

// Eigenpairs of a symmetric matrix, sorted by descending eigenvalue.
// Householder tridiagonalization followed by implicit QL.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;  // column j pairs with values[j]
};
SymmetricEigen symmetric_eigen(const Matrix& symmetric);

}  // namespace gem

#endif  // GEM_LINALG_DECOMPOSE_H_
