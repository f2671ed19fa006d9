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

// Double-precision vector kernels used by every inner loop of the library.
//
// Each kernel has a portable scalar reference and, on x86-64, an AVX2+FMA
// variant. The active table is picked once at first use from CPUID; the
// environment variable GEM_SIMD=scalar|avx2 overrides the choice, and tests
// can switch explicitly with set_backend(). Switching backends while other
// threads are computing is not supported.
//
// The two backends agree to within rounding (different summation order), not
// bit for bit. Within one backend results are deterministic.

#ifndef GEM_SIMD_KERNELS_H_
#define GEM_SIMD_KERNELS_H_

#include <cstddef>
#include <span>
#include <string_view>

namespace gem::simd {

enum class Backend { kScalar, kAvx2 };

struct KernelTable {
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // sum_i x[i]^2
  double (*squared_norm)(const double* x, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // x *= a
  void (*scale)(double a, double* x, std::size_t n);
  // Plane rotation: (x, y) <- (c*x - s*y, s*x + c*y).
  void (*rotate)(double* x, double* y, std::size_t n, double c, double s);
};

const KernelTable& scalar_kernels();
// Null when the binary was built without AVX2 support.
const KernelTable* avx2_kernels();

bool backend_supported(Backend backend);
Backend active_backend();
// Throws gem::Error if the backend is not supported on this CPU.
void set_backend(Backend backend);
std::string_view backend_name(Backend backend);

const KernelTable& kernels();

inline double dot(std::span<const double> x, std::span<const double> y) {
  return kernels().dot(x.data(), y.data(), x.size());
}
inline double squared_norm(std::span<const double> x) {
  return kernels().squared_norm(x.data(), x.size());
}
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  kernels().axpy(a, x.data(), y.data(), x.size());
}
inline void scale(double a, std::span<double> x) {
  kernels().scale(a, x.data(), x.size());
}
inline void rotate(std::span<double> x, std::span<double> y, double c,
                   double s) {
  kernels().rotate(x.data(), y.data(), x.size(), c, s);
}

}  // namespace gem::simd

#endif  // GEM_SIMD_KERNELS_H_
