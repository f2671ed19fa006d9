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

#include <atomic>
#include <cstdlib>
#include <string>

#include "gem/error.h"
#include "gem/simd/kernels.h"

namespace gem::simd {
namespace {

bool CpuHasAvx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend DefaultBackend() {
  if (const char* env = std::getenv("GEM_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Backend::kScalar;
    if (want == "avx2" && backend_supported(Backend::kAvx2)) {
      return Backend::kAvx2;
    }
  }
  return backend_supported(Backend::kAvx2) ? Backend::kAvx2 : Backend::kScalar;
}

const KernelTable* TableFor(Backend backend) {
  return backend == Backend::kAvx2 ? avx2_kernels() : &scalar_kernels();
}

std::atomic<const KernelTable*>& ActiveTable() {
  static std::atomic<const KernelTable*> table{TableFor(DefaultBackend())};
  return table;
}

}  // namespace

bool backend_supported(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
      return avx2_kernels() != nullptr && CpuHasAvx2();
  }
  return false;
}

Backend active_backend() {
  return ActiveTable().load() == &scalar_kernels() ? Backend::kScalar
                                                   : Backend::kAvx2;
}

void set_backend(Backend backend) {
  if (!backend_supported(backend)) {
    throw Error("SIMD backend not supported on this CPU: " +
                std::string(backend_name(backend)));
  }
  ActiveTable().store(TableFor(backend));
}

std::string_view backend_name(Backend backend) {
  return backend == Backend::kAvx2 ? "avx2" : "scalar";
}

const KernelTable& kernels() { return *ActiveTable().load(); }

}  // namespace gem::simd
