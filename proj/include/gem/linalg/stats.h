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

#ifndef GEM_LINALG_STATS_H_
#define GEM_LINALG_STATS_H_

#include <span>

namespace gem {

// Sample Pearson correlation. Throws DataError when the lengths differ, when
// fewer than two samples are given, or when either series is constant.
double pearson(std::span<const double> x, std::span<const double> y);

}  // namespace gem

#endif  // GEM_LINALG_STATS_H_
