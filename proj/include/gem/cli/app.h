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

#ifndef GEM_CLI_APP_H_
#define GEM_CLI_APP_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace gem::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Runs the `gem` command line. `args` excludes the program name. Reports go
// to `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Shortest decimal text that parses back to exactly `value`.
std::string format_shortest(double value);

}  // namespace gem::cli

#endif  // GEM_CLI_APP_H_
