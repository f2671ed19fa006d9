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

#ifndef GEM_TEXTPROC_H_
#define GEM_TEXTPROC_H_

#include <string>
#include <string_view>
#include <vector>

namespace gem {

struct TokenizerConfig {
  bool lowercase = true;
};

// Word/punctuation tokenization of UTF-8 text: maximal runs of word
// characters (letters, digits, underscore) or of other non-space characters,
// the same split as the regex \w+|[^\w\s]+. Tokens without a letter or digit
// are then dropped, so "Don't stop!" yields {"don", "t", "stop"}.
//
// Non-ASCII code points are classified with a built-in table covering the
// common Unicode punctuation, symbol and space blocks; everything else counts
// as a word character. Lowercasing covers ASCII, Latin-1, Latin Extended-A,
// Greek and Cyrillic.
std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizerConfig& cfg = {});

}  // namespace gem

#endif  // GEM_TEXTPROC_H_
