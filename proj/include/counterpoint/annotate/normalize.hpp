// Copyright 2026 The Counterpoint Authors
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

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace counterpoint::annotate {

// Text folded for matching, with a projection back to the source.
// origin[i] is the source code-point index of text[i]; the single spaces that
// stand in for whitespace runs map to the first whitespace code point of the
// run.
struct NormalizedText {
  std::u32string text;
  std::vector<std::size_t> origin;
};

// Curly quotes become straight quotes, dash variants become '-', letters are
// lowercased.
char32_t fold(char32_t cp);

// Punctuation stripped from token edges (evaluated after fold()).
bool is_edge_punct(char32_t cp);

// Lowercase, fold quotes and dashes, strip leading and trailing punctuation
// from each whitespace token, drop tokens that become empty and join the rest
// with single spaces.
NormalizedText normalize_for_match(std::u32string_view source);

// UTF-8 convenience wrapper over normalize_for_match().
std::string normalize_text(std::string_view text);

// Tokens of normalize_text(text).
std::vector<std::u32string> match_tokens(std::u32string_view text);

}  // namespace counterpoint::annotate
