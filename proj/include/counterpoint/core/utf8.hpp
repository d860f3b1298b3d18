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

namespace counterpoint::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes UTF-8; malformed sequences decode to U+FFFD, one per offending byte.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);

// Byte offset of every code point plus a trailing entry equal to text.size().
// `text` must be well-formed UTF-8.
std::vector<std::size_t> code_point_offsets(std::string_view text);

std::size_t length(std::string_view text);

bool is_whitespace(char32_t cp);

// ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic case folding. Anything
// else is returned unchanged.
char32_t to_lower(char32_t cp);

}  // namespace counterpoint::utf8
