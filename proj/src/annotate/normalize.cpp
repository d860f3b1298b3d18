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

#include "counterpoint/annotate/normalize.hpp"

#include "counterpoint/core/utf8.hpp"

namespace counterpoint::annotate {

char32_t fold(char32_t cp) {
  switch (cp) {
    case 0x2018: case 0x2019: case 0x201A: case 0x201B: case 0x2032: case 0x02BC:
      return U'\'';
    case 0x201C: case 0x201D: case 0x201E: case 0x201F: case 0x2033:
      return U'"';
    case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2014: case 0x2015: case 0x2212:
      return U'-';
    default:
      return utf8::to_lower(cp);
  }
}

bool is_edge_punct(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) || (cp >= 0x5B && cp <= 0x60) ||
           (cp >= 0x7B && cp <= 0x7E);
  }
  switch (cp) {
    case 0xA1: case 0xA7: case 0xAB: case 0xB6: case 0xB7: case 0xBB: case 0xBF:
    case 0x2026: case 0x2022: case 0x2039: case 0x203A: case 0x3001: case 0x3002:
      return true;
    default:
      return false;
  }
}

NormalizedText normalize_for_match(std::u32string_view source) {
  NormalizedText out;
  out.text.reserve(source.size());
  out.origin.reserve(source.size());
  std::size_t i = 0;
  const std::size_t n = source.size();
  std::size_t pending_space = n;  // source index of the whitespace before the next token
  while (i < n) {
    if (utf8::is_whitespace(source[i])) {
      if (pending_space == n) pending_space = i;
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < n && !utf8::is_whitespace(source[end])) ++end;
    std::size_t b = i;
    std::size_t e = end;
    while (b < e && is_edge_punct(fold(source[b]))) ++b;
    while (e > b && is_edge_punct(fold(source[e - 1]))) --e;
    if (b < e) {
      if (!out.text.empty()) {
        out.text.push_back(U' ');
        out.origin.push_back(pending_space == n ? b : pending_space);
      }
      for (std::size_t k = b; k < e; ++k) {
        out.text.push_back(fold(source[k]));
        out.origin.push_back(k);
      }
    }
    pending_space = n;
    i = end;
  }
  return out;
}

std::string normalize_text(std::string_view text) {
  return utf8::encode(normalize_for_match(utf8::decode(text)).text);
}

std::vector<std::u32string> match_tokens(std::u32string_view text) {
  const auto norm = normalize_for_match(text);
  std::vector<std::u32string> tokens;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= norm.text.size(); ++i) {
    if (i == norm.text.size() || norm.text[i] == U' ') {
      if (i > start) tokens.push_back(norm.text.substr(start, i - start));
      start = i + 1;
    }
  }
  return tokens;
}

}  // namespace counterpoint::annotate
