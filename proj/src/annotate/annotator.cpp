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

#include "counterpoint/annotate/annotator.hpp"

#include <algorithm>
#include <cctype>
#include <future>
#include <set>

#include <nlohmann/json.hpp>

#include "counterpoint/core/digest.hpp"
#include "counterpoint/core/utf8.hpp"
#include "counterpoint/error.hpp"

namespace counterpoint::annotate {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  const auto cps = utf8::decode(s);
  std::size_t b = 0;
  std::size_t e = cps.size();
  while (b < e && utf8::is_whitespace(cps[b])) ++b;
  while (e > b && utf8::is_whitespace(cps[e - 1])) --e;
  return utf8::encode(std::u32string_view(cps).substr(b, e - b));
}

// Strips "- ", "* ", "• ", "1. ", "1) ", "(1) " prefixes.
std::string strip_list_marker(std::string line) {
  if (line.rfind("- ", 0) == 0 || line.rfind("* ", 0) == 0) return trim(line.substr(2));
  if (line.rfind("\xE2\x80\xA2 ", 0) == 0) return trim(line.substr(4));
  std::size_t i = 0;
  const bool paren = !line.empty() && line[0] == '(';
  if (paren) ++i;
  const std::size_t digits_start = i;
  while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
  if (i > digits_start && i < line.size() && (line[i] == '.' || line[i] == ')') && i + 1 < line.size() &&
      line[i + 1] == ' ') {
    return trim(line.substr(i + 2));
  }
  return line;
}

std::string format_claim_list(const std::vector<ClaimSpan>& claims) {
  std::string out;
  for (std::size_t i = 0; i < claims.size(); ++i) {
    out += std::to_string(i + 1) + ". " + claims[i].claim_text + "\n";
  }
  return out;
}

bool looks_structured(std::string_view reply) {
  const auto t = trim(reply);
  return !t.empty() && (t.front() == '[' || t.front() == '{' || t.rfind("```", 0) == 0);
}

CounterArgument make_counter(const ClaimSpan& claim, std::string text, const std::string& provider_id,
                             const AnnotateOptions& options) {
  CounterArgument c;
  c.claim_id = claim.claim_id;
  c.full_text = trim(text);
  c.summary = summarize_counter(c.full_text, options.summary_max_code_points);
  c.template_id = llm::TemplateId::CounterGen;
  c.provider_id = provider_id;
  return c;
}

CounterArgument counter_for_single_claim(const Document& doc, const ClaimSpan& claim, const llm::Gateway& gateway,
                                         const AnnotateOptions& options) {
  llm::CompletionResult reply;
  try {
    reply = gateway.complete(llm::TemplateId::CounterGen,
                             {{"title", doc.title()}, {"claims", format_claim_list({claim})}},
                             short_digest(claim.claim_text));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::EmptyCompletion) {
      throw Error(ErrorCode::CounterParseFailure, "empty counter for claim " + claim.claim_id);
    }
    throw;
  }
  if (auto parsed = parse_counter_batch(reply.text, 1); parsed && parsed->count(1) != 0) {
    return make_counter(claim, parsed->at(1), reply.provider_id, options);
  }
  if (looks_structured(reply.text)) {
    throw Error(ErrorCode::CounterParseFailure, "unusable counter reply for claim " + claim.claim_id);
  }
  return make_counter(claim, reply.text, reply.provider_id, options);
}

}  // namespace

std::vector<std::string> parse_claim_list(std::string_view reply) {
  std::vector<std::string> claims;
  std::size_t pos = 0;
  while (pos <= reply.size()) {
    const auto nl = reply.find('\n', pos);
    const auto line = reply.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    std::string cleaned = strip_list_marker(trim(line));
    if (!cleaned.empty() && cleaned != "NONE") claims.push_back(std::move(cleaned));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return claims;
}

std::optional<std::map<std::size_t, std::string>> parse_counter_batch(std::string_view reply,
                                                                      std::size_t claim_count) {
  const auto open = reply.find('[');
  const auto close = reply.rfind(']');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) return std::nullopt;
  json arr = json::parse(reply.substr(open, close - open + 1), nullptr, false);
  if (arr.is_discarded() || !arr.is_array()) return std::nullopt;
  std::map<std::size_t, std::string> out;
  for (const auto& entry : arr) {
    if (!entry.is_object()) continue;
    const auto claim = entry.find("claim");
    auto counter = entry.find("counter");
    if (counter == entry.end()) counter = entry.find("counter_argument");
    if (claim == entry.end() || counter == entry.end() || !claim->is_number_integer() || !counter->is_string()) {
      continue;
    }
    const auto number = claim->get<long long>();
    if (number < 1 || static_cast<std::size_t>(number) > claim_count) continue;
    std::string text = trim(counter->get<std::string>());
    if (text.empty()) continue;
    out.try_emplace(static_cast<std::size_t>(number), std::move(text));
  }
  return out;
}

std::string summarize_counter(std::string_view text, std::size_t max_code_points) {
  const auto cps = utf8::decode(trim(text));
  std::size_t end = cps.size();
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (cps[i] != U'.' && cps[i] != U'!' && cps[i] != U'?') continue;
    std::size_t j = i + 1;
    while (j < cps.size() && (cps[j] == U'"' || cps[j] == U'\'' || cps[j] == U')' || cps[j] == 0x201D ||
                              cps[j] == 0x2019)) {
      ++j;
    }
    if (j == cps.size() || utf8::is_whitespace(cps[j])) {
      end = j;
      break;
    }
  }
  end = std::min(end, max_code_points);
  return trim(utf8::encode(std::u32string_view(cps).substr(0, end)));
}

std::vector<std::string> extract_claims(const Document& doc, const llm::Gateway& gateway) {
  std::string reply;
  try {
    reply = gateway.complete(llm::TemplateId::ClaimExtract, {{"article", doc.body()}}, short_digest(doc.body())).text;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::EmptyCompletion) return {};
    throw;
  }
  std::vector<std::string> claims;
  std::set<std::string> seen;
  for (auto& claim : parse_claim_list(reply)) {
    const std::string key = normalize_text(claim);
    if (key.empty() || !seen.insert(key).second) continue;
    claims.push_back(std::move(claim));
  }
  return claims;
}

std::vector<CounterArgument> generate_counters(const Document& doc, const std::vector<ClaimSpan>& claims,
                                               const llm::Gateway& gateway, const AnnotateOptions& options,
                                               std::size_t* fallback_calls) {
  if (fallback_calls != nullptr) *fallback_calls = 0;
  if (claims.empty()) return {};

  std::map<std::size_t, std::string> batch;
  std::string provider_id = gateway.provider_id();
  try {
    const auto reply = gateway.complete(llm::TemplateId::CounterGen,
                                        {{"title", doc.title()}, {"claims", format_claim_list(claims)}},
                                        short_digest(doc.body()));
    provider_id = reply.provider_id;
    if (auto parsed = parse_counter_batch(reply.text, claims.size())) batch = std::move(*parsed);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyCompletion) throw;
  }

  std::vector<std::future<CounterArgument>> pending(claims.size());
  for (std::size_t i = 0; i < claims.size(); ++i) {
    if (batch.count(i + 1) == 0) {
      pending[i] = std::async(std::launch::async, counter_for_single_claim, std::cref(doc), std::cref(claims[i]),
                              std::cref(gateway), std::cref(options));
    }
  }
  std::vector<CounterArgument> counters;
  counters.reserve(claims.size());
  for (std::size_t i = 0; i < claims.size(); ++i) {
    if (pending[i].valid()) {
      counters.push_back(pending[i].get());
      if (fallback_calls != nullptr) ++*fallback_calls;
    } else {
      counters.push_back(make_counter(claims[i], batch.at(i + 1), provider_id, options));
    }
  }
  return counters;
}

AnnotatedDocument annotate(const Document& doc, const llm::Gateway& gateway, const AnnotateOptions& options) {
  AnnotatedDocument out;
  out.doc_id = doc.id();
  const auto claims = extract_claims(doc, gateway);
  out.metadata.extracted = claims.size();

  const SpanMatcher matcher(doc, options.match);
  std::vector<ClaimSpan> matched;
  for (const auto& claim : claims) {
    if (auto span = matcher.match(claim)) {
      matched.push_back(std::move(*span));
    } else {
      out.metadata.unmatched.push_back(claim);
    }
  }
  out.claims = resolve_overlaps(matched);
  for (const auto& m : matched) {
    const bool kept = std::any_of(out.claims.begin(), out.claims.end(),
                                  [&](const ClaimSpan& c) { return c.claim_id == m.claim_id; });
    if (!kept) out.metadata.overlap_dropped.push_back(m.claim_text);
  }
  out.counters = generate_counters(doc, out.claims, gateway, options, &out.metadata.per_claim_fallbacks);
  return out;
}

}  // namespace counterpoint::annotate
