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

#include "counterpoint/analytics/study.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "counterpoint/analytics/events.hpp"
#include "counterpoint/core/files.hpp"
#include "counterpoint/error.hpp"

namespace counterpoint::analytics {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line = line.substr(comma + 1);
  }
  return out;
}

template <typename T>
T number(std::string_view field, const char* name) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorCode::ParseError, std::string(name) + " is not a number: '" + std::string(field) + "'");
  }
  return value;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

}  // namespace

std::string_view to_string(Condition condition) {
  return condition == Condition::Baseline ? "Baseline" : "System";
}

std::string_view to_string(Measure measure) {
  switch (measure) {
    case Measure::Claims: return "claims";
    case Measure::Counters: return "counters";
    case Measure::ClaimsPerMinute: return "claims_per_minute";
    case Measure::CountersPerMinute: return "counters_per_minute";
    case Measure::StanceDelta: return "stance_delta";
  }
  return "claims";
}

Condition condition_from_string(std::string_view name) {
  const std::string l = lower(name);
  if (l == "baseline") return Condition::Baseline;
  if (l == "system") return Condition::System;
  throw Error(ErrorCode::InvalidArgument, "unknown condition: " + std::string(name));
}

Measure measure_from_string(std::string_view name) {
  const std::string l = lower(name);
  for (auto m : {Measure::Claims, Measure::Counters, Measure::ClaimsPerMinute, Measure::CountersPerMinute,
                 Measure::StanceDelta}) {
    if (to_string(m) == l) return m;
  }
  if (l == "rate" || l == "claims_rate") return Measure::ClaimsPerMinute;
  if (l == "counters_rate") return Measure::CountersPerMinute;
  if (l == "stance") return Measure::StanceDelta;
  throw Error(ErrorCode::InvalidArgument, "unknown measure: " + std::string(name));
}

std::vector<ConditionRecord> parse_study_csv(std::string_view text) {
  std::vector<ConditionRecord> out;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      std::string compact;
      for (char c : line) {
        if (c != ' ' && c != '\t') compact.push_back(c);
      }
      if (compact != kStudyHeader) {
        throw Error(ErrorCode::ParseError, "study file header must be: " + std::string(kStudyHeader));
      }
      header_seen = true;
      continue;
    }
    const auto f = split(line);
    try {
      if (f.size() != 8) throw Error(ErrorCode::ParseError, "expected 8 fields, got " + std::to_string(f.size()));
      ConditionRecord r;
      r.participant_id = std::string(f[0]);
      if (r.participant_id.empty()) throw Error(ErrorCode::ParseError, "participant_id is empty");
      r.condition = condition_from_string(f[1]);
      r.article_lean = lean_from_string(f[2]);
      r.n_claims = number<long>(f[3], "n_claims");
      r.n_counters = number<long>(f[4], "n_counters");
      if (r.n_claims < 0 || r.n_counters < 0) throw Error(ErrorCode::ParseError, "counts must be non-negative");
      r.duration_minutes = number<double>(f[5], "duration_minutes");
      if (!(r.duration_minutes > 0.0) || !std::isfinite(r.duration_minutes)) {
        throw Error(ErrorCode::NonPositiveDuration, "duration_minutes must be positive");
      }
      r.stance_before = StanceRating::make("article", number<int>(f[6], "stance_before"));
      r.stance_after = StanceRating::make("article", number<int>(f[7], "stance_after"));
      out.push_back(std::move(r));
    } catch (const Error& e) {
      const ErrorCode code = e.code() == ErrorCode::NonPositiveDuration ? e.code() : ErrorCode::ParseError;
      throw Error(code, "study file line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!header_seen) throw Error(ErrorCode::ParseError, "study file is empty");
  return out;
}

std::vector<ConditionRecord> load_study_csv(const std::filesystem::path& path) {
  return parse_study_csv(read_file(path));
}

std::string to_csv(const std::vector<ConditionRecord>& records) {
  std::string out(kStudyHeader);
  out += '\n';
  for (const auto& r : records) {
    out += r.participant_id + "," + std::string(to_string(r.condition)) + "," + std::string(to_string(r.article_lean)) +
           "," + std::to_string(r.n_claims) + "," + std::to_string(r.n_counters) + "," +
           format_double(r.duration_minutes) + "," + std::to_string(r.stance_before.value) + "," +
           std::to_string(r.stance_after.value) + "\n";
  }
  return out;
}

double measure_value(const ConditionRecord& r, Measure measure) {
  switch (measure) {
    case Measure::Claims: return static_cast<double>(r.n_claims);
    case Measure::Counters: return static_cast<double>(r.n_counters);
    case Measure::ClaimsPerMinute: return per_minute_rate(static_cast<double>(r.n_claims), r.duration_minutes);
    case Measure::CountersPerMinute: return per_minute_rate(static_cast<double>(r.n_counters), r.duration_minutes);
    case Measure::StanceDelta: return static_cast<double>(r.stance_after.value - r.stance_before.value);
  }
  return 0.0;
}

std::vector<ComparisonRow> compare_conditions(const std::vector<ConditionRecord>& records, Measure measure,
                                              double alpha) {
  if (records.empty()) throw Error(ErrorCode::InvalidArgument, "no study records");
  std::vector<ComparisonRow> rows;
  for (Lean lean : {Lean::Left, Lean::Right, Lean::Neutral, Lean::Unknown}) {
    std::vector<double> baseline;
    std::vector<double> system;
    bool present = false;
    for (const auto& r : records) {
      if (r.article_lean != lean) continue;
      present = true;
      (r.condition == Condition::Baseline ? baseline : system).push_back(measure_value(r, measure));
    }
    if (!present) continue;
    if (baseline.empty() || system.empty()) {
      throw Error(ErrorCode::MissingCondition, std::string(to_string(lean)) + " group lacks the " +
                                                   (baseline.empty() ? "Baseline" : "System") + " condition");
    }
    ComparisonRow row;
    row.lean = lean;
    row.measure = measure;
    row.n_baseline = baseline.size();
    row.n_system = system.size();
    row.median_baseline = median(baseline);
    row.median_system = median(system);
    row.test = mann_whitney_u(baseline, system);
    row.significant = !row.test.degenerate && row.test.p_two_sided < alpha;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace counterpoint::analytics
