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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "counterpoint/analytics/stats.hpp"
#include "counterpoint/core/document.hpp"

namespace counterpoint::analytics {

enum class Condition { Baseline, System };
enum class Measure { Claims, Counters, ClaimsPerMinute, CountersPerMinute, StanceDelta };

std::string_view to_string(Condition condition);
std::string_view to_string(Measure measure);
Condition condition_from_string(std::string_view name);
Measure measure_from_string(std::string_view name);

struct ConditionRecord {
  std::string participant_id;
  Condition condition = Condition::Baseline;
  Lean article_lean = Lean::Neutral;
  long n_claims = 0;
  long n_counters = 0;
  double duration_minutes = 1.0;
  StanceRating stance_before;
  StanceRating stance_after;
};

inline constexpr std::string_view kStudyHeader =
    "participant_id,condition,lean,n_claims,n_counters,duration_minutes,stance_before,stance_after";

// Header must match kStudyHeader (surrounding whitespace ignored). Throws
// ParseError with the line number for malformed rows and
// NonPositiveDuration for a duration <= 0.
std::vector<ConditionRecord> parse_study_csv(std::string_view text);
std::vector<ConditionRecord> load_study_csv(const std::filesystem::path& path);
std::string to_csv(const std::vector<ConditionRecord>& records);

double measure_value(const ConditionRecord& record, Measure measure);

inline constexpr double kAlpha = 0.05;

struct ComparisonRow {
  Lean lean = Lean::Neutral;
  Measure measure = Measure::Claims;
  std::size_t n_baseline = 0;
  std::size_t n_system = 0;
  double median_baseline = 0.0;
  double median_system = 0.0;
  UTestResult test;
  bool significant = false;  // p < alpha and not degenerate
};

// One row per lean present in `records`, ordered Left, Right, Neutral,
// Unknown. Baseline is sample a, System is sample b. Throws MissingCondition
// when a lean group lacks either condition, InvalidArgument when empty.
std::vector<ComparisonRow> compare_conditions(const std::vector<ConditionRecord>& records, Measure measure,
                                              double alpha = kAlpha);

}  // namespace counterpoint::analytics
