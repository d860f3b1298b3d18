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

#include <doctest.h>

#include <filesystem>
#include <random>

#include "counterpoint/analytics/events.hpp"
#include "counterpoint/analytics/stats.hpp"
#include "counterpoint/analytics/study.hpp"
#include "counterpoint/core/files.hpp"
#include "oracles/stats_oracle.hpp"
#include "support.hpp"

using namespace counterpoint;
using namespace counterpoint::analytics;
using testing::code_of;

namespace {

SessionEvent ev(Feature f, EventKind k, std::int64_t seconds, const std::string& sid = "s1") {
  return {sid, f, k, seconds * 1000};
}

ConditionRecord rec(const std::string& id, Condition c, Lean lean, long claims, long counters = 0,
                    double minutes = 10.0, int before = 3, int after = 3) {
  return {id, c, lean, claims, counters, minutes, StanceRating::make("article", before),
          StanceRating::make("article", after)};
}

}  // namespace

TEST_CASE("record_event validates order and nesting") {
  EventLog log;
  log.record_event(ev(Feature::QA, EventKind::Enter, 0));
  log.record_event(ev(Feature::QA, EventKind::Exit, 5));
  CHECK(log.events("s1").size() == 2);
  CHECK(code_of([&] { log.record_event(ev(Feature::QA, EventKind::Exit, 6)); }) == ErrorCode::UnmatchedExit);
  CHECK(code_of([&] { log.record_event(ev(Feature::QA, EventKind::Enter, 4)); }) == ErrorCode::OutOfOrderEvent);
  log.record_event(ev(Feature::Claims, EventKind::Enter, 6));
  CHECK(code_of([&] { log.record_event(ev(Feature::Claims, EventKind::Enter, 7)); }) == ErrorCode::DuplicateEnter);
  CHECK(log.events("s1").size() == 3);
  // Other sessions have their own clock.
  log.record_event(ev(Feature::QA, EventKind::Enter, 1, "s2"));
  CHECK(log.sessions() == std::vector<std::string>{"s1", "s2"});
}

TEST_CASE("time_per_feature on a single pair and on the four-segment log") {
  EventLog log;
  log.record_event(ev(Feature::QA, EventKind::Enter, 0));
  log.record_event(ev(Feature::QA, EventKind::Exit, 100));
  auto b = time_per_feature(log, "s1");
  CHECK(b.fraction_of(Feature::QA) == 1.0);
  CHECK(b.session_seconds == 100.0);

  EventLog g;
  for (auto e : {ev(Feature::QA, EventKind::Enter, 0, "g"), ev(Feature::QA, EventKind::Exit, 30, "g"),
                 ev(Feature::Claims, EventKind::Enter, 30, "g"), ev(Feature::Claims, EventKind::Exit, 80, "g"),
                 ev(Feature::Counters, EventKind::Enter, 100, "g"), ev(Feature::Counters, EventKind::Exit, 200, "g")}) {
    g.record_event(e);
  }
  b = time_per_feature(g, "g");
  // 30/200, 50/200, 20/200, 100/200
  CHECK(b.fraction_of(Feature::QA) == doctest::Approx(30.0 / 200.0));
  CHECK(b.fraction_of(Feature::Claims) == doctest::Approx(50.0 / 200.0));
  CHECK(b.fraction_of(Feature::Idle) == doctest::Approx(20.0 / 200.0));
  CHECK(b.fraction_of(Feature::Counters) == doctest::Approx(100.0 / 200.0));
  CHECK(b.seconds_of(Feature::Counters) == 100.0);
  double sum = 0;
  for (double f : b.fraction) sum += f;
  CHECK(std::fabs(sum - 1.0) <= 1e-9);
}

TEST_CASE("nested features credit the innermost open feature") {
  EventLog log;
  for (auto e : {ev(Feature::Article, EventKind::Enter, 0), ev(Feature::QA, EventKind::Enter, 10),
                 ev(Feature::QA, EventKind::Exit, 40), ev(Feature::Article, EventKind::Exit, 50)}) {
    log.record_event(e);
  }
  const auto b = time_per_feature(log, "s1");
  CHECK(b.seconds_of(Feature::Article) == 20.0);
  CHECK(b.seconds_of(Feature::QA) == 30.0);
}

TEST_CASE("empty sessions are rejected") {
  EventLog log;
  CHECK(code_of([&] { time_per_feature(log, "nobody"); }) == ErrorCode::EmptySession);
  log.record_event(ev(Feature::QA, EventKind::Enter, 0));
  CHECK(code_of([&] { time_per_feature(log, "s1"); }) == ErrorCode::EmptySession);
}

TEST_CASE("property: breakdown fractions always total one") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    EventLog log;
    std::int64_t t = rng() % 1000;
    std::vector<Feature> open;
    int pairs = 0;
    const int steps = 2 + static_cast<int>(rng() % 40);
    for (int i = 0; i < steps; ++i) {
      t += rng() % 5000;
      const Feature f = kAllFeatures[rng() % kAllFeatures.size()];
      const bool is_open = std::find(open.begin(), open.end(), f) != open.end();
      log.record_event({"p", f, is_open ? EventKind::Exit : EventKind::Enter, t});
      if (is_open) {
        open.erase(std::find(open.begin(), open.end(), f));
        ++pairs;
      } else {
        open.push_back(f);
      }
    }
    if (pairs == 0) continue;
    const auto b = time_per_feature(log, "p");
    double sum = 0;
    double secs = 0;
    for (std::size_t f = 0; f < b.fraction.size(); ++f) {
      CHECK(b.seconds[f] >= 0.0);
      sum += b.fraction[f];
      secs += b.seconds[f];
    }
    CHECK(std::fabs(sum - 1.0) <= 1e-9);
    CHECK(secs == doctest::Approx(b.session_seconds));
  }
}

TEST_CASE("event log JSONL round trip") {
  EventLog log;
  log.record_event(ev(Feature::Highlight, EventKind::Enter, 1));
  log.record_event(ev(Feature::Highlight, EventKind::Exit, 2));
  log.record_event(ev(Feature::DebateMe, EventKind::Enter, 3, "other"));
  const auto text = log.to_jsonl();
  CHECK(text.find("\"feature\":\"Highlight\"") != std::string::npos);
  const auto back = EventLog::from_jsonl(text);
  CHECK(back.events("s1") == log.events("s1"));
  CHECK(back.events("other") == log.events("other"));
  CHECK(code_of([] { EventLog::from_jsonl("{not json}\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] {
          EventLog::from_jsonl(R"({"session_id":"x","feature":"QA","kind":"Exit","timestamp_ms":1})");
        }) == ErrorCode::UnmatchedExit);
  const auto path = std::filesystem::temp_directory_path() / ("cp-events-" + std::to_string(::getpid()) + ".jsonl");
  log.save(path);
  CHECK(EventLog::load(path).to_jsonl() == text);
  std::filesystem::remove(path);
}

TEST_CASE("per_minute_rate") {
  CHECK(per_minute_rate(5, 5.0) == 1.0);
  CHECK(per_minute_rate(0, 10.0) == 0.0);
  CHECK(per_minute_rate(7, 3.5) == 2.0);
  CHECK(code_of([] { per_minute_rate(1, 0.0); }) == ErrorCode::NonPositiveDuration);
  CHECK(code_of([] { per_minute_rate(1, -2.0); }) == ErrorCode::NonPositiveDuration);
}

TEST_CASE("Mann-Whitney worked examples") {
  auto r = mann_whitney_u({1, 2, 3}, {1, 2, 3});
  CHECK(r.u == 4.5);
  CHECK(r.p_two_sided == 1.0);
  CHECK(r.method == UTestMethod::Exact);
  CHECK(r.tie_correction_applied);

  r = mann_whitney_u({1, 2}, {3, 4});
  CHECK(r.u == 0.0);
  CHECK(r.method == UTestMethod::Exact);
  CHECK(r.p_two_sided == doctest::Approx(oracle::enumerate_p({1, 2}, {3, 4})));
  CHECK(r.p_two_sided == doctest::Approx(2.0 / 6.0));

  r = mann_whitney_u({7, 7, 7}, {7, 7});
  CHECK(r.degenerate);
  CHECK(r.p_two_sided == 1.0);

  CHECK(code_of([] { mann_whitney_u({}, {1}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("midranks average tied positions") {
  CHECK(midranks({10, 20, 20, 5}) == std::vector<double>{2, 3.5, 3.5, 1});
}

TEST_CASE("property: exact path matches full enumeration, symmetry and U identity") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n1 = 1 + rng() % 6;
    const std::size_t n2 = 1 + rng() % 6;
    const int spread = 1 + static_cast<int>(rng() % 8);
    std::vector<double> a(n1);
    std::vector<double> b(n2);
    for (auto& x : a) x = static_cast<double>(rng() % spread);
    for (auto& x : b) x = static_cast<double>(rng() % spread);
    const auto r = mann_whitney_u(a, b);
    const auto s = mann_whitney_u(b, a);
    CHECK(r.u_a + r.u_b == static_cast<double>(n1 * n2));
    CHECK(r.u_a == oracle::pair_count_u(a, b));
    CHECK(r.u >= 0.0);
    CHECK(r.u <= static_cast<double>(n1 * n2));
    CHECK(r.u == s.u);
    CHECK(r.p_two_sided == s.p_two_sided);
    if (!r.degenerate) CHECK(std::fabs(r.p_two_sided - oracle::enumerate_p(a, b)) <= 1e-12);
  }
}

TEST_CASE("property: shifting b far upward never raises p") {
  std::mt19937 rng(23);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n1 = 2 + rng() % 14;
    const std::size_t n2 = 2 + rng() % 14;
    std::vector<double> a(n1);
    std::vector<double> b(n2);
    for (auto& x : a) x = normal(rng);
    for (auto& x : b) x = normal(rng);
    const double lo = std::min(*std::min_element(a.begin(), a.end()), *std::min_element(b.begin(), b.end()));
    const double hi = std::max(*std::max_element(a.begin(), a.end()), *std::max_element(b.begin(), b.end()));
    std::vector<double> shifted = b;
    for (auto& x : shifted) x += (hi - lo) + 1.0;
    CHECK(mann_whitney_u(a, shifted).p_two_sided <= mann_whitney_u(a, b).p_two_sided + 1e-15);
  }
}

TEST_CASE("normal approximation tracks a Monte Carlo permutation p at n=15") {
  std::mt19937 rng(99);
  std::normal_distribution<double> normal;
  for (double shift : {0.0, 0.5, 1.0}) {
    std::vector<double> a(15);
    std::vector<double> b(15);
    for (auto& x : a) x = normal(rng);
    for (auto& x : b) x = normal(rng) + shift;
    const auto r = mann_whitney_u(a, b);
    CHECK(r.method == UTestMethod::NormalApprox);
    REQUIRE(r.z.has_value());
    CHECK(std::fabs(r.p_two_sided - oracle::monte_carlo_p(a, b, 100'000, 7)) <= 0.02);
  }
}

TEST_CASE("normal approximation applies the tie correction") {
  std::vector<double> a(12, 1.0);
  std::vector<double> b(12, 2.0);
  a[0] = 2.0;
  const auto r = mann_whitney_u(a, b);
  CHECK(r.method == UTestMethod::NormalApprox);
  CHECK(r.tie_correction_applied);
  // Hand computation: N=24, ties t=11 and t=13.
  const double n1 = 12, n2 = 12, N = 24;
  const double tie = (11.0 * 11 * 11 - 11) + (13.0 * 13 * 13 - 13);
  const double var = n1 * n2 / 12.0 * ((N + 1) - tie / (N * (N - 1)));
  const double z = (r.u - n1 * n2 / 2 + 0.5) / std::sqrt(var);
  CHECK(*r.z == doctest::Approx(z));
  CHECK(r.p_two_sided == doctest::Approx(std::erfc(std::fabs(z) / std::sqrt(2.0))));
}

TEST_CASE("study CSV parsing") {
  const std::string csv = std::string(kStudyHeader) +
                          "\np1,Baseline,Left,2,1,10,3,3\np2,system,right,8,4,12.5,2,4\n\n";
  const auto recs = parse_study_csv(csv);
  REQUIRE(recs.size() == 2);
  CHECK(recs[1].condition == Condition::System);
  CHECK(recs[1].article_lean == Lean::Right);
  CHECK(recs[1].duration_minutes == 12.5);
  CHECK(measure_value(recs[1], Measure::StanceDelta) == 2.0);
  CHECK(measure_value(recs[1], Measure::ClaimsPerMinute) == doctest::Approx(8.0 / 12.5));
  CHECK(parse_study_csv(to_csv(recs)).size() == 2);
  CHECK(code_of([] { parse_study_csv("a,b\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_study_csv(std::string(kStudyHeader) + "\np,Baseline,Left,x,1,1,3,3\n"); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { parse_study_csv(std::string(kStudyHeader) + "\np,Baseline,Left,1,1,0,3,3\n"); }) ==
        ErrorCode::NonPositiveDuration);
  CHECK(code_of([] { parse_study_csv(std::string(kStudyHeader) + "\np,Baseline,Left,1,1,2,9,3\n"); }) ==
        ErrorCode::ParseError);
}

TEST_CASE("compare_conditions flags a fourfold effect and not a null one") {
  std::vector<ConditionRecord> strong;
  std::vector<ConditionRecord> null;
  int id = 0;
  for (Lean lean : {Lean::Left, Lean::Right, Lean::Neutral}) {
    for (int i = 0; i < 6; ++i) {
      strong.push_back(rec("p" + std::to_string(++id), Condition::Baseline, lean, 2 + i % 3));
      strong.push_back(rec("p" + std::to_string(++id), Condition::System, lean, 4 * (2 + i % 3) + 1));
      null.push_back(rec("p" + std::to_string(++id), Condition::Baseline, lean, 2 + i % 3));
      null.push_back(rec("p" + std::to_string(++id), Condition::System, lean, 2 + i % 3));
    }
  }
  const auto rows = compare_conditions(strong, Measure::Claims);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].lean == Lean::Left);
  for (const auto& r : rows) {
    CHECK(r.significant);
    // Complete separation, 6 vs 6: 2 of C(12,6)=924 arrangements are as extreme.
    CHECK(r.test.p_two_sided == doctest::Approx(2.0 / 924.0));
  }
  for (const auto& r : compare_conditions(null, Measure::Claims)) {
    CHECK_FALSE(r.significant);
    CHECK(r.test.p_two_sided == 1.0);
  }
  std::vector<ConditionRecord> missing{rec("x", Condition::Baseline, Lean::Left, 1)};
  CHECK(code_of([&] { compare_conditions(missing, Measure::Claims); }) == ErrorCode::MissingCondition);
  CHECK(code_of([] { compare_conditions({}, Measure::Claims); }) == ErrorCode::InvalidArgument);
}
