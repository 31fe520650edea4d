#include <doctest.h>

#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "airan/demand_profiles.hpp"
#include "airan/errors.hpp"

using namespace airan;

namespace {

std::string csv_rows(int n, double value) {
  std::string s = "hour,value\n";
  for (int i = 0; i < n; ++i) s += std::to_string(i) + "," + std::to_string(value) + "\n";
  return s;
}

double day_sum(const WeeklyProfile& p, int d) {
  double s = 0.0;
  for (int h = 0; h < kHoursPerDay; ++h) s += p[d * kHoursPerDay + h];
  return s;
}

// 2024-01-01 00:00 UTC, a Monday.
constexpr double kMonday = 1704067200.0;

}  // namespace

TEST_CASE("loading profile CSVs") {
  auto flat = parse_profile_csv(csv_rows(168, 1.0), ProfileKind::peak_normalized);
  for (double v : flat.values()) CHECK(v == 1.0);

  auto tiled = parse_profile_csv(csv_rows(24, 1.0 / 24.0), ProfileKind::daily_fraction);
  const auto& v = tiled.values();
  CHECK(std::accumulate(v.begin(), v.end(), 0.0) == doctest::Approx(7.0));
  for (int d = 0; d < 7; ++d) CHECK(day_sum(tiled, d) == doctest::Approx(1.0).epsilon(1e-12));

  try {
    parse_profile_csv(csv_rows(167, 1.0), ProfileKind::peak_normalized, "p.csv");
    FAIL("expected a LoadError");
  } catch (const LoadError& e) {
    CHECK(std::string(e.what()).find("expected 24 or 168 rows") != std::string::npos);
    CHECK(std::string(e.what()).find("p.csv") != std::string::npos);
  }
}

TEST_CASE("profile CSV errors name the row") {
  std::string bad = csv_rows(24, 1.0);
  bad.replace(bad.find("5,1.000000"), 10, "5,-1");
  try {
    parse_profile_csv(bad, ProfileKind::peak_normalized, "neg.csv");
    FAIL("expected a LoadError");
  } catch (const LoadError& e) {
    CHECK(std::string(e.what()).find("row 5") != std::string::npos);
  }
  std::string junk = csv_rows(24, 1.0);
  junk.replace(junk.find("7,1.000000"), 10, "7,abc");
  CHECK_THROWS_WITH_AS(parse_profile_csv(junk, ProfileKind::peak_normalized),
                       doctest::Contains("row 7"), LoadError);
  CHECK_THROWS_AS(parse_profile_csv("h,v\n0,1\n", ProfileKind::peak_normalized), LoadError);
  std::string skipped = csv_rows(24, 1.0);
  skipped.replace(skipped.find("\n3,"), 3, "\n4,");
  CHECK_THROWS_WITH_AS(parse_profile_csv(skipped, ProfileKind::peak_normalized),
                       doctest::Contains("row 3"), LoadError);
  CHECK_THROWS_AS(load_profile("/nonexistent.csv", ProfileKind::peak_normalized), LoadError);
  // A value-only file is accepted.
  std::string values_only = "value\n";
  for (int i = 0; i < 24; ++i) values_only += "2\n";
  CHECK(parse_profile_csv(values_only, ProfileKind::peak_normalized)[3] == 1.0);
}

TEST_CASE("normalize") {
  std::vector<double> v(168, 1.0);
  v[0] = 2.0;
  auto p = normalize(v, ProfileKind::peak_normalized);
  CHECK(p[0] == 1.0);
  for (int h = 1; h < 168; ++h) CHECK(p[h] == 0.5);

  std::vector<double> day(24, 2.0);
  auto d = profile_from_values(day, ProfileKind::daily_fraction);
  for (double x : d.values()) CHECK(x == doctest::Approx(1.0 / 24.0).epsilon(1e-15));

  CHECK_THROWS_AS(normalize(std::vector<double>(168, 0.0), ProfileKind::peak_normalized),
                  DomainError);
  CHECK_THROWS_AS(normalize(std::vector<double>(168, 0.0), ProfileKind::daily_fraction),
                  DomainError);
  v[3] = -0.1;
  CHECK_THROWS_AS(normalize(v, ProfileKind::peak_normalized), DomainError);
  CHECK_THROWS_AS(normalize(std::vector<double>(100, 1.0), ProfileKind::peak_normalized),
                  DomainError);
}

TEST_CASE("a daily-fraction day with no mass borrows the mean shape of the others") {
  std::vector<double> v(168, 0.0);
  for (int d = 0; d < 7; ++d) {
    if (d == 2) continue;
    for (int h = 0; h < 24; ++h) v[static_cast<std::size_t>(d * 24 + h)] = h < 12 ? 1.0 : 3.0;
  }
  auto p = normalize(v, ProfileKind::daily_fraction);
  for (int d = 0; d < 7; ++d) CHECK(day_sum(p, d) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p[2 * 24 + 0] == doctest::Approx(1.0 / 48.0));
  CHECK(p[2 * 24 + 20] == doctest::Approx(3.0 / 48.0));
}

TEST_CASE("normalize is idempotent and keeps invariants on random input") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  std::bernoulli_distribution zero(0.15);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> v(168);
    for (auto& x : v) x = zero(rng) ? 0.0 : u(rng);
    v[static_cast<std::size_t>(trial % 168)] = 1.0;
    for (auto kind : {ProfileKind::peak_normalized, ProfileKind::daily_fraction}) {
      const auto once = normalize(v, kind);
      const auto twice = normalize(once.values(), kind);
      for (int h = 0; h < 168; ++h) {
        REQUIRE(once[h] >= 0.0);
        REQUIRE(twice[h] == once[h]);
      }
      if (kind == ProfileKind::daily_fraction) {
        for (int d = 0; d < 7; ++d) REQUIRE(std::abs(day_sum(once, d) - 1.0) <= 1e-9);
      } else {
        REQUIRE(*std::max_element(once.values().begin(), once.values().end()) == 1.0);
      }
    }
  }
}

TEST_CASE("weekly profiles enforce their invariant") {
  WeeklyProfile::Values v{};
  v.fill(0.5);
  CHECK_THROWS_AS(WeeklyProfile(v, ProfileKind::peak_normalized), DomainError);
  CHECK_THROWS_AS(WeeklyProfile(v, ProfileKind::daily_fraction), DomainError);
  v.fill(1.0 / 24.0);
  CHECK_NOTHROW(WeeklyProfile(v, ProfileKind::daily_fraction));
}

TEST_CASE("profile CSV round trip is exact") {
  const auto& p = builtin_llm_profile();
  CHECK(parse_profile_csv(to_profile_csv(p), ProfileKind::daily_fraction) == p);
  const auto& r = builtin_ran_profile();
  CHECK(parse_profile_csv(to_profile_csv(r), ProfileKind::peak_normalized) == r);
}

TEST_CASE("bundled profiles") {
  const auto& ran = builtin_ran_profile();
  CHECK(ran.kind() == ProfileKind::peak_normalized);
  CHECK(*std::max_element(ran.values().begin(), ran.values().end()) == 1.0);
  CHECK(ran[11] == 1.0);  // Monday 11:00
  const auto& llm = builtin_llm_profile();
  for (int d = 0; d < 7; ++d) CHECK(day_sum(llm, d) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(llm[20] > llm[8]);  // evening above morning trough
}

TEST_CASE("hour of week") {
  CHECK(hour_of_week(kMonday) == 0);
  CHECK(hour_of_week(kMonday + 3599.0) == 0);
  CHECK(hour_of_week(kMonday + 3600.0) == 1);
  CHECK(hour_of_week(kMonday + 6 * 86400.0 + 23 * 3600.0) == 167);
  CHECK(hour_of_week(kMonday + 7 * 86400.0) == 0);
  CHECK(hour_of_week(0.0) == 72);  // 1970-01-01 was a Thursday
  CHECK(hour_of_week(-3600.0) == 71);
}

TEST_CASE("trace ingestion: synthetic uniform trace") {
  std::vector<TraceRecord> recs;
  for (int i = 0; i < 2 * 168; ++i) recs.push_back({kMonday + i * 3600.0 + 17.0, 60, 40});
  auto s = ingest_trace(recs);
  CHECK(s.record_count == 336);
  CHECK(s.mean_tokens_per_request == 100.0);
  for (double x : s.profile.values()) CHECK(x == doctest::Approx(1.0 / 24.0).epsilon(1e-15));
  CHECK(ingest_trace(recs, {.count_response_tokens = false}).mean_tokens_per_request == 60.0);
}

TEST_CASE("trace ingestion: two records in the same hour") {
  const std::vector<TraceRecord> recs{{kMonday + 5 * 3600.0 + 1, 10, 0},
                                      {kMonday + 5 * 3600.0 + 2, 30, 0}};
  auto s = ingest_trace(recs);
  CHECK(s.mean_tokens_per_request == 20.0);
  CHECK(s.profile[5] == 1.0);
  CHECK(s.profile[4] == 0.0);
  CHECK_THROWS_AS(ingest_trace({}), DomainError);
}

TEST_CASE("trace ingestion averages each hour over its occurrences") {
  // The trace spans Monday 09:00 of week one to Monday 09:00 of week two, so
  // Monday 09:00 occurs twice and Monday 10:00 once.
  std::vector<TraceRecord> recs;
  for (int k = 0; k < 4; ++k) recs.push_back({kMonday + 9 * 3600.0 + k, 1, 0});
  recs.push_back({kMonday + 10 * 3600.0, 1, 0});
  for (int k = 0; k < 4; ++k) recs.push_back({kMonday + 168 * 3600.0 + 9 * 3600.0 + k, 1, 0});
  const auto s = ingest_trace(recs);
  CHECK(s.profile[9] == doctest::Approx(0.8));
  CHECK(s.profile[10] == doctest::Approx(0.2));
}

TEST_CASE("trace ingestion is invariant to whole-week shifts and record order") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> when(0.0, 3 * 7 * 86400.0);
  std::uniform_int_distribution<int> tok(0, 2000);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<TraceRecord> recs;
    for (int i = 0; i < 500; ++i) recs.push_back({kMonday + when(rng), tok(rng), tok(rng)});
    const auto base = ingest_trace(recs);
    auto shifted = recs;
    const double weeks = static_cast<double>(1 + trial % 50);
    for (auto& r : shifted) r.timestamp += weeks * 7 * 86400.0;
    std::shuffle(shifted.begin(), shifted.end(), rng);
    const auto moved = ingest_trace(shifted);
    CHECK(moved.profile == base.profile);
    CHECK(moved.mean_tokens_per_request == base.mean_tokens_per_request);
  }
}

TEST_CASE("trace CSV parsing") {
  std::istringstream ok(
      "timestamp,request_tokens,response_tokens,model\n"
      "1704067200,10,20,x\n"
      "1704070800.5,5,0,y\n");
  auto f = parse_trace_csv(ok);
  REQUIRE(f.records.size() == 2);
  CHECK(f.records[1].timestamp == 1704070800.5);
  CHECK(f.records[0].response_tokens == 20);
  CHECK(f.warnings.empty());

  std::istringstream mapped("Timestamp,Request tokens\n1704067200,7\n");
  auto g = parse_trace_csv(mapped, {"Timestamp", "Request tokens", "Response tokens"});
  REQUIRE(g.records.size() == 1);
  CHECK(g.records[0].request_tokens == 7);
  CHECK(g.warnings.size() == 1);

  std::istringstream bad("timestamp,request_tokens,response_tokens\n1,2,-3\n");
  CHECK_THROWS_WITH_AS(parse_trace_csv(bad, {}, "t.csv"), doctest::Contains("t.csv"), LoadError);
  std::istringstream nots("request_tokens\n1\n");
  CHECK_THROWS_AS(parse_trace_csv(nots), LoadError);
}
