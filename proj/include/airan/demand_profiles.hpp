#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace airan {

inline constexpr int kHoursPerDay = 24;
inline constexpr int kDaysPerWeek = 7;
inline constexpr int kHoursPerWeek = kHoursPerDay * kDaysPerWeek;
inline constexpr double kWeeksPerYear = 52.0;

enum class ProfileKind {
  peak_normalized,  // max over the week is exactly 1
  daily_fraction,   // each calendar day's 24 values sum to 1
};

std::string_view to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(std::string_view s);

/// 168 nonnegative hourly values, hour 0 = Monday 00:00. The constructor
/// enforces the invariant of `kind` and throws DomainError otherwise.
class WeeklyProfile {
 public:
  using Values = std::array<double, kHoursPerWeek>;

  WeeklyProfile(const Values& values, ProfileKind kind);

  /// All-ones peak profile, or 1/24 in every hour for daily fractions.
  static WeeklyProfile flat(ProfileKind kind);

  double operator[](int hour) const { return values_[static_cast<std::size_t>(hour)]; }
  const Values& values() const { return values_; }
  ProfileKind kind() const { return kind_; }

  friend bool operator==(const WeeklyProfile&, const WeeklyProfile&) = default;

 private:
  Values values_;
  ProfileKind kind_;
};

/// Scales raw hourly values into a profile of the given kind. Peak profiles
/// divide by the weekly maximum. Daily fractions divide each day by its own
/// sum; a day with no mass takes the mean within-day shape of the other
/// days. Throws DomainError when every value is zero or any is negative.
WeeklyProfile normalize(std::span<const double> values, ProfileKind kind);

/// Accepts 24 values (tiled to all seven days) or 168 values, then
/// normalizes.
WeeklyProfile profile_from_values(std::span<const double> values,
                                  ProfileKind kind);

/// Parses `hour,value` CSV text with 24 or 168 data rows.
/// Throws LoadError naming `source` and the offending row.
WeeklyProfile parse_profile_csv(std::string_view text, ProfileKind kind,
                                std::string_view source = "<profile>");
WeeklyProfile load_profile(const std::filesystem::path& path, ProfileKind kind);
std::string to_profile_csv(const WeeklyProfile& profile);

/// Bundled synthetic shapes (data/ran_weekly.csv, data/llm_weekly.csv).
const WeeklyProfile& builtin_ran_profile();
const WeeklyProfile& builtin_llm_profile();

struct TraceRecord {
  double timestamp = 0.0;  // seconds since the Unix epoch, UTC
  std::int64_t request_tokens = 0;
  std::int64_t response_tokens = 0;
};

struct TraceOptions {
  bool count_response_tokens = true;
};

struct TraceSummary {
  WeeklyProfile profile = WeeklyProfile::flat(ProfileKind::daily_fraction);
  double mean_tokens_per_request = 0.0;
  std::int64_t record_count = 0;
};

/// Hour of the ISO week (Monday 00:00 UTC = 0) of a Unix timestamp.
int hour_of_week(double unix_seconds);

/// Buckets requests by hour of week. Each bucket is averaged over the
/// number of times that hour of week occurs in the span the trace covers,
/// then the result is normalized to daily fractions. The result depends
/// only on the multiset of records.
TraceSummary ingest_trace(std::span<const TraceRecord> records,
                          const TraceOptions& options = {});

struct TraceColumns {
  std::string timestamp = "timestamp";
  std::string request_tokens = "request_tokens";
  std::string response_tokens = "response_tokens";
};

struct TraceFile {
  std::vector<TraceRecord> records;
  std::vector<std::string> warnings;
};

TraceFile parse_trace_csv(std::istream& in, const TraceColumns& columns = {},
                          std::string_view source = "<trace>");
TraceFile read_trace_csv(const std::filesystem::path& path,
                         const TraceColumns& columns = {});

}  // namespace airan
