#include "airan/demand_profiles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

#include "airan/embedded_data.hpp"
#include "airan/errors.hpp"

namespace airan {

namespace {

constexpr double kPeakTolerance = 1e-12;
constexpr double kDaySumTolerance = 1e-9;
// 1970-01-01 was a Thursday; Thursday 00:00 is hour 72 of the ISO week.
constexpr std::int64_t kEpochHourOfWeek = 72;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

int column_index(const std::vector<std::string_view>& header,
                 std::string_view name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

}  // namespace

std::string_view to_string(ProfileKind kind) {
  return kind == ProfileKind::peak_normalized ? "peak_normalized"
                                              : "daily_fraction";
}

ProfileKind profile_kind_from_string(std::string_view s) {
  if (s == "peak_normalized") return ProfileKind::peak_normalized;
  if (s == "daily_fraction") return ProfileKind::daily_fraction;
  throw DomainError(fmt::format("unknown profile kind '{}'", s));
}

WeeklyProfile::WeeklyProfile(const Values& values, ProfileKind kind)
    : values_(values), kind_(kind) {
  for (int h = 0; h < kHoursPerWeek; ++h) {
    const double v = values_[static_cast<std::size_t>(h)];
    if (!std::isfinite(v) || v < 0.0)
      throw DomainError(fmt::format("profile hour {}: value must be finite and >= 0", h));
  }
  if (kind_ == ProfileKind::peak_normalized) {
    const double peak = *std::max_element(values_.begin(), values_.end());
    if (std::abs(peak - 1.0) > kPeakTolerance)
      throw DomainError(fmt::format(
          "peak_normalized profile must have maximum 1, got {}", peak));
  } else {
    for (int d = 0; d < kDaysPerWeek; ++d) {
      const auto first = values_.begin() + d * kHoursPerDay;
      const double sum = std::accumulate(first, first + kHoursPerDay, 0.0);
      if (std::abs(sum - 1.0) > kDaySumTolerance)
        throw DomainError(fmt::format(
            "daily_fraction profile day {} sums to {}, expected 1", d, sum));
    }
  }
}

WeeklyProfile WeeklyProfile::flat(ProfileKind kind) {
  Values v;
  v.fill(kind == ProfileKind::peak_normalized ? 1.0 : 1.0 / kHoursPerDay);
  return WeeklyProfile(v, kind);
}

WeeklyProfile normalize(std::span<const double> values, ProfileKind kind) {
  if (values.size() != kHoursPerWeek)
    throw DomainError(fmt::format("normalize expects {} values, got {}",
                                  kHoursPerWeek, values.size()));
  WeeklyProfile::Values out;
  std::copy(values.begin(), values.end(), out.begin());
  for (double v : out)
    if (!std::isfinite(v) || v < 0.0)
      throw DomainError("profile values must be finite and >= 0");
  const double peak = *std::max_element(out.begin(), out.end());
  if (!(peak > 0.0)) throw DomainError("profile has no positive value");

  if (kind == ProfileKind::peak_normalized) {
    for (double& v : out) v /= peak;
    return WeeklyProfile(out, kind);
  }

  std::array<bool, kDaysPerWeek> has_mass{};
  std::array<double, kHoursPerDay> mean_shape{};
  int days_with_mass = 0;
  for (int d = 0; d < kDaysPerWeek; ++d) {
    auto* day = out.data() + d * kHoursPerDay;
    const double sum = std::accumulate(day, day + kHoursPerDay, 0.0);
    if (!(sum > 0.0)) continue;
    has_mass[static_cast<std::size_t>(d)] = true;
    ++days_with_mass;
    // Already-normalized days are left alone so normalize is idempotent to
    // the bit.
    const bool rescale = std::abs(sum - 1.0) > 1e-12;
    for (int h = 0; h < kHoursPerDay; ++h) {
      if (rescale) day[h] /= sum;
      mean_shape[static_cast<std::size_t>(h)] += day[h];
    }
  }
  if (days_with_mass < kDaysPerWeek) {
    for (double& v : mean_shape) v /= days_with_mass;
    for (int d = 0; d < kDaysPerWeek; ++d) {
      if (has_mass[static_cast<std::size_t>(d)]) continue;
      std::copy(mean_shape.begin(), mean_shape.end(),
                out.begin() + d * kHoursPerDay);
    }
  }
  return WeeklyProfile(out, kind);
}

WeeklyProfile profile_from_values(std::span<const double> values,
                                  ProfileKind kind) {
  if (values.size() == kHoursPerWeek) return normalize(values, kind);
  if (values.size() != kHoursPerDay)
    throw DomainError(fmt::format("expected 24 or 168 rows, got {}", values.size()));
  std::vector<double> tiled;
  tiled.reserve(kHoursPerWeek);
  for (int d = 0; d < kDaysPerWeek; ++d)
    tiled.insert(tiled.end(), values.begin(), values.end());
  return normalize(tiled, kind);
}

WeeklyProfile parse_profile_csv(std::string_view text, ProfileKind kind,
                                std::string_view source) {
  std::vector<double> values;
  int value_col = -1;
  int hour_col = -1;
  bool header_seen = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (!header_seen) {
      header_seen = true;
      hour_col = column_index(fields, "hour");
      value_col = column_index(fields, "value");
      if (value_col < 0)
        throw LoadError(fmt::format("{}: header must contain 'value' (got '{}')",
                                    source, line));
      continue;
    }
    const int row = static_cast<int>(values.size());
    if (static_cast<int>(fields.size()) <= std::max(value_col, hour_col))
      throw LoadError(fmt::format("{}: row {} (line {}): missing columns",
                                  source, row, line_no));
    double v = 0.0;
    if (!parse_double(fields[static_cast<std::size_t>(value_col)], v) ||
        !std::isfinite(v))
      throw LoadError(fmt::format("{}: row {} (line {}): unparsable value '{}'",
                                  source, row, line_no,
                                  fields[static_cast<std::size_t>(value_col)]));
    if (v < 0.0)
      throw LoadError(fmt::format("{}: row {} (line {}): negative value {}",
                                  source, row, line_no, v));
    if (hour_col >= 0) {
      double h = 0.0;
      if (!parse_double(fields[static_cast<std::size_t>(hour_col)], h) ||
          h != static_cast<double>(row))
        throw LoadError(fmt::format("{}: row {} (line {}): hour column must be {}",
                                    source, row, line_no, row));
    }
    values.push_back(v);
  }
  if (values.size() != kHoursPerDay && values.size() != kHoursPerWeek)
    throw LoadError(fmt::format("{}: expected 24 or 168 rows, got {}", source,
                                values.size()));
  try {
    return profile_from_values(values, kind);
  } catch (const DomainError& e) {
    throw LoadError(fmt::format("{}: {}", source, e.what()));
  }
}

WeeklyProfile load_profile(const std::filesystem::path& path, ProfileKind kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open profile file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_profile_csv(buf.str(), kind, path.string());
}

std::string to_profile_csv(const WeeklyProfile& profile) {
  std::string out = "hour,value\n";
  for (int h = 0; h < kHoursPerWeek; ++h)
    out += fmt::format("{},{:.17g}\n", h, profile[h]);
  return out;
}

const WeeklyProfile& builtin_ran_profile() {
  static const WeeklyProfile p = parse_profile_csv(
      embedded::ran_weekly_csv(), ProfileKind::peak_normalized, "builtin:ran_weekly");
  return p;
}

const WeeklyProfile& builtin_llm_profile() {
  static const WeeklyProfile p = parse_profile_csv(
      embedded::llm_weekly_csv(), ProfileKind::daily_fraction, "builtin:llm_weekly");
  return p;
}

int hour_of_week(double unix_seconds) {
  const auto hour = static_cast<std::int64_t>(std::floor(unix_seconds / 3600.0));
  auto slot = (hour + kEpochHourOfWeek) % kHoursPerWeek;
  if (slot < 0) slot += kHoursPerWeek;
  return static_cast<int>(slot);
}

TraceSummary ingest_trace(std::span<const TraceRecord> records,
                          const TraceOptions& options) {
  if (records.empty()) throw DomainError("trace is empty");

  std::array<std::int64_t, kHoursPerWeek> counts{};
  std::int64_t token_sum = 0;
  std::int64_t first_hour = 0;
  std::int64_t last_hour = 0;
  bool first = true;
  for (const auto& r : records) {
    if (!std::isfinite(r.timestamp)) throw DomainError("trace timestamp is not finite");
    if (r.request_tokens < 0 || r.response_tokens < 0)
      throw DomainError("trace token counts must be >= 0");
    const auto hour = static_cast<std::int64_t>(std::floor(r.timestamp / 3600.0));
    if (first || hour < first_hour) first_hour = hour;
    if (first || hour > last_hour) last_hour = hour;
    first = false;
    ++counts[static_cast<std::size_t>(hour_of_week(r.timestamp))];
    token_sum += r.request_tokens;
    if (options.count_response_tokens) token_sum += r.response_tokens;
  }

  // How many times each hour-of-week slot occurs in [first_hour, last_hour].
  const std::int64_t span_hours = last_hour - first_hour + 1;
  std::array<std::int64_t, kHoursPerWeek> occurrences;
  occurrences.fill(span_hours / kHoursPerWeek);
  const int start_slot = hour_of_week(static_cast<double>(first_hour) * 3600.0);
  for (std::int64_t i = 0; i < span_hours % kHoursPerWeek; ++i)
    ++occurrences[static_cast<std::size_t>((start_slot + i) % kHoursPerWeek)];

  std::array<double, kHoursPerWeek> mean_counts{};
  for (std::size_t s = 0; s < mean_counts.size(); ++s)
    if (occurrences[s] > 0)
      mean_counts[s] = static_cast<double>(counts[s]) / static_cast<double>(occurrences[s]);

  TraceSummary out;
  out.profile = normalize(mean_counts, ProfileKind::daily_fraction);
  out.record_count = static_cast<std::int64_t>(records.size());
  out.mean_tokens_per_request =
      static_cast<double>(token_sum) / static_cast<double>(out.record_count);
  return out;
}

TraceFile parse_trace_csv(std::istream& in, const TraceColumns& columns,
                          std::string_view source) {
  TraceFile out;
  std::string line;
  int line_no = 0;
  int ts_col = -1, req_col = -1, resp_col = -1;
  std::size_t width = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    const auto fields = split_csv_line(view);
    if (!header_seen) {
      header_seen = true;
      ts_col = column_index(fields, columns.timestamp);
      req_col = column_index(fields, columns.request_tokens);
      resp_col = column_index(fields, columns.response_tokens);
      if (ts_col < 0)
        throw LoadError(fmt::format("{}: missing timestamp column '{}'", source,
                                    columns.timestamp));
      if (req_col < 0)
        throw LoadError(fmt::format("{}: missing request token column '{}'",
                                    source, columns.request_tokens));
      if (resp_col < 0)
        out.warnings.push_back(fmt::format(
            "{}: no '{}' column; response tokens treated as 0", source,
            columns.response_tokens));
      width = static_cast<std::size_t>(std::max({ts_col, req_col, resp_col})) + 1;
      continue;
    }
    if (fields.size() < width)
      throw LoadError(fmt::format("{}: line {}: expected at least {} columns",
                                  source, line_no, width));
    auto number = [&](int col, std::string_view what) {
      double v = 0.0;
      const auto field = fields[static_cast<std::size_t>(col)];
      if (!parse_double(field, v) || !std::isfinite(v))
        throw LoadError(fmt::format("{}: line {}: unparsable {} '{}'", source,
                                    line_no, what, field));
      return v;
    };
    auto tokens = [&](int col, std::string_view what) {
      const double v = number(col, what);
      if (v < 0.0 || v != std::floor(v))
        throw LoadError(fmt::format("{}: line {}: {} must be a nonnegative integer",
                                    source, line_no, what));
      return static_cast<std::int64_t>(v);
    };
    TraceRecord r;
    r.timestamp = number(ts_col, "timestamp");
    r.request_tokens = tokens(req_col, "request_tokens");
    r.response_tokens = resp_col >= 0 ? tokens(resp_col, "response_tokens") : 0;
    out.records.push_back(r);
  }
  if (!header_seen) throw LoadError(fmt::format("{}: empty trace file", source));
  return out;
}

TraceFile read_trace_csv(const std::filesystem::path& path,
                         const TraceColumns& columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open trace file " + path.string());
  return parse_trace_csv(in, columns, path.string());
}

}  // namespace airan
