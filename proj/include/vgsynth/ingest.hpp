#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vgsynth {

using Date = std::chrono::sys_days;

// Missing closes are stored as quiet NaN; no other non-finite value is allowed.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool is_missing(double v) { return std::isnan(v); }

Date parse_date(std::string_view iso);  // YYYY-MM-DD, throws SchemaError
std::string format_date(Date d);

struct TimeSeries {
  std::string ticker;
  std::vector<Date> timestamps;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

struct Window {
  std::string ticker;
  std::int64_t start_index = 0;
  std::size_t length = 0;
  std::vector<double> raw_values;
  double scale_min = 0.0;
  double scale_max = 0.0;
  bool constant = false;
  std::vector<double> scaled_values;
  // Calendar span of the window, used for chronological splitting.
  Date first_date{};
  Date last_date{};

  bool is_scaled() const { return scaled_values.size() == raw_values.size() && !raw_values.empty(); }
};

std::vector<TimeSeries> load_series(std::istream& in);
std::vector<TimeSeries> load_series(const std::string& path);

// Writes `date,ticker,close` text; missing closes become empty fields.
void write_series(std::ostream& out, std::span<const TimeSeries> series);

std::vector<Window> slice_windows(const TimeSeries& series, std::size_t length,
                                  std::size_t stride);

Window minmax_scale(Window window);
Window inverse_scale(Window window);

// Maps scaled values back to prices with the given scale.
std::vector<double> inverse_values(std::span<const double> scaled, double scale_min,
                                   double scale_max, bool constant);

// One JSON object per line: {"ticker","start_index","values"}.
void write_windows_jsonl(std::ostream& out, std::span<const Window> windows);

}  // namespace vgsynth
