#include "vgsynth/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "vgsynth/error.hpp"

namespace vgsynth {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(trim(line.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

double parse_close(std::string_view field) {
  if (field.empty()) return kMissing;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v))
    return kMissing;
  return v;
}

int parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw SchemaError("bad date component '" + std::string(s) + "'");
  return v;
}

}  // namespace

Date parse_date(std::string_view iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-')
    throw SchemaError("expected ISO-8601 date, got '" + std::string(iso) + "'");
  const std::chrono::year_month_day ymd{std::chrono::year{parse_int(iso.substr(0, 4))},
                                        std::chrono::month(parse_int(iso.substr(5, 2))),
                                        std::chrono::day(parse_int(iso.substr(8, 2)))};
  if (!ymd.ok()) throw SchemaError("invalid calendar date '" + std::string(iso) + "'");
  return Date{ymd};
}

std::string format_date(Date d) {
  const std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::vector<TimeSeries> load_series(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("empty input: missing header");
  const auto header = split(line);
  auto column = [&](std::string_view name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw SchemaError("missing required column '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t date_col = column("date");
  const std::size_t ticker_col = column("ticker");
  const std::size_t close_col = column("close");
  const std::size_t needed = std::max({date_col, ticker_col, close_col}) + 1;

  // ticker -> date -> close; std::map gives sorted tickers and dates.
  std::map<std::string, std::map<Date, double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() < needed)
      throw SchemaError("line " + std::to_string(line_no) + ": expected at least " +
                        std::to_string(needed) + " fields");
    const std::string ticker(fields[ticker_col]);
    const Date date = parse_date(fields[date_col]);
    auto [it, inserted] = rows[ticker].emplace(date, parse_close(fields[close_col]));
    if (!inserted) throw DuplicateRowError(ticker, format_date(date));
  }

  std::vector<TimeSeries> out;
  out.reserve(rows.size());
  for (auto& [ticker, by_date] : rows) {
    TimeSeries ts;
    ts.ticker = ticker;
    ts.timestamps.reserve(by_date.size());
    ts.values.reserve(by_date.size());
    for (const auto& [date, close] : by_date) {
      ts.timestamps.push_back(date);
      ts.values.push_back(close);
    }
    out.push_back(std::move(ts));
  }
  return out;
}

std::vector<TimeSeries> load_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open input file '" + path + "'");
  return load_series(in);
}

void write_series(std::ostream& out, std::span<const TimeSeries> series) {
  out << "date,ticker,close\n";
  char buf[64];
  for (const auto& ts : series) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
      out << format_date(ts.timestamps[i]) << ',' << ts.ticker << ',';
      if (!is_missing(ts.values[i])) {
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, ts.values[i]);
        out.write(buf, ptr - buf);
      }
      out << '\n';
    }
  }
}

std::vector<Window> slice_windows(const TimeSeries& series, std::size_t length,
                                  std::size_t stride) {
  if (length < 2) throw InvalidInput("window length must be >= 2");
  if (stride < 1) throw InvalidInput("stride must be >= 1");
  std::vector<Window> out;
  if (series.size() < length) return out;
  for (std::size_t start = 0; start + length <= series.size(); start += stride) {
    const auto first = series.values.begin() + static_cast<std::ptrdiff_t>(start);
    const auto last = first + static_cast<std::ptrdiff_t>(length);
    if (std::any_of(first, last, is_missing)) continue;
    Window w;
    w.ticker = series.ticker;
    w.start_index = static_cast<std::int64_t>(start);
    w.length = length;
    w.raw_values.assign(first, last);
    w.first_date = series.timestamps[start];
    w.last_date = series.timestamps[start + length - 1];
    out.push_back(std::move(w));
  }
  return out;
}

Window minmax_scale(Window window) {
  if (window.raw_values.empty()) throw InvalidWindow("cannot scale an empty window");
  if (std::any_of(window.raw_values.begin(), window.raw_values.end(), is_missing))
    throw InvalidWindow("cannot scale a window with missing values");
  const auto [lo, hi] = std::minmax_element(window.raw_values.begin(), window.raw_values.end());
  window.scale_min = *lo;
  window.scale_max = *hi;
  window.constant = !(*hi > *lo);
  window.scaled_values.resize(window.raw_values.size());
  const double span = window.scale_max - window.scale_min;
  for (std::size_t i = 0; i < window.raw_values.size(); ++i) {
    window.scaled_values[i] =
        window.constant ? 0.5 : (window.raw_values[i] - window.scale_min) / span;
  }
  return window;
}

std::vector<double> inverse_values(std::span<const double> scaled, double scale_min,
                                   double scale_max, bool constant) {
  std::vector<double> out(scaled.size());
  const double span = scale_max - scale_min;
  for (std::size_t i = 0; i < scaled.size(); ++i)
    out[i] = constant ? scale_min : scale_min + scaled[i] * span;
  return out;
}

Window inverse_scale(Window window) {
  window.raw_values = inverse_values(window.scaled_values, window.scale_min,
                                     window.scale_max, window.constant);
  return window;
}

void write_windows_jsonl(std::ostream& out, std::span<const Window> windows) {
  for (const auto& w : windows) {
    nlohmann::ordered_json j;
    j["ticker"] = w.ticker;
    j["start_index"] = w.start_index;
    j["values"] = w.raw_values;
    out << j.dump() << '\n';
  }
}

}  // namespace vgsynth
