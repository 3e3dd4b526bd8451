#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>

#include "vgsynth/ingest.hpp"

namespace vgsynth {

enum class Origin : std::uint8_t { real = 0, synthetic = 1 };
const char* to_string(Origin o);

inline constexpr std::size_t kFeatureCount = 8;
inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "linear_trend_slope", "quadratic_coeff", "average_change", "rsi",
    "num_peaks",          "mean",            "variance",       "range"};

struct FeatureRow {
  std::array<double, kFeatureCount> features{};
  int label = 0;
  Origin origin = Origin::real;
  std::string group;  // ticker
  std::int64_t window_start = 0;

  double linear_trend_slope() const { return features[0]; }
  double quadratic_coeff() const { return features[1]; }
  double average_change() const { return features[2]; }
  double rsi() const { return features[3]; }
  double num_peaks() const { return features[4]; }
  double mean() const { return features[5]; }
  double variance() const { return features[6]; }
  double range() const { return features[7]; }
};

// Features over values[0..n-2]; label is 1 iff the last step goes strictly up.
FeatureRow extract_features(std::span<const double> values);

// Individual indicators over a full sequence.
double ols_slope(std::span<const double> y);
double quadratic_leading_coeff(std::span<const double> y);
double rsi(std::span<const double> y);
std::size_t count_peaks(std::span<const double> y);

}  // namespace vgsynth
