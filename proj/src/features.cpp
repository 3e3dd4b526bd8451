#include "vgsynth/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vgsynth/error.hpp"

namespace vgsynth {

const char* to_string(Origin o) { return o == Origin::real ? "real" : "synthetic"; }

double ols_slope(std::span<const double> y) {
  const std::size_t n = y.size();
  if (n < 2) return 0.0;
  const double xbar = 0.5 * static_cast<double>(n - 1);
  const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = static_cast<double>(i) - xbar;
    sxy += dx * (y[i] - ybar);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

// With centred, equally spaced abscissae the basis {1, x, x^2 - mean(x^2)} is
// orthogonal, so the x^2 coefficient is a single projection.
double quadratic_leading_coeff(std::span<const double> y) {
  const std::size_t n = y.size();
  if (n < 3) return 0.0;
  const double xbar = 0.5 * static_cast<double>(n - 1);
  double m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) m2 += (i - xbar) * (i - xbar);
  m2 /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = static_cast<double>(i) - xbar;
    const double basis = dx * dx - m2;
    num += basis * y[i];
    den += basis * basis;
  }
  return num / den;
}

double rsi(std::span<const double> y) {
  double gains = 0.0, losses = 0.0;
  for (std::size_t i = 1; i < y.size(); ++i) {
    const double d = y[i] - y[i - 1];
    if (d > 0) gains += d;
    else losses -= d;
  }
  if (gains == 0.0 && losses == 0.0) return 50.0;
  if (losses == 0.0) return 100.0;
  if (gains == 0.0) return 0.0;
  // Equal averaging periods cancel: 100 - 100 / (1 + G/L) = 100 G / (G + L).
  return std::clamp(100.0 * gains / (gains + losses), 0.0, 100.0);
}

std::size_t count_peaks(std::span<const double> y) {
  std::size_t peaks = 0;
  for (std::size_t i = 1; i + 1 < y.size(); ++i)
    if (y[i] > y[i - 1] && y[i] > y[i + 1]) ++peaks;
  return peaks;
}

FeatureRow extract_features(std::span<const double> values) {
  if (values.size() < 3) throw InvalidInput("extract_features needs at least 3 values");
  if (std::any_of(values.begin(), values.end(), [](double v) { return !std::isfinite(v); }))
    throw InvalidInput("extract_features got a missing or non-finite value");
  const auto prefix = values.first(values.size() - 1);
  const auto m = static_cast<double>(prefix.size());

  const double mean = std::accumulate(prefix.begin(), prefix.end(), 0.0) / m;
  double var = 0.0;
  for (double v : prefix) var += (v - mean) * (v - mean);
  var /= m;
  const auto [lo, hi] = std::minmax_element(prefix.begin(), prefix.end());

  FeatureRow row;
  row.features = {ols_slope(prefix),
                  quadratic_leading_coeff(prefix),
                  (prefix.back() - prefix.front()) / (m - 1.0),
                  rsi(prefix),
                  static_cast<double>(count_peaks(prefix)),
                  mean,
                  var,
                  *hi - *lo};
  row.label = values[values.size() - 1] > values[values.size() - 2] ? 1 : 0;
  return row;
}

}  // namespace vgsynth
