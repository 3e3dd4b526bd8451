#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <tuple>
#include <vector>

#include "vgsynth/kernels.hpp"

namespace vgsynth::kernels::detail {

inline constexpr double kMinProb = 1e-300;

inline double sq_dist(const double* a, const double* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t c = 0; c < d; ++c) {
    const double t = a[c] - b[c];
    s += t * t;
  }
  return s;
}

// Fills out[0..n) with p_{j|i}; returns the final entropy error.
inline double affinity_row(const double* dist, double* out, std::size_t n, std::size_t self,
                           double perplexity, double tol) {
  const double target = std::log(perplexity);
  double dmin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j)
    if (j != self) dmin = std::min(dmin, dist[j]);

  double beta = 1.0;
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  double err = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 200; ++iter) {
    double sum = 0.0;
    double weighted = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == self) {
        out[j] = 0.0;
        continue;
      }
      const double shifted = dist[j] - dmin;
      out[j] = std::exp(-beta * shifted);
      sum += out[j];
      weighted += shifted * out[j];
    }
    const double entropy = std::log(sum) + beta * weighted / sum;
    for (std::size_t j = 0; j < n; ++j) out[j] /= sum;
    err = std::abs(entropy - target);
    if (err < tol) break;
    if (entropy > target) {
      lo = beta;
      beta = std::isinf(hi) ? beta * 2.0 : 0.5 * (beta + hi);
    } else {
      hi = beta;
      beta = 0.5 * (beta + lo);
    }
  }
  return err;
}

inline std::vector<std::uint32_t> knn_row(const Matrix& x, std::size_t i, std::size_t k,
                                          std::span<const std::uint8_t> origin) {
  struct Cand {
    double d;
    std::uint8_t same;
    std::uint32_t j;
  };
  std::vector<Cand> cands;
  cands.reserve(x.rows);
  for (std::size_t j = 0; j < x.rows; ++j) {
    if (j == i) continue;
    cands.push_back({sq_dist(x.row(i), x.row(j), x.cols),
                     static_cast<std::uint8_t>(origin[i] == origin[j]),
                     static_cast<std::uint32_t>(j)});
  }
  k = std::min(k, cands.size());
  auto less = [](const Cand& a, const Cand& b) {
    return std::tie(a.d, a.same, a.j) < std::tie(b.d, b.same, b.j);
  };
  std::partial_sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(k), cands.end(),
                    less);
  std::vector<std::uint32_t> out(k);
  for (std::size_t m = 0; m < k; ++m) out[m] = cands[m].j;
  return out;
}

}  // namespace vgsynth::kernels::detail
