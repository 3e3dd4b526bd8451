#include "vgsynth/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "vgsynth/error.hpp"

namespace vgsynth {

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw InvalidInput("roc_auc: size mismatch");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Ranks are 1-based; tied blocks share their mean rank (a half-integer).
  double positive_rank_sum = 0.0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double mid = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]] == 1) {
        positive_rank_sum += mid;
        ++positives;
      }
    }
    i = j;
  }
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0)
    throw UndefinedMetric("roc_auc needs both positive and negative labels");
  const double p = static_cast<double>(positives);
  const double u = positive_rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(negatives));
}

double mixing_score(const kernels::Matrix& coords, std::span<const Origin> origins,
                    std::size_t k) {
  const std::size_t n = coords.rows;
  if (origins.size() != n) throw InvalidInput("mixing_score: size mismatch");
  if (k == 0 || k >= n) throw InvalidInput("mixing_score: need 0 < k < N");
  const auto synthetic =
      static_cast<std::size_t>(std::count(origins.begin(), origins.end(), Origin::synthetic));
  if (synthetic == 0 || synthetic == n)
    throw UndefinedMetric("mixing_score needs both real and synthetic points");

  std::vector<std::uint8_t> tag(n);
  for (std::size_t i = 0; i < n; ++i) tag[i] = static_cast<std::uint8_t>(origins[i]);
  const auto neighbours = kernels::knn(coords, k, tag);

  const double share_synthetic = static_cast<double>(synthetic) / static_cast<double>(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t opposite = 0;
    for (auto j : neighbours[i]) opposite += tag[j] != tag[i];
    const double share_opposite =
        origins[i] == Origin::real ? share_synthetic : 1.0 - share_synthetic;
    total += (static_cast<double>(opposite) / static_cast<double>(k)) / share_opposite;
  }
  return total / static_cast<double>(n);
}

}  // namespace vgsynth
