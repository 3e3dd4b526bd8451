#include "vgsynth/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vgsynth/error.hpp"

namespace vgsynth::oracles {

namespace {

double walk(std::span<const double> a, std::span<const double> b, std::size_t i, std::size_t j) {
  const double here = std::abs(a[i] - b[j]);
  if (i + 1 == a.size() && j + 1 == b.size()) return here;
  double best = std::numeric_limits<double>::infinity();
  if (i + 1 < a.size()) best = std::min(best, walk(a, b, i + 1, j));
  if (j + 1 < b.size()) best = std::min(best, walk(a, b, i, j + 1));
  if (i + 1 < a.size() && j + 1 < b.size()) best = std::min(best, walk(a, b, i + 1, j + 1));
  return here + best;
}

}  // namespace

double dtw_bruteforce(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidInput("dtw needs non-empty sequences");
  return walk(a, b, 0, 0);
}

PairCount auc_pairwise(std::span<const double> scores, std::span<const int> labels) {
  PairCount c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      ++c.pairs;
      if (scores[i] > scores[j]) c.twice_wins += 2;
      else if (scores[i] == scores[j]) c.twice_wins += 1;
    }
  }
  return c;
}

}  // namespace vgsynth::oracles
