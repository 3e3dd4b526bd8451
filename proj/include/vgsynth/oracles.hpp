#pragma once

// Independent brute-force references used by the selftest command and the
// test suites. Deliberately naive.

#include <cstdint>
#include <span>

namespace vgsynth::oracles {

// Minimum over every monotone warping path, enumerated recursively.
double dtw_bruteforce(std::span<const double> a, std::span<const double> b);

// Counts positive/negative pairs, ties 0.5, as an exact fraction.
struct PairCount {
  std::uint64_t twice_wins = 0;  // 2 * wins + ties
  std::uint64_t pairs = 0;
  double auc() const { return static_cast<double>(twice_wins) / (2.0 * static_cast<double>(pairs)); }
};
PairCount auc_pairwise(std::span<const double> scores, std::span<const int> labels);

}  // namespace vgsynth::oracles
