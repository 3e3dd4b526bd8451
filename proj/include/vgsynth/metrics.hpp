#pragma once

#include <span>
#include <vector>

#include "vgsynth/features.hpp"
#include "vgsynth/kernels.hpp"

namespace vgsynth {

// Mann-Whitney AUC with mid-ranks: P(score+ > score-) + 0.5 P(tie).
// Throws UndefinedMetric unless both classes are present.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

// Mean over points of the fraction of k nearest neighbours with the opposite
// origin, each divided by that origin's share of the whole set. ~1 for
// well-mixed data, ~0 for separated data. Distance ties prefer the opposite
// origin.
double mixing_score(const kernels::Matrix& coords, std::span<const Origin> origins, std::size_t k);

}  // namespace vgsynth
