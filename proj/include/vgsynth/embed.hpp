#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "vgsynth/kernels.hpp"

namespace vgsynth {

struct EmbedParams {
  double perplexity = 30.0;
  int iterations = 1000;
  double learning_rate = 200.0;
  double early_exaggeration = 12.0;
  int exaggeration_iterations = 250;
  double initial_momentum = 0.5;
  double final_momentum = 0.8;
  int momentum_switch = 250;
  double entropy_tolerance = 1e-5;
  std::size_t max_points = 2000;
  std::uint64_t seed = 0;
  // Record the (unexaggerated) KL objective after every `kl_every` iterations
  // and after each iteration listed in `kl_at`. 0 disables periodic records.
  int kl_every = 0;
  std::vector<int> kl_at;
};

struct Embedding {
  kernels::Matrix coords;             // rows x 2
  std::vector<std::size_t> kept;      // input row of each output row
  std::vector<std::pair<int, double>> kl_trace;
  double max_entropy_error = 0.0;     // worst |H_i - log(perplexity)|
};

// Row-normalised conditional affinities and their symmetrised joint matrix
// (P + P^T) / 2N for already-normalised points.
struct Affinities {
  kernels::Matrix conditional;
  kernels::Matrix joint;
  std::vector<double> entropy_error;
};
Affinities compute_affinities(const kernels::Matrix& points, double perplexity, double tolerance);

// Exact t-distributed stochastic neighbour embedding into 2D. Input columns
// are centred and scaled by the largest absolute value first. Inputs larger
// than max_points are subsampled without replacement.
Embedding embed_2d(const kernels::Matrix& points, const EmbedParams& params);

}  // namespace vgsynth
