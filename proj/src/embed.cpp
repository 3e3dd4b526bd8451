#include "vgsynth/embed.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vgsynth/error.hpp"
#include "vgsynth/rng.hpp"

namespace vgsynth {

using kernels::Matrix;

Affinities compute_affinities(const Matrix& points, double perplexity, double tolerance) {
  Affinities a;
  const auto dist = kernels::squared_distances(points);
  a.conditional = kernels::conditional_affinities(dist, perplexity, tolerance, &a.entropy_error);
  const std::size_t n = points.rows;
  a.joint = Matrix(n, n);
  const double norm = 1.0 / (2.0 * static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a.joint(i, j) = (a.conditional(i, j) + a.conditional(j, i)) * norm;
  return a;
}

namespace {

Matrix normalise(const Matrix& in, std::span<const std::size_t> rows) {
  Matrix x(rows.size(), in.cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    std::copy_n(in.row(rows[r]), in.cols, x.row(r));
  for (std::size_t c = 0; c < x.cols; ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < x.rows; ++r) mean += x(r, c);
    mean /= static_cast<double>(x.rows);
    for (std::size_t r = 0; r < x.rows; ++r) x(r, c) -= mean;
  }
  double max_abs = 0.0;
  for (double v : x.data) max_abs = std::max(max_abs, std::abs(v));
  if (max_abs > 0)
    for (double& v : x.data) v /= max_abs;
  return x;
}

}  // namespace

Embedding embed_2d(const Matrix& points, const EmbedParams& params) {
  Embedding out;
  Rng rng(params.seed);

  std::vector<std::size_t> rows(points.rows);
  std::iota(rows.begin(), rows.end(), 0);
  if (rows.size() > params.max_points) {
    for (std::size_t i = 0; i < params.max_points; ++i) {
      const auto j = i + uniform_index(rng, rows.size() - i);
      std::swap(rows[i], rows[j]);
    }
    rows.resize(params.max_points);
    std::sort(rows.begin(), rows.end());
  }
  const std::size_t n = rows.size();
  if (n < 4) throw InvalidInput("embed_2d needs at least 4 points");
  if (!(params.perplexity > 0) || params.perplexity >= static_cast<double>(n))
    throw ConfigError("perplexity must be in (0, N)");
  if (params.iterations < 1) throw ConfigError("iterations must be >= 1");

  const auto aff = compute_affinities(normalise(points, rows), params.perplexity,
                                      params.entropy_tolerance);
  out.max_entropy_error = *std::max_element(aff.entropy_error.begin(), aff.entropy_error.end());
  out.kept = rows;

  constexpr std::size_t dims = 2;
  Matrix y(n, dims);
  for (double& v : y.data) v = 1e-4 * standard_normal(rng);
  Matrix update(n, dims);
  Matrix gains(n, dims, 1.0);

  auto record = [&](int iter) {
    const bool periodic = params.kl_every > 0 && iter % params.kl_every == 0;
    const bool listed =
        std::find(params.kl_at.begin(), params.kl_at.end(), iter) != params.kl_at.end();
    if (!periodic && !listed) return;
    double kl = 0.0;
    kernels::tsne_gradient(aff.joint, y, 1.0, &kl);
    out.kl_trace.emplace_back(iter, kl);
  };

  for (int iter = 1; iter <= params.iterations; ++iter) {
    const bool exaggerate = iter <= params.exaggeration_iterations;
    const double momentum =
        iter <= params.momentum_switch ? params.initial_momentum : params.final_momentum;
    const auto grad =
        kernels::tsne_gradient(aff.joint, y, exaggerate ? params.early_exaggeration : 1.0);
    for (std::size_t k = 0; k < y.data.size(); ++k) {
      const bool same_sign = (grad.data[k] > 0) == (update.data[k] > 0);
      gains.data[k] = same_sign ? std::max(gains.data[k] * 0.8, 0.01) : gains.data[k] + 0.2;
      update.data[k] = momentum * update.data[k] - params.learning_rate * gains.data[k] * grad.data[k];
      y.data[k] += update.data[k];
    }
    for (std::size_t c = 0; c < dims; ++c) {
      double mean = 0.0;
      for (std::size_t r = 0; r < n; ++r) mean += y(r, c);
      mean /= static_cast<double>(n);
      for (std::size_t r = 0; r < n; ++r) y(r, c) -= mean;
    }
    record(iter);
  }
  out.coords = std::move(y);
  return out;
}

}  // namespace vgsynth
