#include <algorithm>
#include <cmath>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kernels_detail.hpp"
#include "vgsynth/generate.hpp"
#include "vgsynth/kernels.hpp"

namespace vgsynth::kernels {

namespace {
int g_workers = 0;

int team() {
#ifdef _OPENMP
  return g_workers > 0 ? g_workers : omp_get_max_threads();
#else
  return 1;
#endif
}
}  // namespace

void set_workers(int workers) { g_workers = std::max(0, workers); }
int workers() { return team(); }

std::vector<IndexPair> similar_value_pairs(std::span<const double> values,
                                           std::span<const std::uint32_t> group, double eps) {
  const auto n = static_cast<std::int64_t>(values.size());
  std::vector<std::uint32_t> order(values.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return values[a] < values[b]; });

  // Sweep: from each position, walk right while the gap stays below eps.
  std::vector<std::vector<IndexPair>> found(values.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(team())
  for (std::int64_t s = 0; s < n; ++s) {
    const std::uint32_t a = order[s];
    for (std::int64_t t = s + 1; t < n; ++t) {
      const std::uint32_t b = order[t];
      if (!(values[b] - values[a] < eps)) break;
      if (group[a] != group[b]) found[s].emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  // Bucket by first index, then sort each bucket: avoids one big sort of
  // what can be a quadratic number of pairs.
  std::vector<std::size_t> offset(values.size() + 1, 0);
  for (const auto& f : found)
    for (const auto& pr : f) ++offset[pr.first + 1];
  std::partial_sum(offset.begin(), offset.end(), offset.begin());
  std::vector<IndexPair> out(offset.back());
  std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
  for (const auto& f : found)
    for (const auto& pr : f) out[fill[pr.first]++] = pr;
#pragma omp parallel for schedule(dynamic, 256) num_threads(team())
  for (std::int64_t i = 0; i < n; ++i)
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(offset[i]),
              out.begin() + static_cast<std::ptrdiff_t>(offset[i + 1]));
  return out;
}

std::vector<double> dtw_to_reference(std::span<const std::vector<double>> candidates,
                                     std::span<const double> reference) {
  const auto n = static_cast<std::int64_t>(candidates.size());
  std::vector<double> out(candidates.size());
#pragma omp parallel for schedule(static) num_threads(team())
  for (std::int64_t i = 0; i < n; ++i) out[i] = dtw_distance(candidates[i], reference);
  return out;
}

Matrix squared_distances(const Matrix& x) {
  const auto n = static_cast<std::int64_t>(x.rows);
  Matrix d(x.rows, x.rows);
#pragma omp parallel for schedule(static) num_threads(team())
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j) d(i, j) = detail::sq_dist(x.row(i), x.row(j), x.cols);
  return d;
}

Matrix conditional_affinities(const Matrix& sq_dist, double perplexity, double tol,
                              std::vector<double>* entropy_error) {
  const std::size_t n = sq_dist.rows;
  Matrix p(n, n);
  std::vector<double> err(n);
#pragma omp parallel for schedule(static) num_threads(team())
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
    err[i] = detail::affinity_row(sq_dist.row(i), p.row(i), n, i, perplexity, tol);
  if (entropy_error) *entropy_error = std::move(err);
  return p;
}

Matrix tsne_gradient(const Matrix& p, const Matrix& y, double p_scale, double* kl) {
  const std::size_t n = y.rows;
  const auto sn = static_cast<std::int64_t>(n);
  Matrix num(n, n);
  std::vector<double> row_sum(n, 0.0);
#pragma omp parallel for schedule(static) num_threads(team())
  for (std::int64_t i = 0; i < sn; ++i) {
    double s = 0.0;
    for (std::int64_t j = 0; j < sn; ++j) {
      if (i == j) continue;
      num(i, j) = 1.0 / (1.0 + detail::sq_dist(y.row(i), y.row(j), y.cols));
      s += num(i, j);
    }
    row_sum[i] = s;
  }
  // Fixed-order reduction keeps results identical to the serial kernel.
  double z = 0.0;
  for (double s : row_sum) z += s;

  Matrix grad(n, y.cols);
  std::vector<double> row_cost(n, 0.0);
#pragma omp parallel for schedule(static) num_threads(team())
  for (std::int64_t i = 0; i < sn; ++i) {
    double cost = 0.0;
    for (std::int64_t j = 0; j < sn; ++j) {
      if (i == j) continue;
      const double q = num(i, j) / z;
      const double pij = p_scale * p(i, j);
      const double mult = 4.0 * (pij - q) * num(i, j);
      for (std::size_t c = 0; c < y.cols; ++c) grad(i, c) += mult * (y(i, c) - y(j, c));
      if (kl && pij > 0.0) cost += pij * std::log(pij / std::max(q, detail::kMinProb));
    }
    row_cost[i] = cost;
  }
  if (kl) {
    double cost = 0.0;
    for (double c : row_cost) cost += c;
    *kl = cost;
  }
  return grad;
}

std::vector<std::vector<std::uint32_t>> knn(const Matrix& x, std::size_t k,
                                            std::span<const std::uint8_t> origin) {
  std::vector<std::vector<std::uint32_t>> out(x.rows);
#pragma omp parallel for schedule(static) num_threads(team())
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(x.rows); ++i)
    out[i] = detail::knn_row(x, i, k, origin);
  return out;
}

}  // namespace vgsynth::kernels
