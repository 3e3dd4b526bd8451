#include <algorithm>
#include <cmath>
#include <numeric>

#include "vgsynth/error.hpp"
#include "vgsynth/generate.hpp"
#include "vgsynth/kernels.hpp"
#include "kernels_detail.hpp"

namespace vgsynth::kernels::serial {

std::vector<IndexPair> similar_value_pairs(std::span<const double> values,
                                           std::span<const std::uint32_t> group, double eps) {
  std::vector<IndexPair> out;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (group[i] != group[j] && std::abs(values[i] - values[j]) < eps)
        out.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
  return out;
}

std::vector<double> dtw_to_reference(std::span<const std::vector<double>> candidates,
                                     std::span<const double> reference) {
  std::vector<double> out(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i)
    out[i] = dtw_distance(candidates[i], reference);
  return out;
}

Matrix squared_distances(const Matrix& x) {
  Matrix d(x.rows, x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.rows; ++j) d(i, j) = detail::sq_dist(x.row(i), x.row(j), x.cols);
  return d;
}

Matrix conditional_affinities(const Matrix& sq_dist, double perplexity, double tol,
                              std::vector<double>* entropy_error) {
  const std::size_t n = sq_dist.rows;
  Matrix p(n, n);
  if (entropy_error) entropy_error->assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double err = detail::affinity_row(sq_dist.row(i), p.row(i), n, i, perplexity, tol);
    if (entropy_error) (*entropy_error)[i] = err;
  }
  return p;
}

Matrix tsne_gradient(const Matrix& p, const Matrix& y, double p_scale, double* kl) {
  const std::size_t n = y.rows;
  Matrix num(n, n);
  // Sums run row by row, then over rows, the order the parallel kernel uses.
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      num(i, j) = 1.0 / (1.0 + detail::sq_dist(y.row(i), y.row(j), y.cols));
      s += num(i, j);
    }
    z += s;
  }
  Matrix grad(n, y.cols);
  double cost = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row_cost = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double q = num(i, j) / z;
      const double pij = p_scale * p(i, j);
      const double mult = 4.0 * (pij - q) * num(i, j);
      for (std::size_t c = 0; c < y.cols; ++c) grad(i, c) += mult * (y(i, c) - y(j, c));
      if (kl && pij > 0.0) row_cost += pij * std::log(pij / std::max(q, detail::kMinProb));
    }
    cost += row_cost;
  }
  if (kl) *kl = cost;
  return grad;
}

std::vector<std::vector<std::uint32_t>> knn(const Matrix& x, std::size_t k,
                                            std::span<const std::uint8_t> origin) {
  std::vector<std::vector<std::uint32_t>> out(x.rows);
  for (std::size_t i = 0; i < x.rows; ++i) out[i] = detail::knn_row(x, i, k, origin);
  return out;
}

}  // namespace vgsynth::kernels::serial
