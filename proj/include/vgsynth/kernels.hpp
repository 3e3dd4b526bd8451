#pragma once

// Data-parallel kernels. Each has an OpenMP implementation (used by the
// library) and a plain serial reference in `serial::` that the tests and
// benchmarks compare against. Parallel results are deterministic: reductions
// are accumulated per row and summed in a fixed order.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace vgsynth::kernels {

using IndexPair = std::pair<std::uint32_t, std::uint32_t>;

// Row-major dense matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}
  double* row(std::size_t i) { return data.data() + i * cols; }
  const double* row(std::size_t i) const { return data.data() + i * cols; }
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// Sets the OpenMP team size used by every kernel (0 = runtime default).
void set_workers(int workers);
int workers();

// Pairs (i < j) with |values[i] - values[j]| < eps and group[i] != group[j],
// sorted ascending. Sort-and-sweep.
std::vector<IndexPair> similar_value_pairs(std::span<const double> values,
                                           std::span<const std::uint32_t> group, double eps);

// DTW distance from every candidate to the reference.
std::vector<double> dtw_to_reference(std::span<const std::vector<double>> candidates,
                                     std::span<const double> reference);

// Squared Euclidean distances between rows of `x` (N x N, zero diagonal).
Matrix squared_distances(const Matrix& x);

// Conditional Gaussian affinities p_{j|i}; each row's bandwidth is found by
// binary search so the row entropy (nats) matches log(perplexity) within `tol`.
// `entropy_error` (optional) receives |H_i - log(perplexity)| per row.
Matrix conditional_affinities(const Matrix& sq_dist, double perplexity, double tol,
                              std::vector<double>* entropy_error = nullptr);

// Gradient of KL(P || Q) for a Student-t embedding `y` (N x 2) given the
// symmetric joint affinities `p`. `p_scale` multiplies P (early exaggeration).
// Returns KL(p_scale * P || Q) when `kl` is non-null.
Matrix tsne_gradient(const Matrix& p, const Matrix& y, double p_scale, double* kl = nullptr);

// Indices of the k nearest rows of `x` to each row (excluding itself), ordered
// by distance, then opposite origin before same origin, then index.
std::vector<std::vector<std::uint32_t>> knn(const Matrix& x, std::size_t k,
                                            std::span<const std::uint8_t> origin);

namespace serial {

std::vector<IndexPair> similar_value_pairs(std::span<const double> values,
                                           std::span<const std::uint32_t> group, double eps);
std::vector<double> dtw_to_reference(std::span<const std::vector<double>> candidates,
                                     std::span<const double> reference);
Matrix squared_distances(const Matrix& x);
Matrix conditional_affinities(const Matrix& sq_dist, double perplexity, double tol,
                              std::vector<double>* entropy_error = nullptr);
Matrix tsne_gradient(const Matrix& p, const Matrix& y, double p_scale, double* kl = nullptr);
std::vector<std::vector<std::uint32_t>> knn(const Matrix& x, std::size_t k,
                                            std::span<const std::uint8_t> origin);

}  // namespace serial

}  // namespace vgsynth::kernels
