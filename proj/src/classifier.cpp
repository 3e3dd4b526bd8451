#include "vgsynth/classifier.hpp"

#include <cmath>

#include "vgsynth/error.hpp"

namespace vgsynth {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

// log(1 + exp(-m)) without overflow.
double softplus_neg(double m) { return m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m)); }

}  // namespace

void LogisticRegression::fit(std::span<const FeatureRow> train) {
  if (train.empty()) throw InvalidInput("cannot train on an empty set");
  std::size_t positives = 0;
  for (const auto& r : train) positives += r.label == 1;
  if (positives == 0 || positives == train.size())
    throw InvalidInput("training set has a single class");

  constexpr std::size_t d = kFeatureCount;
  const std::size_t n = train.size();
  const double inv_n = 1.0 / static_cast<double>(n);

  mean_.fill(0.0);
  for (const auto& r : train)
    for (std::size_t j = 0; j < d; ++j) mean_[j] += r.features[j];
  for (auto& m : mean_) m *= inv_n;
  std::array<double, d> var{};
  for (const auto& r : train)
    for (std::size_t j = 0; j < d; ++j) var[j] += (r.features[j] - mean_[j]) * (r.features[j] - mean_[j]);
  double trace = 1.0;  // intercept column
  for (std::size_t j = 0; j < d; ++j) {
    const double sd = std::sqrt(var[j] * inv_n);
    scale_[j] = sd > 0 ? sd : 1.0;
    if (sd > 0) trace += 1.0;
  }

  std::vector<double> x(n * d);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j)
      x[i * d + j] = (train[i].features[j] - mean_[j]) / scale_[j];
    y[i] = train[i].label == 1 ? 1.0 : -1.0;
  }

  // The logistic Hessian is bounded by 0.25 X^T X / n + l2 I, whose spectral
  // norm is at most 0.25 trace(X^T X / n) + l2.
  const double step = 1.0 / (0.25 * trace + params_.l2);

  weights_.fill(0.0);
  bias_ = 0.0;
  loss_history_.clear();
  iterations_ = 0;

  std::array<double, d> grad{};
  double grad_bias = 0.0;
  auto evaluate = [&]() {
    grad.fill(0.0);
    grad_bias = 0.0;
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double* xi = &x[i * d];
      double z = bias_;
      for (std::size_t j = 0; j < d; ++j) z += weights_[j] * xi[j];
      const double margin = y[i] * z;
      loss += softplus_neg(margin);
      const double coeff = -y[i] * sigmoid(-margin);
      for (std::size_t j = 0; j < d; ++j) grad[j] += coeff * xi[j];
      grad_bias += coeff;
    }
    double reg = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      grad[j] = grad[j] * inv_n + params_.l2 * weights_[j];
      reg += weights_[j] * weights_[j];
    }
    grad_bias *= inv_n;
    double norm = grad_bias * grad_bias;
    for (double g : grad) norm += g * g;
    gradient_norm_ = std::sqrt(norm);
    return loss * inv_n + 0.5 * params_.l2 * reg;
  };

  loss_history_.push_back(evaluate());
  while (iterations_ < params_.max_iterations && gradient_norm_ >= params_.gradient_tolerance) {
    for (std::size_t j = 0; j < d; ++j) weights_[j] -= step * grad[j];
    bias_ -= step * grad_bias;
    ++iterations_;
    loss_history_.push_back(evaluate());
  }
}

double LogisticRegression::score(const FeatureRow& row) const {
  double z = bias_;
  for (std::size_t j = 0; j < kFeatureCount; ++j)
    z += weights_[j] * (row.features[j] - mean_[j]) / scale_[j];
  return sigmoid(z);
}

}  // namespace vgsynth
