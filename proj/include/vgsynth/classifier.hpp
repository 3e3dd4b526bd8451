#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "vgsynth/features.hpp"

namespace vgsynth {

// Pluggable binary classifier over FeatureRow.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual void fit(std::span<const FeatureRow> train) = 0;
  // Positive-class probability.
  virtual double score(const FeatureRow& row) const = 0;
  virtual std::unique_ptr<Classifier> fresh() const = 0;
};

struct LogisticParams {
  double l2 = 1e-3;
  double gradient_tolerance = 1e-6;
  int max_iterations = 10000;
};

// L2-regularised logistic regression on standardised features, fitted by
// batch gradient descent with step 1/L (L a Lipschitz bound of the gradient),
// which makes the training loss monotonically non-increasing.
class LogisticRegression final : public Classifier {
 public:
  explicit LogisticRegression(LogisticParams params = {}) : params_(params) {}

  void fit(std::span<const FeatureRow> train) override;
  double score(const FeatureRow& row) const override;
  std::unique_ptr<Classifier> fresh() const override {
    return std::make_unique<LogisticRegression>(params_);
  }

  const std::array<double, kFeatureCount>& weights() const { return weights_; }
  double bias() const { return bias_; }
  int iterations() const { return iterations_; }
  double final_gradient_norm() const { return gradient_norm_; }
  // Regularised loss before each step and after the last one.
  const std::vector<double>& loss_history() const { return loss_history_; }

 private:
  LogisticParams params_;
  std::array<double, kFeatureCount> mean_{};
  std::array<double, kFeatureCount> scale_ = [] {
    std::array<double, kFeatureCount> a{};
    a.fill(1.0);
    return a;
  }();
  std::array<double, kFeatureCount> weights_{};
  double bias_ = 0.0;
  int iterations_ = 0;
  double gradient_norm_ = 0.0;
  std::vector<double> loss_history_;
};

double sigmoid(double z);

}  // namespace vgsynth
