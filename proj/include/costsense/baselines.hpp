#pragma once

#include <cstdint>

#include "costsense/learner.hpp"
#include "costsense/losses.hpp"

namespace costsense {

enum class BaselineKind { Perceptron, PassiveAggressive1, Cog };

/// First-order learners share a single weight vector.
struct LinearModel {
  Vector w;
  BaselineKind kind = BaselineKind::Perceptron;
  double eta = 1.0;  // COG learning rate
  double C = 1.0;    // PA-I aggressiveness cap
  LossVariant variant = LossVariant::I;

  static LinearModel perceptron(std::int32_t d);
  static LinearModel pa1(std::int32_t d, double C);
  static LinearModel cog(std::int32_t d, double eta, LossVariant variant);
};

struct Prediction {
  double score;
  int label;
};

Prediction predict(const LinearModel& m, const SparseVector& x);

/// w += y x on y (w.x) <= 0.
void perceptron_step(LinearModel& m, const SparseVector& x, int y);

/// tau = min(C, hinge / |x|^2), w += tau y x, with the plain margin 1.
void pa1_step(LinearModel& m, const SparseVector& x, int y);

/// w -= eta g on a loss-active round.
void cog_step(LinearModel& m, const SparseVector& x, int y, double rho, LossVariant variant);

class LinearLearner final : public OnlineLearner {
 public:
  explicit LinearLearner(LinearModel model) : model_(std::move(model)) {}

  double score(const SparseVector& x) const override { return dot(model_.w, x); }
  double step(const SparseVector& x, int y, double rho) override;
  Vector weights() const override { return model_.w; }

  const LinearModel& model() const { return model_; }

 private:
  LinearModel model_;
};

}  // namespace costsense
