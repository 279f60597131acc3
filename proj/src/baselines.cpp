#include "costsense/baselines.hpp"

#include <algorithm>

#include "costsense/data.hpp"

namespace costsense {

LinearModel LinearModel::perceptron(std::int32_t d) {
  return LinearModel{Vector::Zero(d), BaselineKind::Perceptron, 1.0, 1.0, LossVariant::I};
}

LinearModel LinearModel::pa1(std::int32_t d, double C) {
  if (!(C > 0.0)) throw Error("PA-I needs C > 0");
  return LinearModel{Vector::Zero(d), BaselineKind::PassiveAggressive1, 1.0, C, LossVariant::I};
}

LinearModel LinearModel::cog(std::int32_t d, double eta, LossVariant variant) {
  if (!(eta > 0.0)) throw Error("COG needs eta > 0");
  return LinearModel{Vector::Zero(d), BaselineKind::Cog, eta, 1.0, variant};
}

Prediction predict(const LinearModel& m, const SparseVector& x) {
  const double s = dot(m.w, x);
  return {s, predict_label(s)};
}

void perceptron_step(LinearModel& m, const SparseVector& x, int y) {
  if (static_cast<double>(y) * dot(m.w, x) <= 0.0) axpy(static_cast<double>(y), x, m.w);
}

void pa1_step(LinearModel& m, const SparseVector& x, int y) {
  const double hinge = std::max(0.0, 1.0 - static_cast<double>(y) * dot(m.w, x));
  if (hinge <= 0.0) return;
  const double tau = std::min(m.C, hinge / x.squared_norm());
  axpy(tau * static_cast<double>(y), x, m.w);
}

void cog_step(LinearModel& m, const SparseVector& x, int y, double rho, LossVariant variant) {
  const double l = loss(variant, dot(m.w, x), y, rho);
  const double c = subgradient_scale(variant, y, rho, l);
  if (c != 0.0) axpy(-m.eta * c, x, m.w);
}

double LinearLearner::step(const SparseVector& x, int y, double rho) {
  const double s = dot(model_.w, x);
  switch (model_.kind) {
    case BaselineKind::Perceptron:
      perceptron_step(model_, x, y);
      break;
    case BaselineKind::PassiveAggressive1:
      pa1_step(model_, x, y);
      break;
    case BaselineKind::Cog:
      cog_step(model_, x, y, rho, model_.variant);
      break;
  }
  return s;
}

}  // namespace costsense
