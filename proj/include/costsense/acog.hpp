#pragma once

#include <cstdint>

#include "costsense/learner.hpp"
#include "costsense/losses.hpp"

namespace costsense {

enum class CovarianceMode { Full, Diagonal };

/// Which covariance the mean step multiplies: the freshly shrunk one (default)
/// or the pre-update one, as AROW does.
enum class UpdateRule { NewSigma, OldSigma };

/// Gaussian belief w ~ N(mu, Sigma). Sigma starts at the identity and only
/// shrinks, so its spectrum stays in (0, 1].
struct GaussianModel {
  Vector mu;
  Matrix sigma;       // d x d, Full mode only
  Vector sigma_diag;  // length d, Diagonal mode only
  CovarianceMode mode = CovarianceMode::Full;
  double eta = 1.0;
  double gamma = 1.0;
  UpdateRule update_rule = UpdateRule::NewSigma;

  static GaussianModel init(std::int32_t d, double eta, double gamma,
                            CovarianceMode mode = CovarianceMode::Full,
                            UpdateRule rule = UpdateRule::NewSigma);

  std::int32_t dim() const { return static_cast<std::int32_t>(mu.size()); }
  double trace() const;
};

/// Sigma <- Sigma - Sigma x x' Sigma / (gamma + x' Sigma x), then symmetrized.
void covariance_update(Matrix& sigma, const SparseVector& x, double gamma);

/// Diagonal analogue: s_i <- s_i - s_i^2 x_i^2 / (gamma + sum_j s_j x_j^2).
void covariance_update(Vector& sigma_diag, const SparseVector& x, double gamma);

/// mu <- mu - eta Sigma g.
void mean_update(Vector& mu, const Matrix& sigma, const SparseVector& g, double eta);
void mean_update(Vector& mu, const Vector& sigma_diag, const SparseVector& g, double eta);

/// One ACOG round. On a loss-active round the covariance is shrunk first and
/// the mean then moves along Sigma g; otherwise nothing changes. Returns the
/// pre-update score mu.x.
double acog_step(GaussianModel& model, const SparseVector& x, int y, double rho,
                 LossVariant variant);

class AcogLearner final : public OnlineLearner {
 public:
  AcogLearner(GaussianModel model, LossVariant variant)
      : model_(std::move(model)), variant_(variant) {}

  double score(const SparseVector& x) const override { return dot(model_.mu, x); }
  double step(const SparseVector& x, int y, double rho) override {
    return acog_step(model_, x, y, rho, variant_);
  }
  Vector weights() const override { return model_.mu; }

  const GaussianModel& model() const { return model_; }

 private:
  GaussianModel model_;
  LossVariant variant_;
};

}  // namespace costsense
