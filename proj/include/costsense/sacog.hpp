#pragma once

#include <cstdint>

#include "costsense/learner.hpp"
#include "costsense/losses.hpp"
#include "costsense/sketch.hpp"

namespace costsense {

/// When the sketch advances. By default it takes every round; on_loss_only
/// restricts it to loss-active rounds, and lazy = k keeps only every k-th
/// eligible round (the first eligible round always updates).
struct SketchSchedule {
  bool on_loss_only = false;
  std::int32_t lazy = 1;
};

/// Counts eligibility and reports whether this round updates the sketch.
bool sketch_due(const SketchSchedule& schedule, std::int64_t& eligible, bool loss_active);

struct SketchedModel {
  Vector mu;
  OjaSketch sketch;
  double eta = 1.0;
  double gamma = 1.0;
  SketchSchedule schedule;
  std::int64_t eligible = 0;

  static SketchedModel init(std::int32_t d, std::int32_t m, double eta, double gamma,
                            SketchSchedule schedule = {}, SketchInit how = SketchInit::Canonical,
                            std::uint64_t seed = 0);
};

/// mu <- mu - eta (g - S' H S g).
void sketched_mean_update(Vector& mu, const OjaSketch& sk, const SparseVector& g, double eta);

/// One SACOG round: score with mu, advance the sketch, then move mu on a
/// loss-active round. Returns the pre-update score.
double sacog_step(SketchedModel& model, const SparseVector& x, int y, double rho,
                  LossVariant variant);

/// Weights split as mu = w + Z' b so that each round touches w only on the
/// support of x and the gradient.
struct SparseSketchedModel {
  Vector w;
  Vector b;
  SparseOjaSketch sketch;
  double eta = 1.0;
  double gamma = 1.0;
  SketchSchedule schedule;
  std::int64_t eligible = 0;
  std::uint64_t touched = 0;  // entries read or written, accumulated over rounds

  static SparseSketchedModel init(std::int32_t d, std::int32_t m, double eta, double gamma,
                                  SketchSchedule schedule = {},
                                  SketchInit how = SketchInit::Canonical, std::uint64_t seed = 0);
};

/// w.x + b.(Z x) in O(m s).
double lazy_score(const SparseSketchedModel& model, const SparseVector& x);

/// w + Z' b. Dense; tests and diagnostics only.
Vector materialize_mu(const SparseSketchedModel& model);

/// One SSACOG round. The loss is taken from the lazy score before the sketch
/// moves. Whenever Z moves, w absorbs -xhat (delta.b) so that the implied mu
/// is unchanged by the sketch alone; the gradient part applies on loss-active
/// rounds. Returns the pre-update score.
double ssacog_step(SparseSketchedModel& model, const SparseVector& x, int y, double rho,
                   LossVariant variant);

class SacogLearner final : public OnlineLearner {
 public:
  SacogLearner(SketchedModel model, LossVariant variant)
      : model_(std::move(model)), variant_(variant) {}

  double score(const SparseVector& x) const override { return dot(model_.mu, x); }
  double step(const SparseVector& x, int y, double rho) override {
    return sacog_step(model_, x, y, rho, variant_);
  }
  Vector weights() const override { return model_.mu; }

  const SketchedModel& model() const { return model_; }

 private:
  SketchedModel model_;
  LossVariant variant_;
};

class SsacogLearner final : public OnlineLearner {
 public:
  SsacogLearner(SparseSketchedModel model, LossVariant variant)
      : model_(std::move(model)), variant_(variant) {}

  double score(const SparseVector& x) const override { return lazy_score(model_, x); }
  double step(const SparseVector& x, int y, double rho) override {
    return ssacog_step(model_, x, y, rho, variant_);
  }
  Vector weights() const override { return materialize_mu(model_); }

  const SparseSketchedModel& model() const { return model_; }

 private:
  SparseSketchedModel model_;
  LossVariant variant_;
};

}  // namespace costsense
