#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "costsense/sparse_vector.hpp"

namespace costsense {

enum class Metric { Sum, Cost };

/// Which surrogate: I shifts the hinge margin to the class weight, II scales
/// the hinge slope by it.
enum class LossVariant { I, II };

enum class RhoMode {
  Oracle,   // alpha_p T_n / (alpha_n T_p) from full-dataset counts (sum), c_p / c_n (cost)
  Laplace,  // running add-one estimate of T_n / T_p
  Fixed,    // user supplied value
};

struct ClassCounts {
  std::size_t t_pos = 0;
  std::size_t t_neg = 0;
};

/// Metric weights and the bias parameter rho.
class CostModel {
 public:
  /// Validated constructors. Weights must lie in [0,1], sum to 1 and have a
  /// strictly positive negative-class weight.
  static CostModel sum(double alpha_p, double alpha_n, RhoMode mode = RhoMode::Oracle);
  static CostModel cost(double c_p, double c_n, RhoMode mode = RhoMode::Oracle);

  /// Forces RhoMode::Fixed with the given value (> 0).
  CostModel& with_fixed_rho(double rho);

  Metric metric() const { return metric_; }
  RhoMode mode() const { return mode_; }
  double alpha_p() const { return w_pos_; }
  double alpha_n() const { return w_neg_; }
  double c_p() const { return w_pos_; }
  double c_n() const { return w_neg_; }
  std::size_t seen_pos() const { return seen_pos_; }
  std::size_t seen_neg() const { return seen_neg_; }

  /// Current rho. In Laplace mode with the sum metric this is
  /// alpha_p (seen_neg + 1) / (alpha_n (seen_pos + 1)).
  double rho() const { return rho_; }

  /// Laplace mode: counts the label and refreshes rho. No-op otherwise.
  void observe_label(int y);

  /// Rho for this model; Oracle mode with the sum metric needs dataset counts.
  double resolve(std::optional<ClassCounts> counts = std::nullopt) const;

  /// Binds the oracle value from counts so that rho() is valid afterwards.
  void bind(std::optional<ClassCounts> counts);

 private:
  CostModel(Metric metric, double w_pos, double w_neg, RhoMode mode);
  void refresh_laplace();

  Metric metric_;
  double w_pos_;
  double w_neg_;
  RhoMode mode_;
  double rho_ = 1.0;
  std::size_t seen_pos_ = 0;
  std::size_t seen_neg_ = 0;
};

double resolve_rho(const CostModel& cm, std::optional<ClassCounts> counts = std::nullopt);

/// rho for y = +1, 1 for y = -1.
inline double class_weight(int y, double rho) { return y > 0 ? rho : 1.0; }

/// I: max(0, w_y - y s).  II: w_y max(0, 1 - y s).
double loss(LossVariant variant, double score, int y, double rho);

/// Scalar c such that the loss subgradient with respect to the weights is
/// c * x. Zero when the loss is zero (no update at the hinge kink).
double subgradient_scale(LossVariant variant, int y, double rho, double loss_value);

/// The subgradient vector c * x.
SparseVector subgradient(LossVariant variant, const SparseVector& x, int y, double rho,
                         double loss_value);

}  // namespace costsense
