#include "costsense/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "costsense/data.hpp"

namespace costsense {

namespace {

void check_weights(double pos, double neg, const char* what) {
  const bool in_range = pos >= 0.0 && pos <= 1.0 && neg >= 0.0 && neg <= 1.0;
  if (!in_range || std::abs(pos + neg - 1.0) > 1e-9)
    throw Error(std::string(what) + " weights must lie in [0,1] and sum to 1");
  if (!(neg > 0.0)) throw Error(std::string(what) + " negative-class weight must be positive");
}

}  // namespace

CostModel::CostModel(Metric metric, double w_pos, double w_neg, RhoMode mode)
    : metric_(metric), w_pos_(w_pos), w_neg_(w_neg), mode_(mode) {
  if (metric_ == Metric::Cost) {
    rho_ = w_pos_ / w_neg_;
  } else if (mode_ == RhoMode::Laplace) {
    refresh_laplace();
  }
}

CostModel CostModel::sum(double alpha_p, double alpha_n, RhoMode mode) {
  check_weights(alpha_p, alpha_n, "sum");
  return CostModel(Metric::Sum, alpha_p, alpha_n, mode);
}

CostModel CostModel::cost(double c_p, double c_n, RhoMode mode) {
  check_weights(c_p, c_n, "cost");
  return CostModel(Metric::Cost, c_p, c_n, mode);
}

CostModel& CostModel::with_fixed_rho(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw Error("fixed rho must be positive");
  mode_ = RhoMode::Fixed;
  rho_ = rho;
  return *this;
}

void CostModel::refresh_laplace() {
  rho_ = (w_pos_ * static_cast<double>(seen_neg_ + 1)) /
         (w_neg_ * static_cast<double>(seen_pos_ + 1));
}

void CostModel::observe_label(int y) {
  if (mode_ != RhoMode::Laplace) return;
  (y > 0 ? seen_pos_ : seen_neg_) += 1;
  if (metric_ == Metric::Sum) refresh_laplace();
}

double CostModel::resolve(std::optional<ClassCounts> counts) const {
  if (mode_ == RhoMode::Fixed || mode_ == RhoMode::Laplace || metric_ == Metric::Cost) return rho_;
  if (!counts) throw Error("oracle rho for the sum metric needs dataset class counts");
  if (counts->t_pos == 0) throw Error("oracle rho is undefined without positive examples");
  return (w_pos_ * static_cast<double>(counts->t_neg)) /
         (w_neg_ * static_cast<double>(counts->t_pos));
}

void CostModel::bind(std::optional<ClassCounts> counts) { rho_ = resolve(counts); }

double resolve_rho(const CostModel& cm, std::optional<ClassCounts> counts) {
  return cm.resolve(counts);
}

double loss(LossVariant variant, double score, int y, double rho) {
  const double w = class_weight(y, rho);
  const double margin = static_cast<double>(y) * score;
  if (variant == LossVariant::I) return std::max(0.0, w - margin);
  return w * std::max(0.0, 1.0 - margin);
}

double subgradient_scale(LossVariant variant, int y, double rho, double loss_value) {
  if (!(loss_value > 0.0)) return 0.0;
  const double yy = static_cast<double>(y);
  if (variant == LossVariant::I) return -yy;
  return -class_weight(y, rho) * yy;
}

SparseVector subgradient(LossVariant variant, const SparseVector& x, int y, double rho,
                         double loss_value) {
  const double c = subgradient_scale(variant, y, rho, loss_value);
  if (c == 0.0) return {};
  return x.scaled(c);
}

}  // namespace costsense
