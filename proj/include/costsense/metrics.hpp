#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "costsense/data.hpp"
#include "costsense/losses.hpp"

namespace costsense {

struct ConfusionCounts {
  std::size_t t_pos = 0;
  std::size_t t_neg = 0;
  std::size_t m_pos = 0;
  std::size_t m_neg = 0;

  void record(int predicted, int truth);
  ConfusionCounts& merge(const ConfusionCounts& other);

  std::size_t total() const { return t_pos + t_neg; }
  std::size_t mistakes() const { return m_pos + m_neg; }

  bool operator==(const ConfusionCounts&) const = default;
};

/// What a rate means for a class with no examples: an error, or a perfect score.
enum class EmptyClassPolicy { Error, Perfect };

/// (T_p - M_p) / T_p.
double sensitivity(const ConfusionCounts& cc, EmptyClassPolicy policy = EmptyClassPolicy::Error);
/// (T_n - M_n) / T_n.
double specificity(const ConfusionCounts& cc, EmptyClassPolicy policy = EmptyClassPolicy::Error);

/// alpha_p sensitivity + alpha_n specificity, a fraction in [0, 1].
double sum_metric(const ConfusionCounts& cc, double alpha_p, double alpha_n,
                  EmptyClassPolicy policy = EmptyClassPolicy::Error);

/// c_p M_p + c_n M_n in raw units.
double cost_metric(const ConfusionCounts& cc, double c_p, double c_n);

/// 1 - (alpha_n / T_n) L, where L is the learner's cumulative loss (which
/// equals comparator loss plus regret). Holds as a lower bound on sum_metric
/// whenever rho = alpha_p T_n / (alpha_n T_p) was used throughout.
double sum_lower_bound(double alpha_n, std::size_t t_neg, double cumulative_loss);

/// c_n L. Upper bound on cost_metric when rho = c_p / c_n.
double cost_upper_bound(double c_n, double cumulative_loss);

/// Running learner and comparator losses.
class RegretTrace {
 public:
  void record(double learner_loss, double comparator_loss);

  std::size_t size() const { return learner_.size(); }
  const std::vector<double>& cumulative_loss() const { return learner_; }
  const std::vector<double>& comparator_loss() const { return comparator_; }
  /// Regret after `rounds` rounds (1-based).
  double regret(std::size_t rounds) const;
  double regret() const { return size() == 0 ? 0.0 : regret(size()); }

 private:
  std::vector<double> learner_;
  std::vector<double> comparator_;
};

/// Least-squares slope of log(max(regret_t, 1)) against log t over the second
/// half of the rounds. Needs at least 100 rounds.
double regret_slope(const RegretTrace& trace);
double regret_slope(const std::vector<double>& regret);

/// Sum over the dataset of loss(w.x_i, y_i) in the given order (all of it if empty).
double total_loss(const Dataset& ds, const Vector& w, double rho, LossVariant variant,
                  const std::vector<std::size_t>& order = {});

/// Approximate best fixed weights in hindsight: full passes of subgradient
/// descent in `order` with step eta0 / sqrt(k) in pass k, returning the
/// pass-end iterate of lowest total loss. One pass is exactly a COG run.
Vector fit_comparator(const Dataset& ds, double rho, LossVariant variant, std::size_t epochs = 50,
                      double eta0 = 1.0, const std::vector<std::size_t>& order = {});

struct Summary {
  double mean = 0.0;
  double std = 0.0;  // sample std (divisor n - 1), 0 for a single value
};

Summary summarize(const std::vector<double>& values);

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

struct TraceRow {
  std::size_t round = 0;
  double cum_loss = 0.0;
  std::size_t mistakes_pos = 0;
  std::size_t mistakes_neg = 0;
  double sum = 0.0;  // NaN while a class is still unseen
  double cost = 0.0;
};

/// CSV with header round,cum_loss,mistakes_pos,mistakes_neg,sum,cost.
void write_trace(std::ostream& out, const std::vector<TraceRow>& rows);

}  // namespace costsense
