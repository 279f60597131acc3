#include "costsense/metrics.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "costsense/baselines.hpp"

namespace costsense {

void ConfusionCounts::record(int predicted, int truth) {
  if (truth > 0) {
    ++t_pos;
    if (predicted <= 0) ++m_pos;
  } else {
    ++t_neg;
    if (predicted > 0) ++m_neg;
  }
}

ConfusionCounts& ConfusionCounts::merge(const ConfusionCounts& other) {
  t_pos += other.t_pos;
  t_neg += other.t_neg;
  m_pos += other.m_pos;
  m_neg += other.m_neg;
  return *this;
}

namespace {

double rate(std::size_t total, std::size_t wrong, EmptyClassPolicy policy, const char* what) {
  if (total == 0) {
    if (policy == EmptyClassPolicy::Perfect) return 1.0;
    throw Error(std::string(what) + " is undefined: no examples of that class");
  }
  return static_cast<double>(total - wrong) / static_cast<double>(total);
}

}  // namespace

double sensitivity(const ConfusionCounts& cc, EmptyClassPolicy policy) {
  return rate(cc.t_pos, cc.m_pos, policy, "sensitivity");
}

double specificity(const ConfusionCounts& cc, EmptyClassPolicy policy) {
  return rate(cc.t_neg, cc.m_neg, policy, "specificity");
}

double sum_metric(const ConfusionCounts& cc, double alpha_p, double alpha_n,
                  EmptyClassPolicy policy) {
  return alpha_p * sensitivity(cc, policy) + alpha_n * specificity(cc, policy);
}

double cost_metric(const ConfusionCounts& cc, double c_p, double c_n) {
  return c_p * static_cast<double>(cc.m_pos) + c_n * static_cast<double>(cc.m_neg);
}

double sum_lower_bound(double alpha_n, std::size_t t_neg, double cumulative_loss) {
  if (t_neg == 0) throw Error("sum bound needs at least one negative example");
  return 1.0 - alpha_n / static_cast<double>(t_neg) * cumulative_loss;
}

double cost_upper_bound(double c_n, double cumulative_loss) { return c_n * cumulative_loss; }

void RegretTrace::record(double learner_loss, double comparator_loss) {
  const double prev_l = learner_.empty() ? 0.0 : learner_.back();
  const double prev_c = comparator_.empty() ? 0.0 : comparator_.back();
  learner_.push_back(prev_l + learner_loss);
  comparator_.push_back(prev_c + comparator_loss);
}

double RegretTrace::regret(std::size_t rounds) const {
  if (rounds == 0 || rounds > size()) throw Error("regret round out of range");
  return learner_[rounds - 1] - comparator_[rounds - 1];
}

double regret_slope(const std::vector<double>& regret) {
  const std::size_t n = regret.size();
  if (n < 100) throw Error("regret slope needs at least 100 rounds, got " + std::to_string(n));
  const std::size_t first = n / 2;  // 0-based index of round n/2 + 1
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const auto k = static_cast<double>(n - first);
  for (std::size_t i = first; i < n; ++i) {
    const double x = std::log(static_cast<double>(i + 1));
    const double y = std::log(std::max(regret[i], 1.0));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

double regret_slope(const RegretTrace& trace) {
  std::vector<double> r(trace.size());
  for (std::size_t t = 0; t < r.size(); ++t) r[t] = trace.regret(t + 1);
  return regret_slope(r);
}

namespace {

std::vector<std::size_t> resolve_order(const Dataset& ds, const std::vector<std::size_t>& order) {
  if (!order.empty()) return order;
  std::vector<std::size_t> all(ds.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return all;
}

}  // namespace

double total_loss(const Dataset& ds, const Vector& w, double rho, LossVariant variant,
                  const std::vector<std::size_t>& order) {
  double total = 0.0;
  for (std::size_t i : resolve_order(ds, order)) {
    const Example& e = ds.examples[i];
    total += loss(variant, dot(w, e.features), e.label, rho);
  }
  return total;
}

Vector fit_comparator(const Dataset& ds, double rho, LossVariant variant, std::size_t epochs,
                      double eta0, const std::vector<std::size_t>& order) {
  if (epochs < 1) throw Error("comparator fit needs at least one epoch");
  if (!(eta0 > 0.0)) throw Error("comparator fit needs eta0 > 0");
  const auto idx = resolve_order(ds, order);
  LinearModel model = LinearModel::cog(ds.d, eta0, variant);
  Vector best;
  double best_loss = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= epochs; ++k) {
    model.eta = eta0 / std::sqrt(static_cast<double>(k));
    for (std::size_t i : idx) {
      const Example& e = ds.examples[i];
      cog_step(model, e.features, e.label, rho, variant);
    }
    const double l = total_loss(ds, model.w, rho, variant, idx);
    if (l < best_loss) {
      best_loss = l;
      best = model.w;
    }
  }
  return best;
}

Summary summarize(const std::vector<double>& values) {
  if (values.empty()) throw Error("cannot summarize an empty series");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_trace(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << "round,cum_loss,mistakes_pos,mistakes_neg,sum,cost\n";
  for (const TraceRow& r : rows) {
    out << r.round << ',' << format_double(r.cum_loss) << ',' << r.mistakes_pos << ','
        << r.mistakes_neg << ',' << format_double(r.sum) << ',' << format_double(r.cost) << '\n';
  }
}

}  // namespace costsense
