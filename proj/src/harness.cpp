#include "costsense/harness.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "costsense/baselines.hpp"
#include "costsense/random.hpp"

namespace costsense {

namespace {

constexpr std::uint64_t kSelectionOffset = 1'000'000;

// Runs body(i) for i in [0, n) on up to `threads` threads; rethrows the first failure.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < std::min(threads, n); ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

double target(const ExperimentConfig& cfg, const RunMetrics& r) {
  return cfg.metric == Metric::Sum ? r.sum : r.cost;
}

bool improves(Metric metric, double score, double eta, double best, double best_eta) {
  if (metric == Metric::Sum ? score > best : score < best) return true;
  return score == best && eta < best_eta;
}

bool has_step_size(const ExperimentConfig& cfg) {
  return cfg.factory || parse_algo(cfg.algo).family != AlgoFamily::Perceptron;
}

double undefined_or(const std::function<double()>& f) {
  try {
    return f();
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

Dataset subset(const Dataset& ds, const std::vector<std::size_t>& idx) {
  std::vector<Example> ex;
  ex.reserve(idx.size());
  for (std::size_t i : idx) ex.push_back(ds.examples[i]);
  return make_dataset(std::move(ex), ds.d);
}

}  // namespace

AlgoId parse_algo(const std::string& id) {
  std::string base = id;
  bool diag = false;
  if (base.size() > 5 && base.ends_with("-diag")) {
    diag = true;
    base.resize(base.size() - 5);
  }
  std::optional<LossVariant> variant;
  if (!base.empty() && (base.back() == '1' || base.back() == '2')) {
    variant = base.back() == '1' ? LossVariant::I : LossVariant::II;
    base.pop_back();
  }
  auto fail = [&]() -> AlgoId { throw Error("unknown algorithm '" + id + "'"); };
  if (diag) return base == "acog" ? AlgoId{AlgoFamily::AcogDiag, variant} : fail();
  if (base == "perceptron" && !variant) return {AlgoFamily::Perceptron, variant};
  if (base == "pa" && variant == LossVariant::I) return {AlgoFamily::Pa1, std::nullopt};
  if (base == "cog") return {AlgoFamily::Cog, variant};
  if (base == "acog") return {AlgoFamily::Acog, variant};
  if (base == "sacog") return {AlgoFamily::Sacog, variant};
  if (base == "ssacog") return {AlgoFamily::Ssacog, variant};
  return fail();
}

std::vector<double> default_eta_grid() {
  std::vector<double> grid;
  for (int e = -5; e <= 5; ++e) grid.push_back(std::pow(10.0, e));
  return grid;
}

void ExperimentConfig::validate() const {
  if (!factory) parse_algo(algo);
  if (eta_grid.empty()) throw Error("eta grid is empty");
  for (double eta : eta_grid)
    if (!(eta > 0.0) || !std::isfinite(eta)) throw Error("eta grid values must be positive");
  if (permutations < 1) throw Error("permutations must be >= 1");
  if (selection_runs < 1) throw Error("selection runs must be >= 1");
  if (folds == 1) throw Error("folds must be 0 (online) or >= 2");
  if (threads < 1) throw Error("threads must be >= 1");
  if (!(gamma > 0.0)) throw Error("gamma must be positive");
  cost_model();
}

CostModel ExperimentConfig::cost_model() const {
  CostModel cm = metric == Metric::Sum ? CostModel::sum(alpha_p, alpha_n, rho_mode)
                                       : CostModel::cost(c_p, c_n, rho_mode);
  if (rho_mode == RhoMode::Fixed) cm.with_fixed_rho(fixed_rho);
  return cm;
}

LossVariant ExperimentConfig::effective_variant() const {
  if (factory) return variant;
  return parse_algo(algo).variant.value_or(variant);
}

std::uint64_t selection_seed(std::uint64_t base, std::size_t i) {
  return base + kSelectionOffset + i;
}

std::unique_ptr<OnlineLearner> make_learner(const ExperimentConfig& cfg, std::int32_t d,
                                            double eta, std::uint64_t seed) {
  if (cfg.factory) return cfg.factory(d, eta, seed);
  const AlgoId id = parse_algo(cfg.algo);
  const LossVariant v = id.variant.value_or(cfg.variant);
  switch (id.family) {
    case AlgoFamily::Perceptron:
      return std::make_unique<LinearLearner>(LinearModel::perceptron(d));
    case AlgoFamily::Pa1:
      return std::make_unique<LinearLearner>(LinearModel::pa1(d, eta));
    case AlgoFamily::Cog:
      return std::make_unique<LinearLearner>(LinearModel::cog(d, eta, v));
    case AlgoFamily::Acog:
      return std::make_unique<AcogLearner>(
          GaussianModel::init(d, eta, cfg.gamma, CovarianceMode::Full, cfg.update_rule), v);
    case AlgoFamily::AcogDiag:
      return std::make_unique<AcogLearner>(
          GaussianModel::init(d, eta, cfg.gamma, CovarianceMode::Diagonal, cfg.update_rule), v);
    case AlgoFamily::Sacog:
      return std::make_unique<SacogLearner>(
          SketchedModel::init(d, cfg.sketch_size, eta, cfg.gamma, cfg.sketch_schedule,
                              cfg.sketch_init, seed),
          v);
    case AlgoFamily::Ssacog:
      return std::make_unique<SsacogLearner>(
          SparseSketchedModel::init(d, cfg.sketch_size, eta, cfg.gamma, cfg.sketch_schedule,
                                    cfg.sketch_init, seed),
          v);
  }
  throw Error("unhandled algorithm family");
}

RunMetrics run_single(const ExperimentConfig& cfg, const Dataset& ds, double eta,
                      std::uint64_t seed, RunDetail* detail) {
  const auto start = std::chrono::steady_clock::now();
  const auto order = permutation(ds.size(), seed);
  CostModel cm = cfg.cost_model();
  cm.bind(ClassCounts{ds.t_pos, ds.t_neg});
  auto learner = make_learner(cfg, ds.d, eta, seed);
  const LossVariant variant = cfg.effective_variant();

  ConfusionCounts cc;
  double cum_loss = 0.0;
  if (detail) {
    *detail = RunDetail{};
    detail->order = order;
    detail->losses.reserve(order.size());
    detail->rhos.reserve(order.size());
    detail->trace.reserve(order.size());
  }
  for (std::size_t i : order) {
    const Example& e = ds.examples[i];
    cm.observe_label(e.label);
    const double rho = cm.rho();
    const double s = learner->step(e.features, e.label, rho);
    cc.record(predict_label(s), e.label);
    if (!detail) continue;
    const double l = loss(variant, s, e.label, rho);
    cum_loss += l;
    detail->losses.push_back(l);
    detail->rhos.push_back(rho);
    detail->trace.push_back(TraceRow{
        cc.total(), cum_loss, cc.m_pos, cc.m_neg,
        undefined_or([&] { return sum_metric(cc, cfg.alpha_p, cfg.alpha_n, cfg.empty_class); }),
        cost_metric(cc, cfg.c_p, cfg.c_n)});
  }

  RunMetrics r;
  r.seed = seed;
  r.eta = eta;
  r.sum = sum_metric(cc, cfg.alpha_p, cfg.alpha_n, cfg.empty_class);
  r.cost = cost_metric(cc, cfg.c_p, cfg.c_n);
  r.sensitivity = sensitivity(cc, cfg.empty_class);
  r.specificity = specificity(cc, cfg.empty_class);
  r.mistakes_pos = cc.m_pos;
  r.mistakes_neg = cc.m_neg;
  if (detail) {
    detail->counts = cc;
    detail->final_weights = learner->weights();
    detail->final_rho = cm.rho();
  }
  r.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

GridResult grid_select(const ExperimentConfig& cfg, const Dataset& ds) {
  if (cfg.eta_grid.empty()) throw Error("eta grid is empty");
  if (!has_step_size(cfg)) return {cfg.eta_grid.front(), {}};

  const std::size_t runs = cfg.selection_runs;
  const std::size_t n = cfg.eta_grid.size() * runs;
  std::vector<double> raw(n);
  parallel_for(n, cfg.threads, [&](std::size_t k) {
    raw[k] = target(cfg, run_single(cfg, ds, cfg.eta_grid[k / runs],
                                    selection_seed(cfg.seed, k % runs)));
  });

  GridResult out;
  out.scores.resize(cfg.eta_grid.size());
  double best = cfg.metric == Metric::Sum ? -std::numeric_limits<double>::infinity()
                                          : std::numeric_limits<double>::infinity();
  double best_eta = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < cfg.eta_grid.size(); ++g) {
    double acc = 0.0;
    for (std::size_t k = 0; k < runs; ++k) acc += raw[g * runs + k];
    const double score = acc / static_cast<double>(runs);
    out.scores[g] = score;
    if (improves(cfg.metric, score, cfg.eta_grid[g], best, best_eta)) {
      best = score;
      best_eta = cfg.eta_grid[g];
    }
  }
  out.eta = best_eta;
  return out;
}

Aggregate aggregate(const std::vector<RunMetrics>& runs) {
  auto col = [&](auto field) {
    std::vector<double> v;
    v.reserve(runs.size());
    for (const RunMetrics& r : runs) v.push_back(static_cast<double>(r.*field));
    return summarize(v);
  };
  return {col(&RunMetrics::sum),          col(&RunMetrics::cost),
          col(&RunMetrics::sensitivity),  col(&RunMetrics::specificity),
          col(&RunMetrics::mistakes_pos), col(&RunMetrics::mistakes_neg),
          col(&RunMetrics::elapsed_ms)};
}

RunReport run_experiment(const ExperimentConfig& cfg) {
  return run_experiment(cfg, load_dataset(cfg.dataset, cfg.dim));
}

RunReport run_experiment(const ExperimentConfig& cfg, const Dataset& ds) {
  cfg.validate();
  if (cfg.folds >= 2) return run_cv(cfg, ds);

  RunReport report;
  report.config = cfg;
  report.selection = grid_select(cfg, ds);
  report.runs.resize(cfg.permutations);
  RunDetail first;
  parallel_for(cfg.permutations, cfg.threads, [&](std::size_t i) {
    const bool traced = i == 0 && !cfg.trace.empty();
    RunMetrics r = run_single(cfg, ds, report.selection.eta, cfg.seed + i,
                              traced ? &first : nullptr);
    r.run_id = std::to_string(i);
    report.runs[i] = std::move(r);
  });
  report.agg = aggregate(report.runs);

  if (!cfg.trace.empty()) {
    std::ofstream out(cfg.trace, std::ios::binary);
    if (!out) throw Error("cannot open trace file " + cfg.trace.string());
    write_trace(out, first.trace);
    if (!out) throw Error("failed writing trace file " + cfg.trace.string());
  }
  if (!cfg.out.empty()) emit_csv(report, cfg.out);
  return report;
}

RunReport run_cv(const ExperimentConfig& cfg) {
  return run_cv(cfg, load_dataset(cfg.dataset, cfg.dim));
}

RunReport run_cv(const ExperimentConfig& cfg, const Dataset& ds) {
  cfg.validate();
  if (cfg.folds < 2) throw Error("k-fold mode needs folds >= 2");
  const auto folds = split_folds(ds, cfg.folds, cfg.seed);

  RunReport report;
  report.config = cfg;
  report.selection.eta = std::numeric_limits<double>::quiet_NaN();
  report.runs.resize(folds.size());
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::size_t> train_idx;
    for (std::size_t g = 0; g < folds.size(); ++g)
      if (g != f) train_idx.insert(train_idx.end(), folds[g].begin(), folds[g].end());
    const Dataset train = subset(ds, train_idx);

    ExperimentConfig inner = cfg;
    inner.seed = cfg.seed + f;
    const double eta = grid_select(inner, train).eta;
    RunDetail detail;
    run_single(inner, train, eta, inner.seed, &detail);

    ConfusionCounts cc;
    for (std::size_t i : folds[f]) {
      const Example& e = ds.examples[i];
      cc.record(predict_label(dot(detail.final_weights, e.features)), e.label);
    }
    RunMetrics r;
    r.run_id = std::to_string(f);
    r.seed = inner.seed;
    r.eta = eta;
    r.sum = sum_metric(cc, cfg.alpha_p, cfg.alpha_n, cfg.empty_class);
    r.cost = cost_metric(cc, cfg.c_p, cfg.c_n);
    r.sensitivity = sensitivity(cc, cfg.empty_class);
    r.specificity = specificity(cc, cfg.empty_class);
    r.mistakes_pos = cc.m_pos;
    r.mistakes_neg = cc.m_neg;
    r.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    report.runs[f] = std::move(r);
  }
  report.agg = aggregate(report.runs);
  if (!cfg.out.empty()) emit_csv(report, cfg.out);
  return report;
}

namespace {

const char* const kColumns[] = {"run_id",       "seed",         "eta",
                                "sum",          "cost",         "sensitivity",
                                "specificity",  "mistakes_pos", "mistakes_neg",
                                "elapsed_ms",   "sum_std",      "cost_std",
                                "sensitivity_std", "specificity_std", "mistakes_pos_std",
                                "mistakes_neg_std", "elapsed_ms_std"};
constexpr std::size_t kNumColumns = std::size(kColumns);

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError(line, "bad number '" + s + "'");
  return v;
}

template <typename T>
T parse_integer(const std::string& s, std::size_t line) {
  T v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError(line, "bad integer '" + s + "'");
  return v;
}

}  // namespace

void write_csv(const RunReport& report, std::ostream& out) {
  for (std::size_t c = 0; c < kNumColumns; ++c) out << (c ? "," : "") << kColumns[c];
  out << '\n';
  for (const RunMetrics& r : report.runs) {
    out << r.run_id << ',' << r.seed << ',' << format_double(r.eta) << ','
        << format_double(r.sum) << ',' << format_double(r.cost) << ','
        << format_double(r.sensitivity) << ',' << format_double(r.specificity) << ','
        << r.mistakes_pos << ',' << r.mistakes_neg << ',' << format_double(r.elapsed_ms)
        << ",,,,,,,\n";
  }
  const Aggregate& a = report.agg;
  const Summary cols[] = {a.sum,          a.cost,         a.sensitivity, a.specificity,
                          a.mistakes_pos, a.mistakes_neg, a.elapsed_ms};
  out << "aggregate," << report.config.seed << ',' << format_double(report.selection.eta);
  for (const Summary& s : cols) out << ',' << format_double(s.mean);
  for (const Summary& s : cols) out << ',' << format_double(s.std);
  out << '\n';
}

void emit_csv(const RunReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file " + path.string());
  write_csv(report, out);
  out.flush();
  if (!out) throw Error("failed writing output file " + path.string());
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(line_no, "missing header");
  const auto header = split_commas(line);
  if (header.size() != kNumColumns) throw ParseError(line_no, "unexpected header");
  for (std::size_t c = 0; c < kNumColumns; ++c)
    if (header[c] != kColumns[c]) throw ParseError(line_no, "unexpected column " + header[c]);

  bool saw_aggregate = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (saw_aggregate) throw ParseError(line_no, "rows after the aggregate row");
    const auto cells = split_commas(line);
    if (cells.size() != kNumColumns) throw ParseError(line_no, "wrong number of cells");
    if (cells[0] == "aggregate") {
      saw_aggregate = true;
      table.aggregate_seed = parse_integer<std::uint64_t>(cells[1], line_no);
      table.aggregate_eta = parse_double(cells[2], line_no);
      Summary* cols[] = {&table.agg.sum,          &table.agg.cost,
                         &table.agg.sensitivity,  &table.agg.specificity,
                         &table.agg.mistakes_pos, &table.agg.mistakes_neg,
                         &table.agg.elapsed_ms};
      for (std::size_t k = 0; k < 7; ++k) {
        cols[k]->mean = parse_double(cells[3 + k], line_no);
        cols[k]->std = parse_double(cells[10 + k], line_no);
      }
      continue;
    }
    RunMetrics r;
    r.run_id = cells[0];
    r.seed = parse_integer<std::uint64_t>(cells[1], line_no);
    r.eta = parse_double(cells[2], line_no);
    r.sum = parse_double(cells[3], line_no);
    r.cost = parse_double(cells[4], line_no);
    r.sensitivity = parse_double(cells[5], line_no);
    r.specificity = parse_double(cells[6], line_no);
    r.mistakes_pos = parse_integer<std::size_t>(cells[7], line_no);
    r.mistakes_neg = parse_integer<std::size_t>(cells[8], line_no);
    r.elapsed_ms = parse_double(cells[9], line_no);
    table.runs.push_back(std::move(r));
  }
  if (!saw_aggregate) throw ParseError(line_no, "missing aggregate row");
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_csv(in);
}

}  // namespace costsense
