#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "costsense/acog.hpp"
#include "costsense/data.hpp"
#include "costsense/learner.hpp"
#include "costsense/losses.hpp"
#include "costsense/metrics.hpp"
#include "costsense/sacog.hpp"

namespace costsense {

enum class AlgoFamily { Perceptron, Pa1, Cog, Acog, AcogDiag, Sacog, Ssacog };

struct AlgoId {
  AlgoFamily family;
  std::optional<LossVariant> variant;  // set when the id carries a 1/2 suffix
};

/// perceptron, pa1, cog[1|2], acog[1|2], acog[1|2]-diag, sacog[1|2], ssacog[1|2].
AlgoId parse_algo(const std::string& id);

/// 1e-5, 1e-4, ..., 1e5.
std::vector<double> default_eta_grid();

/// Builds a learner for dimension d with step eta (C for PA-I). Seed feeds
/// the random sketch init.
using LearnerFactory =
    std::function<std::unique_ptr<OnlineLearner>(std::int32_t d, double eta, std::uint64_t seed)>;

struct ExperimentConfig {
  std::filesystem::path dataset;
  std::optional<std::int32_t> dim;
  std::string algo = "acog2";
  LossVariant variant = LossVariant::II;
  Metric metric = Metric::Sum;
  double alpha_p = 0.5;
  double alpha_n = 0.5;
  double c_p = 0.9;
  double c_n = 0.1;
  RhoMode rho_mode = RhoMode::Oracle;
  double fixed_rho = 1.0;
  std::vector<double> eta_grid = default_eta_grid();
  double gamma = 1.0;
  std::int32_t sketch_size = 5;
  SketchInit sketch_init = SketchInit::Canonical;
  SketchSchedule sketch_schedule;
  UpdateRule update_rule = UpdateRule::NewSigma;
  std::size_t permutations = 20;
  std::size_t selection_runs = 3;
  std::uint64_t seed = 1;
  std::size_t folds = 0;  // 0 = online only
  EmptyClassPolicy empty_class = EmptyClassPolicy::Error;
  std::size_t threads = 1;
  std::filesystem::path out;
  std::filesystem::path trace;  // per-round trace of the first evaluation run

  /// Overrides the learner built from algo. Tests use it to inject stubs.
  LearnerFactory factory;

  /// Throws Error when the grid is empty, permutations is 0, or weights are invalid.
  void validate() const;
  CostModel cost_model() const;
  LossVariant effective_variant() const;
};

/// Seeds used for hyperparameter selection; disjoint from seed..seed+P-1.
std::uint64_t selection_seed(std::uint64_t base, std::size_t i);

std::unique_ptr<OnlineLearner> make_learner(const ExperimentConfig& cfg, std::int32_t d,
                                            double eta, std::uint64_t seed);

struct RunMetrics {
  std::string run_id;
  std::uint64_t seed = 0;
  double eta = 0.0;
  double sum = 0.0;
  double cost = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
  std::size_t mistakes_pos = 0;
  std::size_t mistakes_neg = 0;
  double elapsed_ms = 0.0;
};

/// Optional per-round record of a run.
struct RunDetail {
  ConfusionCounts counts;
  std::vector<std::size_t> order;
  std::vector<double> losses;  // loss of the pre-update weights, in stream order
  std::vector<double> rhos;    // rho used in each round
  std::vector<TraceRow> trace;
  Vector final_weights;
  double final_rho = 0.0;
};

/// One prequential pass over ds in the permutation drawn from seed.
RunMetrics run_single(const ExperimentConfig& cfg, const Dataset& ds, double eta,
                      std::uint64_t seed, RunDetail* detail = nullptr);

struct GridResult {
  double eta = 0.0;
  std::vector<double> scores;  // mean target metric per grid value
};

/// Best mean target (max sum, min cost) over the selection permutations; ties
/// go to the smaller eta. Learners without a step size skip the runs.
GridResult grid_select(const ExperimentConfig& cfg, const Dataset& ds);

struct Aggregate {
  Summary sum, cost, sensitivity, specificity, mistakes_pos, mistakes_neg, elapsed_ms;
};

Aggregate aggregate(const std::vector<RunMetrics>& runs);

struct RunReport {
  ExperimentConfig config;
  GridResult selection;  // eta is NaN in k-fold mode, where each fold selects its own
  std::vector<RunMetrics> runs;
  Aggregate agg;
};

/// Grid selection, then `permutations` runs with seeds seed, seed+1, ...
/// Results are ordered by seed regardless of thread scheduling.
RunReport run_experiment(const ExperimentConfig& cfg);
RunReport run_experiment(const ExperimentConfig& cfg, const Dataset& ds);

/// k-fold mode: per fold, select eta prequentially on the training folds,
/// train one pass over them, then score the frozen weights on the held-out fold.
RunReport run_cv(const ExperimentConfig& cfg);
RunReport run_cv(const ExperimentConfig& cfg, const Dataset& ds);

/// Header: run_id,seed,eta,sum,cost,sensitivity,specificity,mistakes_pos,
/// mistakes_neg,elapsed_ms followed by the *_std columns, which only the
/// final run_id=aggregate row fills.
void write_csv(const RunReport& report, std::ostream& out);
void emit_csv(const RunReport& report, const std::filesystem::path& path);

struct CsvTable {
  std::vector<RunMetrics> runs;
  std::uint64_t aggregate_seed = 0;
  double aggregate_eta = 0.0;
  Aggregate agg;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace costsense
