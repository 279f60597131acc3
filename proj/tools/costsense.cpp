// Command-line front end: `costsense run ...` streams a LIBSVM dataset through
// one learner and writes per-permutation metrics as CSV.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "costsense/harness.hpp"

namespace cs = costsense;

namespace {

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw cs::Error("bad eta grid entry '" + cell + "'");
    grid.push_back(v);
  }
  return grid;
}

void apply_rho_mode(cs::ExperimentConfig& cfg, const std::string& mode) {
  if (mode == "oracle") {
    cfg.rho_mode = cs::RhoMode::Oracle;
  } else if (mode == "laplace") {
    cfg.rho_mode = cs::RhoMode::Laplace;
  } else if (mode.rfind("fixed:", 0) == 0) {
    cfg.rho_mode = cs::RhoMode::Fixed;
    cfg.fixed_rho = std::stod(mode.substr(6));
  } else {
    throw cs::Error("rho mode must be oracle, laplace or fixed:R");
  }
}

void print_summary(const cs::RunReport& r) {
  const auto& a = r.agg;
  std::printf("algo=%s runs=%zu eta=%s\n", r.config.algo.c_str(), r.runs.size(),
              cs::format_double(r.selection.eta).c_str());
  std::printf("sum(%%)      %8.3f +- %.3f\n", 100.0 * a.sum.mean, 100.0 * a.sum.std);
  std::printf("cost(1e2)    %8.3f +- %.3f\n", a.cost.mean / 100.0, a.cost.std / 100.0);
  std::printf("sensitivity  %8.4f +- %.4f\n", a.sensitivity.mean, a.sensitivity.std);
  std::printf("specificity  %8.4f +- %.4f\n", a.specificity.mean, a.specificity.std);
  std::printf("time(ms)     %8.2f\n", a.elapsed_ms.mean);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cost-sensitive online classification experiments"};
  app.require_subcommand(1);

  cs::ExperimentConfig cfg;
  std::string loss = "2", metric = "sum", rho_mode = "oracle", grid, sketch_init = "canonical";
  std::string update_rule = "new", empty_class = "error", out, trace;
  std::int32_t dim = 0;
  bool on_loss_only = false;

  CLI::App* run = app.add_subcommand("run", "Grid-select eta, then evaluate over permutations");
  run->add_option("--dataset", cfg.dataset, "LIBSVM file")->required()->check(CLI::ExistingFile);
  run->add_option("--dim", dim, "Feature dimension (default: largest index in the file)");
  run->add_option("--algo", cfg.algo,
                  "perceptron|pa1|cog[1|2]|acog[1|2]|acog[1|2]-diag|sacog[1|2]|ssacog[1|2]")
      ->capture_default_str();
  auto* loss_opt = run->add_option("--loss", loss, "Loss variant")->check(CLI::IsMember({"1", "2"}));
  run->add_option("--metric", metric)->check(CLI::IsMember({"sum", "cost"}))->capture_default_str();
  run->add_option("--alpha-p", cfg.alpha_p)->capture_default_str();
  run->add_option("--alpha-n", cfg.alpha_n)->capture_default_str();
  run->add_option("--cp", cfg.c_p)->capture_default_str();
  run->add_option("--cn", cfg.c_n)->capture_default_str();
  run->add_option("--rho-mode", rho_mode, "oracle|laplace|fixed:R")->capture_default_str();
  run->add_option("--eta-grid", grid, "Comma-separated step sizes (default 1e-5..1e5)");
  run->add_option("--gamma", cfg.gamma)->capture_default_str();
  run->add_option("--sketch-size", cfg.sketch_size)->capture_default_str();
  run->add_option("--sketch-init", sketch_init)
      ->check(CLI::IsMember({"canonical", "random"}))
      ->capture_default_str();
  run->add_option("--sketch-lazy", cfg.sketch_schedule.lazy, "Update the sketch every k rounds")
      ->capture_default_str();
  run->add_flag("--sketch-on-loss-only", on_loss_only, "Advance the sketch on loss rounds only");
  run->add_option("--update-rule", update_rule)
      ->check(CLI::IsMember({"new", "old"}))
      ->capture_default_str();
  run->add_option("--permutations", cfg.permutations)->capture_default_str();
  run->add_option("--selection-runs", cfg.selection_runs)->capture_default_str();
  run->add_option("--seed", cfg.seed)->capture_default_str();
  run->add_option("--folds", cfg.folds, "0 = online; k >= 2 = k-fold")->capture_default_str();
  run->add_option("--threads", cfg.threads)->capture_default_str();
  run->add_option("--empty-class", empty_class)
      ->check(CLI::IsMember({"error", "perfect"}))
      ->capture_default_str();
  run->add_option("--out", out, "CSV output path");
  run->add_option("--trace", trace, "Per-round CSV trace of the first run");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dim > 0) cfg.dim = dim;
    const cs::AlgoId id = cs::parse_algo(cfg.algo);
    const cs::LossVariant flag = loss == "1" ? cs::LossVariant::I : cs::LossVariant::II;
    if (id.variant && loss_opt->count() > 0 && *id.variant != flag)
      throw cs::Error("--loss disagrees with the variant in --algo");
    cfg.variant = flag;
    cfg.metric = metric == "sum" ? cs::Metric::Sum : cs::Metric::Cost;
    apply_rho_mode(cfg, rho_mode);
    if (!grid.empty()) cfg.eta_grid = parse_grid(grid);
    cfg.sketch_init = sketch_init == "random" ? cs::SketchInit::Random : cs::SketchInit::Canonical;
    cfg.sketch_schedule.on_loss_only = on_loss_only;
    cfg.update_rule = update_rule == "old" ? cs::UpdateRule::OldSigma : cs::UpdateRule::NewSigma;
    cfg.empty_class =
        empty_class == "perfect" ? cs::EmptyClassPolicy::Perfect : cs::EmptyClassPolicy::Error;
    cfg.out = out;
    cfg.trace = trace;

    const cs::RunReport report = cs::run_experiment(cfg);
    print_summary(report);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
