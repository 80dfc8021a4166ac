#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "nowcast/config.hpp"
#include "nowcast/error.hpp"
#include "nowcast/pipeline.hpp"
#include "nowcast/report.hpp"
#include "nowcast/synthetic.hpp"
#include "nowcast/tuning.hpp"

namespace {

struct RunFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  bool weights_on_test = false;
  std::string out;
  bool cv_report = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config, "Run configuration file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "Override the configured global seed");
  cmd->add_flag("--weights-on-test", f.weights_on_test,
                "Weight the ensemble by test-set MSE (leaks test information)");
  cmd->add_option("--out", f.out, "Output directory (overrides [run] output)");
  cmd->add_flag("--cv-report", f.cv_report, "Also write cv_<scenario>.csv with every grid point and fold");
}

nowcast::RunConfig resolve(const RunFlags& f) {
  auto cfg = nowcast::load_config(f.config);
  if (f.seed) cfg.seed = *f.seed;
  if (f.weights_on_test) cfg.weight_basis = nowcast::ensemble::WeightBasis::test_mse;
  if (!f.out.empty()) cfg.output_dir = f.out;
  return cfg;
}

void run_one(const nowcast::RunConfig& cfg, const nowcast::QuarterlyFrame& prepared, const nowcast::ScenarioSpec& s,
             bool cv_report) {
  const auto report = nowcast::run_scenario(cfg, prepared, s);
  const auto files = nowcast::report::emit_reports(report, cfg.output_dir);
  if (cv_report) {
    std::string cv;
    for (const auto& m : report.members) {
      const auto part = nowcast::tuning::cv_report_csv(*m.cv);
      cv += cv.empty() ? part : part.substr(part.find('\n') + 1);
    }
    const auto path = cfg.output_dir / ("cv_" + nowcast::report::file_stem(s.name) + ".csv");
    std::ofstream(path, std::ios::binary | std::ios::trunc) << cv;
  }
  if (cfg.weight_basis == nowcast::ensemble::WeightBasis::test_mse) {
    std::cerr << "warning: scenario " << s.name << ": ensemble weights use test-set errors\n";
  }
  std::cout << "scenario " << s.name << ": train " << report.train_rows << " quarters, test "
            << report.test_quarters.size() << " quarters, ensemble test RMSE " << report.ensemble_test.rmse << "\n";
  for (const auto& f : files) std::cout << "  wrote " << f.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quarterly GDP nowcasting: synthetic data, scenario runs and report emission"};
  app.require_subcommand(1);

  std::uint64_t synth_seed = 42;
  int synth_quarters = 64;
  std::optional<double> synth_noise;
  std::string synth_start = "2007Q1";
  std::string synth_out = "synthetic.csv";
  std::string synth_truth;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic quarterly dataset");
  synth->add_option("--seed", synth_seed, "Generator seed");
  synth->add_option("--quarters", synth_quarters, "Number of quarters (>= 24)");
  synth->add_option("--noise-sd", synth_noise, "GDP noise standard deviation");
  synth->add_option("--start", synth_start, "First quarter, YYYYQn");
  synth->add_option("--out", synth_out, "CSV output path");
  synth->add_option("--truth", synth_truth, "Ground-truth descriptor path (default <out>.truth)");

  RunFlags run_flags;
  std::string scenario_name;
  auto* run = app.add_subcommand("run", "Run one configured scenario");
  add_run_flags(run, run_flags);
  run->add_option("--scenario", scenario_name, "Scenario name")->required();

  RunFlags all_flags;
  auto* scenarios = app.add_subcommand("scenarios", "Run every configured scenario");
  add_run_flags(scenarios, all_flags);

  std::string predictions_path;
  auto* evaluate = app.add_subcommand("evaluate", "Recompute test metrics from a predictions CSV");
  evaluate->add_option("predictions", predictions_path, "predictions_<scenario>.csv")
      ->required()
      ->check(CLI::ExistingFile);

  long n_train = 0;
  int folds = 5;
  int horizon = 4;
  std::string folds_config;
  std::string folds_scenario;
  auto* inspect = app.add_subcommand("inspect-folds", "Print the forward-chaining fold plan");
  inspect->add_option("--n-train", n_train, "Training rows");
  inspect->add_option("--folds", folds, "Number of folds");
  inspect->add_option("--horizon", horizon, "Validation block length");
  inspect->add_option("--config", folds_config, "Take n-train from a configured scenario")->check(CLI::ExistingFile);
  inspect->add_option("--scenario", folds_scenario, "Scenario name (with --config)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      nowcast::synthetic::Dgp dgp;
      dgp.start = nowcast::QuarterLabel::parse(synth_start);
      if (synth_noise) dgp.noise_sd = *synth_noise;
      const auto data = nowcast::synthetic::generate_synthetic(synth_seed, synth_quarters, dgp);
      std::ofstream(synth_out, std::ios::binary | std::ios::trunc) << nowcast::to_csv(data.frame);
      const std::string truth = synth_truth.empty() ? synth_out + ".truth" : synth_truth;
      std::ofstream(truth, std::ios::binary | std::ios::trunc) << data.descriptor();
      std::cout << "wrote " << synth_out << " (" << data.frame.rows() << " quarters) and " << truth << "\n";
    } else if (*run) {
      const auto cfg = resolve(run_flags);
      run_one(cfg, nowcast::prepare_frame(cfg), cfg.scenario(scenario_name), run_flags.cv_report);
    } else if (*scenarios) {
      const auto cfg = resolve(all_flags);
      const auto prepared = nowcast::prepare_frame(cfg);
      for (const auto& s : cfg.scenarios) run_one(cfg, prepared, s, all_flags.cv_report);
    } else if (*evaluate) {
      std::ifstream in(predictions_path, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      std::cout << nowcast::report::evaluate_predictions(buf.str());
    } else if (*inspect) {
      if (!folds_config.empty()) {
        const auto cfg = nowcast::load_config(folds_config);
        const auto prepared = nowcast::prepare_frame(cfg);
        const auto split = nowcast::split_scenario(prepared, cfg.scenario(folds_scenario));
        n_train = static_cast<long>(split.train.rows());
      }
      const auto plan = nowcast::tuning::make_forward_chain_folds(n_train, folds, horizon);
      std::cout << "fold,train_begin,train_end,valid_begin,valid_end\n";
      for (std::size_t k = 0; k < plan.folds.size(); ++k) {
        const auto& f = plan.folds[k];
        std::cout << k + 1 << ",0," << f.train_end << "," << f.valid_begin << "," << f.valid_end << "\n";
      }
    }
  } catch (const nowcast::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
