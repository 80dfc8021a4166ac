#include "nowcast/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "nowcast/error.hpp"

namespace nowcast {

namespace {

template <typename F>
auto staged(const std::string& stage, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const Error& e) {
    throw e.annotated(stage);
  }
}

models::ModelSpec plain_spec(models::Family family) {
  models::ModelSpec spec;
  spec.family = family;
  return spec;
}

}  // namespace

QuarterlyFrame prepare_frame(const RunConfig& config, const QuarterlyFrame& raw) {
  return staged("prepare", [&] {
    const QuarterLabel base = config.cpi_base.value_or(raw.start());
    const auto real = deflate(raw, config.cpi, base, config.nominal);
    std::vector<std::string> dropped = {config.cpi};
    for (const auto& c : config.exclude) {
      if (c == config.target) throw Error(ErrorCode::BadConfig, "cannot exclude the target column");
      if (std::find(dropped.begin(), dropped.end(), c) == dropped.end()) dropped.push_back(c);
    }
    return real.drop(dropped);
  });
}

QuarterlyFrame prepare_frame(const RunConfig& config) {
  const auto raw = staged("load", [&] { return load_csv(config.data_path, config.target); });
  return prepare_frame(config, raw);
}

ScenarioReport run_scenario(const RunConfig& config, const QuarterlyFrame& prepared, const ScenarioSpec& scenario) {
  const std::string tag = "scenario " + scenario.name;
  const auto split = staged(tag + " split", [&] { return split_scenario(prepared, scenario); });
  const auto& train = split.train;
  const auto& test = split.test;

  ScenarioReport report;
  report.scenario = scenario;
  report.train_rows = train.rows();
  report.test_quarters = test.index();
  report.test_actual = test.target();
  {
    auto columns = train.feature_names();
    columns.push_back(train.target_name());
    report.train_scaler = fit_robust_scaler(train, columns);
  }

  const auto plan = staged(tag + " folds", [&] {
    return tuning::make_forward_chain_folds(train.rows(), config.folds, config.horizon);
  });
  const Eigen::Index p = static_cast<Eigen::Index>(train.feature_names().size());
  const Eigen::Index smallest_fold = plan.folds.front().train_end;

  for (const auto family : config.families) {
    const std::string fam(models::to_string(family));
    ModelResult r;
    r.family = family;
    r.name = std::string(models::display_name(family));
    if (family == models::Family::ar4) throw Error(ErrorCode::BadConfig, "ar4 is a benchmark, not a member family");

    auto axes = tuning::default_axes(family, p, smallest_fold);
    if (const auto it = config.grids.find(family); it != config.grids.end()) {
      for (const auto& [k, v] : it->second) axes[k] = v;
    }
    const auto grid = staged(tag + " grid " + fam, [&] { return tuning::expand_grid(family, axes, config.seed); });
    r.cv = staged(tag + " tune " + fam, [&] { return tuning::grid_search(family, grid, train, plan); });
    r.model = staged(tag + " refit " + fam, [&] { return models::fit_model(r.cv->best().spec, train); });
    r.train = metrics::evaluate(train.target(), models::predict(r.model, train));
    r.test_predictions = staged(tag + " predict " + fam, [&] { return models::predict(r.model, test); });
    r.test = metrics::evaluate(report.test_actual, r.test_predictions);
    report.members.push_back(std::move(r));
  }

  staged(tag + " ensemble", [&] {
    std::vector<std::pair<std::string, double>> mse;
    for (const auto& m : report.members) {
      const double value = config.weight_basis == ensemble::WeightBasis::validation_mse
                               ? m.cv->best().mean_mse
                               : metrics::mse(report.test_actual, m.test_predictions);
      mse.emplace_back(m.name, value);
    }
    report.weights = ensemble::compute_weights(mse, config.weight_basis);
    Eigen::MatrixXd stacked(static_cast<Eigen::Index>(report.members.size()), test.rows());
    for (std::size_t i = 0; i < report.members.size(); ++i) {
      stacked.row(static_cast<Eigen::Index>(i)) = report.members[i].test_predictions.transpose();
    }
    report.ensemble_predictions = ensemble::ensemble_predict(stacked, report.weights);
    report.ensemble_test = metrics::evaluate(report.test_actual, report.ensemble_predictions);

    double worst = 0.0;
    for (const auto& m : report.members) worst = std::max(worst, m.test.rmse);
    if (report.ensemble_test.rmse > worst * (1.0 + 1e-12)) {
      throw Error(ErrorCode::InvariantViolated, "ensemble RMSE exceeds the worst member RMSE");
    }
    if (std::abs(report.weights.weights.sum() - 1.0) > 1e-12) {
      throw Error(ErrorCode::InvariantViolated, "ensemble weights do not sum to 1");
    }
    return 0;
  });

  const auto benchmark = [&](const std::string& name, models::Family family, models::InputSpace space) {
    ModelResult r;
    r.name = name;
    r.family = family;
    r.model = staged(tag + " benchmark " + name, [&] { return models::fit_model(plain_spec(family), train, space); });
    r.test_predictions = staged(tag + " benchmark " + name, [&] { return models::predict(r.model, test); });
    r.test = metrics::evaluate(report.test_actual, r.test_predictions);
    report.benchmarks.push_back(std::move(r));
  };
  benchmark("AR(4)", models::Family::ar4, models::InputSpace::raw);
  benchmark("OLS-log", models::Family::ols, models::InputSpace::log);
  benchmark("OLS-RS", models::Family::ols, models::InputSpace::robust);
  return report;
}

ScenarioReport run_scenario(const RunConfig& config, const std::string& scenario_name) {
  const auto& scenario = config.scenario(scenario_name);
  return run_scenario(config, prepare_frame(config), scenario);
}

}  // namespace nowcast
