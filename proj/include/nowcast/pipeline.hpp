#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nowcast/config.hpp"
#include "nowcast/ensemble.hpp"
#include "nowcast/frame.hpp"
#include "nowcast/metrics.hpp"
#include "nowcast/models/fitted_model.hpp"
#include "nowcast/scaler.hpp"
#include "nowcast/tuning.hpp"

namespace nowcast {

struct ModelResult {
  std::string name;  // report row label
  models::Family family = models::Family::ols;
  std::optional<metrics::MetricReport> train;  // absent for benchmarks
  metrics::MetricReport test;
  Eigen::VectorXd test_predictions;  // levels, aligned to ScenarioReport::test_quarters
  std::optional<tuning::CvReport> cv;
  models::FittedModel model;  // refit on the full training split
};

struct ScenarioReport {
  ScenarioSpec scenario;
  Eigen::Index train_rows = 0;
  std::vector<QuarterLabel> test_quarters;
  Eigen::VectorXd test_actual;
  ScalerParams train_scaler;           // train-split statistics used by the refit models
  std::vector<ModelResult> members;    // machine-learning models, config order
  ensemble::EnsembleWeights weights;
  Eigen::VectorXd ensemble_predictions;
  metrics::MetricReport ensemble_test;
  std::vector<ModelResult> benchmarks;  // AR(4), OLS-log, OLS-RS
};

/// load -> deflate -> drop the CPI and excluded columns.
QuarterlyFrame prepare_frame(const RunConfig& config);
QuarterlyFrame prepare_frame(const RunConfig& config, const QuarterlyFrame& raw);

/// Full scenario pipeline on an already prepared frame.
ScenarioReport run_scenario(const RunConfig& config, const QuarterlyFrame& prepared, const ScenarioSpec& scenario);
ScenarioReport run_scenario(const RunConfig& config, const std::string& scenario_name);

}  // namespace nowcast
