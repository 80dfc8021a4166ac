#pragma once

#include <Eigen/Dense>

#include <string>
#include <variant>
#include <vector>

#include "nowcast/frame.hpp"
#include "nowcast/models/estimators.hpp"
#include "nowcast/models/spec.hpp"
#include "nowcast/scaler.hpp"

namespace nowcast::models {

/// Space the estimator sees its inputs in.
enum class InputSpace {
  raw,     // as given
  robust,  // features and target robust-scaled with train-only statistics
  log,     // features and target log-transformed (OLS-log benchmark)
};

std::string_view to_string(InputSpace space);

using ModelState = std::variant<LinearState, PcrState, KnnState, SvrState, ForestState, BoostState, Ar4State>;

/// A trained estimator with its preprocessing. Immutable after fit; predict()
/// always takes raw-level features and returns target levels.
struct FittedModel {
  ModelSpec spec;
  InputSpace space = InputSpace::raw;
  std::vector<std::string> feature_names;
  std::string target_name;
  ScalerParams scaler;  // populated for InputSpace::robust
  ModelState state;
};

/// Fits `spec` on every non-target column of `train`.
FittedModel fit_model(const ModelSpec& spec, const QuarterlyFrame& train, InputSpace space = InputSpace::robust);

/// Fits on a bare design matrix (features named x1..xp, space raw).
FittedModel fit_model(const ModelSpec& spec, const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

/// Target-level predictions, one per row. For ar4 the frame must start after
/// the training boundary; the forecast runs recursively up to frame.end().
Eigen::VectorXd predict(const FittedModel& model, const QuarterlyFrame& frame);

/// X columns ordered as model.feature_names, in raw levels. Not valid for ar4.
Eigen::VectorXd predict(const FittedModel& model, const Eigen::MatrixXd& X);

/// AR(4) recursive level forecast for the quarters after the training end.
Eigen::VectorXd forecast(const FittedModel& model, Eigen::Index horizon);

/// Versioned key/value text form; load(save(m)) predicts bit-identically.
std::string save_model(const FittedModel& model);
FittedModel load_model(std::string_view text);

}  // namespace nowcast::models
