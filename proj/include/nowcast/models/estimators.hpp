#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "nowcast/models/spec.hpp"
#include "nowcast/models/tree.hpp"
#include "nowcast/quarter.hpp"

namespace nowcast::models {

// Learned state per family. Each operates on whatever space its inputs are
// given in; preprocessing lives in FittedModel.

struct LinearState {  // ols, ridge, lasso, enet
  double intercept = 0.0;
  Eigen::VectorXd coef;
  int sweeps = 0;  // coordinate-descent sweeps (0 for ols)
};

struct PcrState {
  Eigen::VectorXd means;
  Eigen::MatrixXd loadings;  // p x k
  double intercept = 0.0;
  Eigen::VectorXd theta;     // k
};

struct KnnState {
  int k = 1;
  Eigen::MatrixXd points;
  Eigen::VectorXd targets;
};

struct SvrState {
  Eigen::VectorXd weights;
  double bias = 0.0;
  double objective = 0.0;
};

struct ForestState {
  std::vector<RegressionTree> trees;
};

struct BoostState {
  double base = 0.0;
  double learning_rate = 1.0;
  std::vector<RegressionTree> trees;
  std::vector<double> training_loss;  // mean squared residual after each round
};

struct Ar4State {
  std::array<double, 5> phi{};     // intercept, lags 1..4
  std::array<double, 4> levels{};  // last four training levels, oldest first
  std::array<double, 4> growth{};  // last four training growths, oldest first
  QuarterLabel last{};
};

/// Penalized least squares (1/n)||y - b0 - X b||^2 + lambda[(1-a)||b||^2 + a||b||_1].
LinearState fit_linear(const ModelSpec& spec, const Eigen::MatrixXd& X, const Eigen::VectorXd& y);
PcrState fit_pcr(const ModelSpec& spec, const Eigen::MatrixXd& X, const Eigen::VectorXd& y);
KnnState fit_knn(const ModelSpec& spec, const Eigen::MatrixXd& X, const Eigen::VectorXd& y);
SvrState fit_svr(const ModelSpec& spec, const Eigen::MatrixXd& X, const Eigen::VectorXd& y);
ForestState fit_random_forest(const ModelSpec& spec, const Eigen::MatrixXd& X, const Eigen::VectorXd& y);
BoostState fit_gbt(const ModelSpec& spec, const Eigen::MatrixXd& X, const Eigen::VectorXd& y);
Ar4State fit_ar4(const Eigen::VectorXd& levels, QuarterLabel start);

Eigen::VectorXd predict(const LinearState& s, const Eigen::MatrixXd& X);
Eigen::VectorXd predict(const PcrState& s, const Eigen::MatrixXd& X);
Eigen::VectorXd predict(const KnnState& s, const Eigen::MatrixXd& X);
Eigen::VectorXd predict(const SvrState& s, const Eigen::MatrixXd& X);
Eigen::VectorXd predict(const ForestState& s, const Eigen::MatrixXd& X);
Eigen::VectorXd predict(const BoostState& s, const Eigen::MatrixXd& X);

/// Recursive level forecasts for the `horizon` quarters after s.last.
Eigen::VectorXd forecast(const Ar4State& s, Eigen::Index horizon);

/// Objective minimized by fit_svr, exposed for diagnostics.
double svr_objective(const Eigen::VectorXd& w, double b, const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     double C, double mu);

}  // namespace nowcast::models
