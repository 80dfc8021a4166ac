#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nowcast/frame.hpp"
#include "nowcast/metrics.hpp"
#include "nowcast/models/fitted_model.hpp"

namespace nowcast::tuning {

struct Fold {
  Eigen::Index train_end = 0;  // training rows [0, train_end)
  Eigen::Index valid_begin = 0;
  Eigen::Index valid_end = 0;  // validation rows [valid_begin, valid_end)
};

/// Expanding-window plan: each fold trains on everything before its
/// validation block, and blocks advance by `horizon`.
struct FoldPlan {
  std::vector<Fold> folds;
  Eigen::Index horizon = 0;
  Eigen::Index n_train = 0;
};

inline constexpr Eigen::Index kMinInitialWindow = 8;

/// Initial window n_train - k_folds * horizon; the last block ends at n_train.
FoldPlan make_forward_chain_folds(Eigen::Index n_train, int k_folds = 5, int horizon = 4);

struct GridPointResult {
  models::ModelSpec spec;
  std::vector<metrics::MetricReport> folds;
  double mean_rmse = 0.0;
  double mean_mse = 0.0;  // mean of squared fold RMSEs (pooled validation MSE)
};

struct CvReport {
  models::Family family = models::Family::ols;
  std::vector<GridPointResult> points;
  std::size_t chosen = 0;

  const GridPointResult& best() const { return points.at(chosen); }
};

/// Lexicographic simplicity key: on equal validation RMSE the smaller key
/// wins (larger lambda, smaller k, smaller C and wider tube, fewer trees,
/// shallower depth, smaller learning rate).
std::vector<double> complexity_key(const models::ModelSpec& spec);

/// Scores each grid point on every fold (scaler and model refit on the fold's
/// training slice only) and selects the minimal mean validation RMSE.
CvReport grid_search(models::Family family, const std::vector<models::ModelSpec>& grid,
                     const QuarterlyFrame& train, const FoldPlan& plan,
                     models::InputSpace space = models::InputSpace::robust);

/// Cartesian product over the axes, in key order then value order.
std::vector<models::ModelSpec> expand_grid(models::Family family,
                                           const std::map<std::string, std::vector<double>>& axes,
                                           std::optional<std::uint64_t> seed);

/// Default axes per family given p predictors and the smallest fold's
/// training size (caps k for k-NN).
std::map<std::string, std::vector<double>> default_axes(models::Family family, Eigen::Index p,
                                                        Eigen::Index min_train_rows);

std::string cv_report_csv(const CvReport& report);

}  // namespace nowcast::tuning
