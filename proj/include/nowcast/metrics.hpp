#pragma once

#include <Eigen/Dense>

#include <optional>

namespace nowcast::metrics {

struct MetricReport {
  double rmse = 0.0;
  double mae = 0.0;
  std::optional<double> mape;  // percent; absent when any actual is zero
  std::size_t n = 0;
};

/// RMSE, MAE and MAPE (percent). Throws LengthMismatch; a zero actual makes
/// MAPE undefined, reported via `mape_or_throw`.
MetricReport evaluate(const Eigen::Ref<const Eigen::VectorXd>& y, const Eigen::Ref<const Eigen::VectorXd>& yhat);

/// MAPE value, throwing ZeroActualForMape when it is undefined.
double mape_or_throw(const MetricReport& report);

double mse(const Eigen::Ref<const Eigen::VectorXd>& y, const Eigen::Ref<const Eigen::VectorXd>& yhat);

/// (yhat_t - y_t) / y_t * 100, signed.
Eigen::VectorXd percentage_error_series(const Eigen::Ref<const Eigen::VectorXd>& y,
                                        const Eigen::Ref<const Eigen::VectorXd>& yhat);

}  // namespace nowcast::metrics
