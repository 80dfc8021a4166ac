#include "nowcast/metrics.hpp"

#include <cmath>
#include <string>

#include "nowcast/error.hpp"

namespace nowcast::metrics {

namespace {

void check_lengths(const Eigen::Ref<const Eigen::VectorXd>& y, const Eigen::Ref<const Eigen::VectorXd>& yhat) {
  if (y.size() != yhat.size() || y.size() == 0) {
    throw Error(ErrorCode::LengthMismatch,
                "actual length " + std::to_string(y.size()) + ", predicted length " + std::to_string(yhat.size()));
  }
}

}  // namespace

MetricReport evaluate(const Eigen::Ref<const Eigen::VectorXd>& y, const Eigen::Ref<const Eigen::VectorXd>& yhat) {
  check_lengths(y, yhat);
  const Eigen::ArrayXd err = (y - yhat).array();
  const auto n = static_cast<double>(y.size());
  MetricReport r;
  r.n = static_cast<std::size_t>(y.size());
  r.rmse = std::sqrt(err.square().sum() / n);
  r.mae = err.abs().sum() / n;
  if ((y.array() != 0.0).all()) r.mape = (err / y.array()).abs().sum() / n * 100.0;
  return r;
}

double mape_or_throw(const MetricReport& report) {
  if (!report.mape) throw Error(ErrorCode::ZeroActualForMape, "MAPE undefined: an actual value is zero");
  return *report.mape;
}

double mse(const Eigen::Ref<const Eigen::VectorXd>& y, const Eigen::Ref<const Eigen::VectorXd>& yhat) {
  check_lengths(y, yhat);
  return (y - yhat).squaredNorm() / static_cast<double>(y.size());
}

Eigen::VectorXd percentage_error_series(const Eigen::Ref<const Eigen::VectorXd>& y,
                                        const Eigen::Ref<const Eigen::VectorXd>& yhat) {
  check_lengths(y, yhat);
  for (Eigen::Index t = 0; t < y.size(); ++t) {
    if (y(t) == 0.0) throw Error(ErrorCode::ZeroActual, "actual at position " + std::to_string(t) + " is zero");
  }
  return ((yhat - y).array() / y.array() * 100.0).matrix();
}

}  // namespace nowcast::metrics
