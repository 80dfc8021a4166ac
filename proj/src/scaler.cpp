#include "nowcast/scaler.hpp"

#include <algorithm>

#include "nowcast/error.hpp"
#include "nowcast/numeric.hpp"

namespace nowcast {

const ColumnScale& ScalerParams::at(const std::string& name) const {
  const auto it = std::find_if(columns.begin(), columns.end(), [&](const ColumnScale& c) { return c.name == name; });
  if (it == columns.end()) throw Error(ErrorCode::UnknownColumn, "scaler has no column '" + name + "'");
  return *it;
}

bool ScalerParams::covers(const std::string& name) const {
  return std::any_of(columns.begin(), columns.end(), [&](const ColumnScale& c) { return c.name == name; });
}

ScalerParams fit_robust_scaler(const QuarterlyFrame& frame, const std::vector<std::string>& columns) {
  if (columns.empty()) throw Error(ErrorCode::EmptyColumnSet, "no columns to scale");
  ScalerParams params;
  for (const auto& name : columns) {
    const Eigen::VectorXd x = frame.column(name);
    ColumnScale c;
    c.name = name;
    const double q1 = numeric::quantile(x, 0.25);
    c.median = numeric::quantile(x, 0.5);
    const double q3 = numeric::quantile(x, 0.75);
    c.iqr = q3 - q1;
    c.degenerate = !(c.iqr > 0.0);
    params.columns.push_back(c);
  }
  return params;
}

namespace {

template <typename Op>
QuarterlyFrame transform(const ScalerParams& params, const QuarterlyFrame& frame, Op op) {
  Eigen::MatrixXd values = frame.values();
  for (const auto& c : params.columns) {
    const Eigen::Index j = frame.column_index(c.name);
    values.col(j) = values.col(j).unaryExpr([&](double x) { return op(c, x); });
  }
  return frame.with_values(std::move(values));
}

}  // namespace

QuarterlyFrame apply_scaler(const ScalerParams& params, const QuarterlyFrame& frame) {
  return transform(params, frame, [](const ColumnScale& c, double x) { return c.apply(x); });
}

QuarterlyFrame invert_scaler(const ScalerParams& params, const QuarterlyFrame& frame) {
  return transform(params, frame, [](const ColumnScale& c, double z) { return c.invert(z); });
}

}  // namespace nowcast
