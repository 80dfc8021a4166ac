#pragma once

#include <string>
#include <vector>

#include "nowcast/frame.hpp"

namespace nowcast {

struct ColumnScale {
  std::string name;
  double median = 0.0;
  double iqr = 0.0;
  bool degenerate = false;  // iqr was 0; divisor fell back to 1

  double divisor() const { return degenerate ? 1.0 : iqr; }
  double apply(double x) const { return (x - median) / divisor(); }
  double invert(double z) const { return z * divisor() + median; }
};

/// Per-column median / interquartile-range parameters.
struct ScalerParams {
  std::vector<ColumnScale> columns;

  const ColumnScale& at(const std::string& name) const;  // throws UnknownColumn
  bool covers(const std::string& name) const;
};

ScalerParams fit_robust_scaler(const QuarterlyFrame& frame, const std::vector<std::string>& columns);

/// Transforms every column named in `params`; other columns pass through.
QuarterlyFrame apply_scaler(const ScalerParams& params, const QuarterlyFrame& frame);
QuarterlyFrame invert_scaler(const ScalerParams& params, const QuarterlyFrame& frame);

}  // namespace nowcast
