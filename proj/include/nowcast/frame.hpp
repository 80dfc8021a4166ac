#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nowcast/quarter.hpp"

namespace nowcast {

/// Column-oriented table of quarterly series. The index is gap-free, so it is
/// stored as a start label plus the row count. Immutable after construction:
/// every transform returns a new frame.
class QuarterlyFrame {
public:
  QuarterlyFrame() = default;
  QuarterlyFrame(QuarterLabel start, std::vector<std::string> names, Eigen::MatrixXd values,
                 std::string target_name);

  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }
  QuarterLabel start() const { return start_; }
  QuarterLabel end() const { return start_ + (rows() - 1); }
  QuarterLabel label(Eigen::Index row) const { return start_ + row; }
  std::vector<QuarterLabel> index() const;

  const std::vector<std::string>& names() const { return names_; }
  const std::string& target_name() const { return target_; }
  const Eigen::MatrixXd& values() const { return values_; }

  bool has_column(const std::string& name) const;
  Eigen::Index column_index(const std::string& name) const;  // throws UnknownColumn
  Eigen::VectorXd column(const std::string& name) const { return values_.col(column_index(name)); }
  Eigen::VectorXd target() const { return column(target_); }

  /// Row position of `q`, or nullopt when outside the index.
  std::optional<Eigen::Index> row_of(QuarterLabel q) const;

  /// Rows [first, last] inclusive.
  QuarterlyFrame slice(QuarterLabel first, QuarterLabel last) const;
  QuarterlyFrame slice_rows(Eigen::Index begin, Eigen::Index end) const;  // [begin, end)

  /// Copy with only the listed columns (target must be among them).
  QuarterlyFrame select(const std::vector<std::string>& names) const;
  QuarterlyFrame drop(const std::vector<std::string>& names) const;
  QuarterlyFrame with_values(Eigen::MatrixXd values) const;

  /// All non-target column names, in frame order.
  std::vector<std::string> feature_names() const;
  /// Matrix of the given columns in the given order (throws FeatureMismatch when absent).
  Eigen::MatrixXd matrix(const std::vector<std::string>& names) const;

private:
  QuarterLabel start_{};
  std::vector<std::string> names_;
  Eigen::MatrixXd values_;
  std::string target_;
};

QuarterlyFrame load_csv(const std::filesystem::path& path, const std::string& target_name);
QuarterlyFrame parse_csv(std::string_view text, const std::string& target_name);
std::string to_csv(const QuarterlyFrame& frame);

/// real_t = nominal_t * cpi_base / cpi_t for each listed column.
QuarterlyFrame deflate(const QuarterlyFrame& frame, const std::string& cpi, QuarterLabel base,
                       const std::vector<std::string>& columns);

/// ln x_t - ln x_{t-4}; the first four entries are nullopt.
std::vector<std::optional<double>> yoy_log_growth(const Eigen::Ref<const Eigen::VectorXd>& series);

struct ScenarioSpec {
  std::string name;
  QuarterLabel train_end;
  QuarterLabel test_start;
  QuarterLabel test_end;

  void validate() const;  // throws BadScenario
};

struct TrainTestSplit {
  QuarterlyFrame train;
  QuarterlyFrame test;
};

TrainTestSplit split_scenario(const QuarterlyFrame& frame, const ScenarioSpec& spec);

/// The three partitions used throughout: test windows 2019Q1, 2021Q1 and 2022Q1 to 2022Q4.
std::vector<ScenarioSpec> default_scenarios();

}  // namespace nowcast
