#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "nowcast/pipeline.hpp"

namespace nowcast::report {

/// model,phase,rmse,mae,mape at 3 decimals: train rows for each member,
/// then test rows for each member, Ensemble and the benchmarks.
std::string metrics_csv(const ScenarioReport& report);
/// quarter,actual,<member...>,Ensemble,<benchmark...> over the test quarters.
std::string predictions_csv(const ScenarioReport& report);
/// Signed percentage errors per test quarter, same columns minus actual.
std::string pct_errors_csv(const ScenarioReport& report);
/// member,weight,basis,mse,note
std::string weights_csv(const ScenarioReport& report);

/// File-name-safe form of a scenario name.
std::string file_stem(const std::string& scenario_name);

/// Writes metrics_, predictions_, pct_errors_ and weights_<scenario>.csv.
std::vector<std::filesystem::path> emit_reports(const ScenarioReport& report, const std::filesystem::path& outdir);

/// Re-derives test metrics from a predictions CSV (metrics_csv layout).
std::string evaluate_predictions(std::string_view predictions_csv_text);

}  // namespace nowcast::report
