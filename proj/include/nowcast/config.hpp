#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nowcast/ensemble.hpp"
#include "nowcast/frame.hpp"
#include "nowcast/models/spec.hpp"

namespace nowcast {

/// Everything a scenario run needs. See README "Config reference" for the
/// file grammar.
struct RunConfig {
  std::filesystem::path data_path;
  std::string target = "GDP";
  std::string cpi = "CPI";
  std::optional<QuarterLabel> cpi_base;  // default: first quarter of the data
  std::vector<std::string> nominal = {"VAT", "CRED", "GCUREX", "GCAPEX", "FDI"};
  std::vector<std::string> exclude;      // dropped before modelling (the CPI column always is)
  std::vector<ScenarioSpec> scenarios = default_scenarios();
  std::vector<models::Family> families = models::ml_families();
  std::map<models::Family, std::map<std::string, std::vector<double>>> grids;  // overrides per axis
  std::uint64_t seed = 42;
  ensemble::WeightBasis weight_basis = ensemble::WeightBasis::validation_mse;
  int folds = 5;
  int horizon = 4;
  std::filesystem::path output_dir = "out";

  const ScenarioSpec& scenario(const std::string& name) const;  // throws BadConfig
};

/// Strict parse: unknown sections or keys are errors. Relative data paths are
/// resolved against `base_dir`.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

}  // namespace nowcast
