#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nowcast::models {

enum class Family { ols, ridge, lasso, enet, pcr, knn, svr, rf, gbt, ar4 };

std::string_view to_string(Family family);
Family parse_family(std::string_view name);  // throws BadHyperparameter
/// Row label used in reports ("Ridge", "E-Net", "k-NN", ...).
std::string_view display_name(Family family);

/// The eight machine-learning families, in report order.
const std::vector<Family>& ml_families();

struct HyperparameterDecl {
  std::string name;
  bool integer = false;
  bool required = true;
  double fallback = 0.0;  // used when not required and absent
};

const std::vector<HyperparameterDecl>& declared_hyperparameters(Family family);

struct ModelSpec {
  Family family = Family::ols;
  std::map<std::string, double> hyper;
  std::optional<std::uint64_t> seed;

  /// Value of a declared hyperparameter (fallback applied for optional keys).
  double get(const std::string& name) const;
  int get_int(const std::string& name) const { return static_cast<int>(get(name)); }

  /// Checks key set and ranges that do not depend on the data (BadHyperparameter).
  void validate() const;

  /// "lambda=0.1;alpha=0.5"
  std::string describe() const;
};

}  // namespace nowcast::models
