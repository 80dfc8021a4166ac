#pragma once

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nowcast::ensemble {

enum class WeightBasis { validation_mse, test_mse };

std::string_view to_string(WeightBasis basis);

struct EnsembleWeights {
  std::vector<std::string> members;
  Eigen::VectorXd weights;
  Eigen::VectorXd mse;  // the inputs, kept for audit
  WeightBasis basis = WeightBasis::validation_mse;
};

/// Normalized inverse-MSE weights, in the given member order.
EnsembleWeights compute_weights(const std::vector<std::pair<std::string, double>>& mse_per_member,
                                WeightBasis basis);

/// Weighted mean; rows of `predictions` are members in weight order.
Eigen::VectorXd ensemble_predict(const Eigen::MatrixXd& predictions, const EnsembleWeights& weights);

}  // namespace nowcast::ensemble
