#include "nowcast/ensemble.hpp"

#include <cmath>
#include <set>

#include "nowcast/error.hpp"

namespace nowcast::ensemble {

std::string_view to_string(WeightBasis basis) {
  return basis == WeightBasis::validation_mse ? "validation_mse" : "test_mse";
}

EnsembleWeights compute_weights(const std::vector<std::pair<std::string, double>>& mse_per_member,
                                WeightBasis basis) {
  if (mse_per_member.size() < 2) {
    throw Error(ErrorCode::TooFewMembers, "ensemble needs >= 2 members, got " + std::to_string(mse_per_member.size()));
  }
  EnsembleWeights out;
  out.basis = basis;
  const auto m = static_cast<Eigen::Index>(mse_per_member.size());
  out.mse.resize(m);
  std::set<std::string> seen;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& [name, value] = mse_per_member[static_cast<std::size_t>(i)];
    if (!seen.insert(name).second) throw Error(ErrorCode::MemberMismatch, "duplicate member '" + name + "'");
    if (!std::isfinite(value) || !(value > 0.0)) {
      throw Error(ErrorCode::NonPositiveMse, name + " has MSE " + std::to_string(value));
    }
    out.members.push_back(name);
    out.mse(i) = value;
  }
  // Dividing by the smallest MSE first keeps the inverses O(1) before normalizing.
  const Eigen::ArrayXd inv = out.mse.minCoeff() / out.mse.array();
  out.weights = (inv / inv.sum()).matrix();
  return out;
}

Eigen::VectorXd ensemble_predict(const Eigen::MatrixXd& predictions, const EnsembleWeights& weights) {
  if (predictions.rows() != weights.weights.size()) {
    throw Error(ErrorCode::MemberMismatch, std::to_string(predictions.rows()) + " prediction rows for " +
                                               std::to_string(weights.weights.size()) + " weights");
  }
  if (!predictions.allFinite()) throw Error(ErrorCode::MemberMismatch, "non-finite member prediction");
  return predictions.transpose() * weights.weights;
}

}  // namespace nowcast::ensemble
