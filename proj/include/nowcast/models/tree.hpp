#pragma once

#include <Eigen/Dense>

#include <vector>

#include "nowcast/rng.hpp"

namespace nowcast::models {

/// Flat CART node. Internal nodes route `x[feature] <= threshold` left.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
  // Training statistics of the rows that reached the node.
  int count = 0;
  double sse = 0.0;

  bool is_leaf() const { return feature < 0; }
};

struct RegressionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double predict(const Eigen::Ref<const Eigen::RowVectorXd>& x) const;
  int depth() const;
};

struct TreeParams {
  int max_depth = 1;
  int min_leaf = 1;
  int mtry = 1;              // features examined per node
  double leaf_lambda = 0.0;  // leaf value = sum / (count + leaf_lambda)
};

/// Grows a variance-reduction regression tree on X.row(rows[i]). Candidate
/// thresholds are midpoints between consecutive distinct feature values;
/// ties go to the lowest feature index, then the lowest threshold. When
/// params.mtry < p, features are sampled per node from `rng`.
RegressionTree grow_tree(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const std::vector<Eigen::Index>& rows,
                         const TreeParams& params, RngStream* rng);

}  // namespace nowcast::models
