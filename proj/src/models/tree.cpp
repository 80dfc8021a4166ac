#include "nowcast/models/tree.hpp"

#include <algorithm>
#include <numeric>

namespace nowcast::models {

double RegressionTree::predict(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
  int i = 0;
  while (!nodes[static_cast<std::size_t>(i)].is_leaf()) {
    const auto& n = nodes[static_cast<std::size_t>(i)];
    i = x(n.feature) <= n.threshold ? n.left : n.right;
  }
  return nodes[static_cast<std::size_t>(i)].value;
}

int RegressionTree::depth() const {
  std::vector<int> d(nodes.size(), 0);
  int deepest = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    deepest = std::max(deepest, d[i]);
    if (!nodes[i].is_leaf()) {
      d[static_cast<std::size_t>(nodes[i].left)] = d[i] + 1;
      d[static_cast<std::size_t>(nodes[i].right)] = d[i] + 1;
    }
  }
  return deepest;
}

namespace {

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double child_sse = 0.0;
};

class Grower {
public:
  Grower(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const TreeParams& params, RngStream* rng)
      : X_(X), y_(y), params_(params), rng_(rng) {}

  RegressionTree grow(std::vector<Eigen::Index> rows) {
    tree_.nodes.clear();
    build(std::move(rows), 0);
    return std::move(tree_);
  }

private:
  int build(std::vector<Eigen::Index> rows, int depth) {
    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    double sum = 0.0;
    for (auto r : rows) sum += y_(r);
    const double mean = sum / static_cast<double>(rows.size());
    double sse = 0.0;
    for (auto r : rows) sse += (y_(r) - mean) * (y_(r) - mean);
    {
      auto& node = tree_.nodes[static_cast<std::size_t>(id)];
      node.count = static_cast<int>(rows.size());
      node.sse = sse;
      node.value = sum / (static_cast<double>(rows.size()) + params_.leaf_lambda);
    }
    const auto n = static_cast<int>(rows.size());
    if (depth >= params_.max_depth || n < 2 * params_.min_leaf || sse <= 0.0) return id;

    const auto split = best_split(rows, mean);
    if (split.feature < 0) return id;

    std::vector<Eigen::Index> left;
    std::vector<Eigen::Index> right;
    for (auto r : rows) (X_(r, split.feature) <= split.threshold ? left : right).push_back(r);
    rows.clear();
    rows.shrink_to_fit();

    const int l = build(std::move(left), depth + 1);
    const int rr = build(std::move(right), depth + 1);
    auto& node = tree_.nodes[static_cast<std::size_t>(id)];
    node.feature = split.feature;
    node.threshold = split.threshold;
    node.left = l;
    node.right = rr;
    return id;
  }

  std::vector<int> candidate_features() {
    const auto p = static_cast<int>(X_.cols());
    std::vector<int> features(static_cast<std::size_t>(p));
    std::iota(features.begin(), features.end(), 0);
    const int m = std::min(params_.mtry, p);
    if (m < p && rng_ != nullptr) {
      for (int i = 0; i < m; ++i) {
        const auto j = i + static_cast<int>(rng_->uniform_index(static_cast<std::size_t>(p - i)));
        std::swap(features[static_cast<std::size_t>(i)], features[static_cast<std::size_t>(j)]);
      }
      features.resize(static_cast<std::size_t>(m));
      std::sort(features.begin(), features.end());
    }
    return features;
  }

  Split best_split(const std::vector<Eigen::Index>& rows, double node_mean) {
    Split best;
    const auto n = rows.size();
    std::vector<std::pair<double, double>> xy(n);
    for (int f : candidate_features()) {
      for (std::size_t i = 0; i < n; ++i) xy[i] = {X_(rows[i], f), y_(rows[i]) - node_mean};
      std::sort(xy.begin(), xy.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      double total = 0.0;
      double total_sq = 0.0;
      for (const auto& [x, v] : xy) {
        total += v;
        total_sq += v * v;
      }
      double left = 0.0;
      double left_sq = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        left += xy[i].second;
        left_sq += xy[i].second * xy[i].second;
        if (xy[i].first == xy[i + 1].first) continue;
        const auto nl = static_cast<double>(i + 1);
        const auto nr = static_cast<double>(n - i - 1);
        if (nl < params_.min_leaf || nr < params_.min_leaf) continue;
        const double right = total - left;
        const double right_sq = total_sq - left_sq;
        const double child = std::max(0.0, left_sq - left * left / nl) + std::max(0.0, right_sq - right * right / nr);
        if (best.feature < 0 || child < best.child_sse) {
          best.feature = f;
          best.threshold = 0.5 * (xy[i].first + xy[i + 1].first);
          if (!(best.threshold < xy[i + 1].first)) best.threshold = xy[i].first;
          best.child_sse = child;
        }
      }
    }
    return best;
  }

  const Eigen::MatrixXd& X_;
  const Eigen::VectorXd& y_;
  TreeParams params_;
  RngStream* rng_;
  RegressionTree tree_;
};

}  // namespace

RegressionTree grow_tree(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const std::vector<Eigen::Index>& rows,
                         const TreeParams& params, RngStream* rng) {
  return Grower(X, y, params, rng).grow(rows);
}

}  // namespace nowcast::models
