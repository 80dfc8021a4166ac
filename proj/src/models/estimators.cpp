#include "nowcast/models/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nowcast/error.hpp"
#include "nowcast/frame.hpp"
#include "nowcast/numeric.hpp"
#include "nowcast/rng.hpp"

namespace nowcast::models {

namespace {

constexpr double kCdTolerance = 1e-8;
constexpr int kCdMaxSweeps = 10000;
constexpr int kSvrIterations = 50000;

void check_shape(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  if (X.rows() != y.size()) {
    throw Error(ErrorCode::ShapeMismatch,
                std::to_string(X.rows()) + " design rows vs " + std::to_string(y.size()) + " targets");
  }
  if (X.rows() == 0) throw Error(ErrorCode::ShapeMismatch, "no training rows");
}

double soft_threshold(double z, double gamma) {
  if (z > gamma) return z - gamma;
  if (z < -gamma) return z + gamma;
  return 0.0;
}

Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& X) {
  Eigen::MatrixXd design(X.rows(), X.cols() + 1);
  design.col(0).setOnes();
  design.rightCols(X.cols()) = X;
  return design;
}

/// Solves the stationarity conditions exactly on the support of `beta`
/// (signs held fixed) and keeps the result only if it satisfies the full KKT
/// system, i.e. is the exact minimizer.
bool polish_on_support(const Eigen::MatrixXd& Xc, const Eigen::VectorXd& yc, double l1, double l2,
                       Eigen::VectorXd& beta) {
  const auto n = static_cast<double>(Xc.rows());
  const Eigen::Index p = Xc.cols();
  std::vector<Eigen::Index> active;
  for (Eigen::Index j = 0; j < p; ++j) {
    if (beta(j) != 0.0 || (l1 == 0.0 && Xc.col(j).squaredNorm() > 0.0)) active.push_back(j);
  }
  Eigen::VectorXd candidate = Eigen::VectorXd::Zero(p);
  if (!active.empty()) {
    const auto m = static_cast<Eigen::Index>(active.size());
    Eigen::MatrixXd XA(Xc.rows(), m);
    Eigen::VectorXd sign(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      XA.col(i) = Xc.col(active[static_cast<std::size_t>(i)]);
      const double b = beta(active[static_cast<std::size_t>(i)]);
      sign(i) = b > 0.0 ? 1.0 : (b < 0.0 ? -1.0 : 0.0);
    }
    const Eigen::MatrixXd M = (2.0 / n) * XA.transpose() * XA + l2 * Eigen::MatrixXd::Identity(m, m);
    const Eigen::VectorXd rhs = (2.0 / n) * XA.transpose() * yc - l1 * sign;
    const auto qr = M.colPivHouseholderQr();
    if (qr.rank() < m) return false;
    const Eigen::VectorXd sol = qr.solve(rhs);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (l1 > 0.0 && sol(i) * sign(i) <= 0.0) return false;
      candidate(active[static_cast<std::size_t>(i)]) = sol(i);
    }
  }
  const Eigen::VectorXd resid = yc - Xc * candidate;
  const double scale = 1.0 + (2.0 / n) * Xc.cwiseAbs().transpose().lpNorm<Eigen::Infinity>() *
                                 yc.lpNorm<Eigen::Infinity>();
  for (Eigen::Index j = 0; j < p; ++j) {
    if (candidate(j) != 0.0) continue;
    const double grad = (2.0 / n) * Xc.col(j).dot(resid);
    if (std::abs(grad) > l1 + 1e-10 * scale) return false;
  }
  beta = candidate;
  return true;
}

}  // namespace

LinearState fit_linear(const ModelSpec& spec, const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  spec.validate();
  check_shape(X, y);
  LinearState out;
  if (spec.family == Family::ols) {
    const Eigen::VectorXd b = numeric::solve_least_squares(with_intercept(X), y);
    out.intercept = b(0);
    out.coef = b.tail(X.cols());
    return out;
  }
  double lambda = 0.0;
  double alpha = 0.0;
  switch (spec.family) {
    case Family::ridge: lambda = spec.get("lambda"); break;
    case Family::lasso: lambda = spec.get("lambda"); alpha = 1.0; break;
    case Family::enet: lambda = spec.get("lambda"); alpha = spec.get("alpha"); break;
    default: throw Error(ErrorCode::BadHyperparameter, "not a linear family");
  }
  const auto n = static_cast<double>(X.rows());
  const Eigen::Index p = X.cols();
  const Eigen::RowVectorXd x_mean = X.colwise().mean();
  const double y_mean = y.mean();
  const Eigen::MatrixXd Xc = X.rowwise() - x_mean;
  const Eigen::VectorXd yc = y.array() - y_mean;
  const double l1 = lambda * alpha;
  const double l2 = 2.0 * lambda * (1.0 - alpha);
  const Eigen::VectorXd curvature = (2.0 / n) * Xc.colwise().squaredNorm().transpose();

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  // beta = 0 satisfies the optimality conditions exactly once l1 >= lambda_max.
  if (l1 > 0.0 && p > 0 && l1 >= (2.0 * (X.transpose() * yc)).cwiseAbs().maxCoeff() / n) {
    out.coef = beta;
    out.intercept = y_mean;
    return out;
  }
  Eigen::VectorXd resid = yc;
  bool converged = false;
  double max_change = 0.0;
  int sweep = 0;
  while (sweep < kCdMaxSweeps && !converged) {
    ++sweep;
    max_change = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      const double denom = curvature(j) + l2;
      if (denom <= 0.0) continue;
      const double rho = (2.0 / n) * Xc.col(j).dot(resid) + curvature(j) * beta(j);
      const double updated = soft_threshold(rho, l1) / denom;
      const double delta = updated - beta(j);
      if (delta != 0.0) {
        resid -= delta * Xc.col(j);
        beta(j) = updated;
        max_change = std::max(max_change, std::abs(delta));
      }
    }
    converged = max_change < kCdTolerance;
  }
  const bool exact = polish_on_support(Xc, yc, l1, l2, beta);
  if (!converged && !exact) {
    throw Error(ErrorCode::NotConverged, std::string(to_string(spec.family)) + " after " +
                                             std::to_string(sweep) + " sweeps, last max change " +
                                             std::to_string(max_change));
  }
  out.coef = beta;
  out.intercept = y_mean - x_mean.dot(beta);
  out.sweeps = sweep;
  return out;
}

PcrState fit_pcr(const ModelSpec& spec, const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  spec.validate();
  check_shape(X, y);
  const int k = spec.get_int("k");
  if (k < 1 || k > X.cols()) {
    throw Error(ErrorCode::KOutOfRange, "pcr k = " + std::to_string(k) + " with " + std::to_string(X.cols()) +
                                            " predictors");
  }
  const auto basis = numeric::pca(X);
  PcrState out;
  out.means = basis.column_means;
  out.loadings = basis.loadings.leftCols(k);
  const Eigen::VectorXd b = numeric::solve_least_squares(with_intercept(basis.scores(X, k)), y);
  out.intercept = b(0);
  out.theta = b.tail(k);
  return out;
}

KnnState fit_knn(const ModelSpec& spec, const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  spec.validate();
  check_shape(X, y);
  const int k = spec.get_int("k");
  if (k < 1 || k > X.rows()) {
    throw Error(ErrorCode::KOutOfRange, "knn k = " + std::to_string(k) + " with " + std::to_string(X.rows()) +
                                            " training rows");
  }
  return {k, X, y};
}

double svr_objective(const Eigen::VectorXd& w, double b, const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     double C, double mu) {
  const Eigen::ArrayXd excess = ((y - X * w).array() - b).abs() - mu;
  return 0.5 * w.squaredNorm() + C * excess.max(0.0).sum();
}

SvrState fit_svr(const ModelSpec& spec, const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  spec.validate();
  check_shape(X, y);
  const double C = spec.get("C");
  const double mu = spec.get("mu");
  const Eigen::Index p = X.cols();
  const auto n = static_cast<double>(X.rows());

  std::vector<double> scales = {1.0, std::max(1.0, C), std::max(1.0, C * n)};
  std::sort(scales.begin(), scales.end());
  scales.erase(std::unique(scales.begin(), scales.end()), scales.end());

  SvrState best{Eigen::VectorXd::Zero(p), 0.0, svr_objective(Eigen::VectorXd::Zero(p), 0.0, X, y, C, mu)};
  const auto consider = [&](const Eigen::VectorXd& w, double b, double objective) {
    if (objective < best.objective) best = {w, b, objective};
  };
  for (const double scale : scales) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(p);
    double b = 0.0;
    Eigen::VectorXd w_avg = w;
    double b_avg = 0.0;
    for (int t = 1; t <= kSvrIterations; ++t) {
      const Eigen::ArrayXd resid = (y - X * w).array() - b;
      const Eigen::ArrayXd excess = resid.abs() - mu;
      consider(w, b, 0.5 * w.squaredNorm() + C * excess.max(0.0).sum());
      // d/dr max(0, |r| - mu) = sign(r) outside the tube; r = y - <w,x> - b.
      const Eigen::VectorXd s = (excess > 0.0).select(-resid.sign(), 0.0).matrix();
      const double step = 1.0 / (static_cast<double>(t) * scale);
      w -= step * (w + C * (X.transpose() * s));
      b -= step * C * s.sum();
      const double inv_t = 1.0 / static_cast<double>(t);
      w_avg += inv_t * (w - w_avg);
      b_avg += inv_t * (b - b_avg);
    }
    consider(w, b, svr_objective(w, b, X, y, C, mu));
    consider(w_avg, b_avg, svr_objective(w_avg, b_avg, X, y, C, mu));
  }
  return best;
}

ForestState fit_random_forest(const ModelSpec& spec, const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  spec.validate();
  check_shape(X, y);
  const int mtry = spec.get_int("mtry");
  if (mtry > X.cols()) {
    throw Error(ErrorCode::BadHyperparameter, "mtry = " + std::to_string(mtry) + " exceeds " +
                                                  std::to_string(X.cols()) + " predictors");
  }
  const TreeParams params{spec.get_int("max_depth"), spec.get_int("min_leaf"), mtry, 0.0};
  const bool bootstrap = spec.get("bootstrap") != 0.0;
  const auto n = static_cast<std::size_t>(X.rows());
  const RngStream root(spec.seed.value_or(0), "rf");

  ForestState out;
  const int trees = spec.get_int("trees");
  out.trees.reserve(static_cast<std::size_t>(trees));
  for (int t = 0; t < trees; ++t) {
    RngStream rng = root.substream("tree" + std::to_string(t));
    std::vector<Eigen::Index> rows(n);
    if (bootstrap) {
      for (auto& r : rows) r = static_cast<Eigen::Index>(rng.uniform_index(n));
    } else {
      std::iota(rows.begin(), rows.end(), Eigen::Index{0});
    }
    out.trees.push_back(grow_tree(X, y, rows, params, &rng));
  }
  return out;
}

BoostState fit_gbt(const ModelSpec& spec, const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  spec.validate();
  check_shape(X, y);
  const TreeParams params{spec.get_int("max_depth"), spec.get_int("min_leaf"), static_cast<int>(X.cols()),
                          spec.get("lambda_reg")};
  BoostState out;
  out.base = y.mean();
  out.learning_rate = spec.get("learning_rate");
  std::vector<Eigen::Index> rows(static_cast<std::size_t>(X.rows()));
  std::iota(rows.begin(), rows.end(), Eigen::Index{0});

  Eigen::VectorXd fitted = Eigen::VectorXd::Constant(X.rows(), out.base);
  const int rounds = spec.get_int("trees");
  for (int m = 0; m < rounds; ++m) {
    const Eigen::VectorXd resid = y - fitted;
    auto tree = grow_tree(X, resid, rows, params, nullptr);
    for (Eigen::Index i = 0; i < X.rows(); ++i) fitted(i) += out.learning_rate * tree.predict(X.row(i));
    out.trees.push_back(std::move(tree));
    out.training_loss.push_back((y - fitted).squaredNorm() / static_cast<double>(X.rows()));
  }
  return out;
}

Ar4State fit_ar4(const Eigen::VectorXd& levels, QuarterLabel start) {
  const Eigen::Index n = levels.size();
  if (n < 13) throw Error(ErrorCode::TooShort, "AR(4) needs >= 13 observations, got " + std::to_string(n));
  const auto g = yoy_log_growth(levels);
  const Eigen::Index rows = n - 8;
  Eigen::MatrixXd design(rows, 5);
  Eigen::VectorXd target(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Eigen::Index t = i + 8;
    target(i) = *g[static_cast<std::size_t>(t)];
    design(i, 0) = 1.0;
    for (Eigen::Index lag = 1; lag <= 4; ++lag) design(i, lag) = *g[static_cast<std::size_t>(t - lag)];
  }
  Eigen::VectorXd phi;
  try {
    phi = numeric::solve_least_squares(design, target);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RankDeficient) throw;
    // Constant growth makes the lags collinear with the intercept; the
    // minimum-norm solution still reproduces the in-sample fit.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
    cod.setThreshold(numeric::kRankTolerance);
    cod.compute(design);
    phi = cod.solve(target);
  }
  Ar4State out;
  for (int i = 0; i < 5; ++i) out.phi[static_cast<std::size_t>(i)] = phi(i);
  for (int i = 0; i < 4; ++i) {
    out.levels[static_cast<std::size_t>(i)] = levels(n - 4 + i);
    out.growth[static_cast<std::size_t>(i)] = *g[static_cast<std::size_t>(n - 4 + i)];
  }
  out.last = start + (n - 1);
  return out;
}

Eigen::VectorXd predict(const LinearState& s, const Eigen::MatrixXd& X) {
  return (X * s.coef).array() + s.intercept;
}

Eigen::VectorXd predict(const PcrState& s, const Eigen::MatrixXd& X) {
  const Eigen::MatrixXd scores = (X.rowwise() - s.means.transpose()) * s.loadings;
  return (scores * s.theta).array() + s.intercept;
}

Eigen::VectorXd predict(const KnnState& s, const Eigen::MatrixXd& X) {
  const Eigen::Index n = s.points.rows();
  Eigen::VectorXd out(X.rows());
  std::vector<std::pair<double, Eigen::Index>> dist(static_cast<std::size_t>(n));
  for (Eigen::Index q = 0; q < X.rows(); ++q) {
    for (Eigen::Index i = 0; i < n; ++i) {
      dist[static_cast<std::size_t>(i)] = {(s.points.row(i) - X.row(q)).squaredNorm(), i};
    }
    // Pair ordering breaks distance ties by the earlier training index.
    std::partial_sort(dist.begin(), dist.begin() + s.k, dist.end());
    double sum = 0.0;
    for (int i = 0; i < s.k; ++i) sum += s.targets(dist[static_cast<std::size_t>(i)].second);
    out(q) = sum / s.k;
  }
  return out;
}

Eigen::VectorXd predict(const SvrState& s, const Eigen::MatrixXd& X) {
  return (X * s.weights).array() + s.bias;
}

Eigen::VectorXd predict(const ForestState& s, const Eigen::MatrixXd& X) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    double sum = 0.0;
    for (const auto& tree : s.trees) sum += tree.predict(X.row(i));
    out(i) = sum / static_cast<double>(s.trees.size());
  }
  return out;
}

Eigen::VectorXd predict(const BoostState& s, const Eigen::MatrixXd& X) {
  Eigen::VectorXd out = Eigen::VectorXd::Constant(X.rows(), s.base);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    // Accumulate in training order so in-sample predictions match the fit exactly.
    for (const auto& tree : s.trees) out(i) += s.learning_rate * tree.predict(X.row(i));
  }
  return out;
}

Eigen::VectorXd forecast(const Ar4State& s, Eigen::Index horizon) {
  std::vector<double> levels(s.levels.begin(), s.levels.end());
  std::vector<double> growth(s.growth.begin(), s.growth.end());
  Eigen::VectorXd out(horizon);
  for (Eigen::Index h = 0; h < horizon; ++h) {
    const std::size_t t = growth.size();
    double g = s.phi[0];
    for (std::size_t lag = 1; lag <= 4; ++lag) g += s.phi[lag] * growth[t - lag];
    const double level = levels[t - 4] * std::exp(g);
    growth.push_back(g);
    levels.push_back(level);
    out(h) = level;
  }
  return out;
}

}  // namespace nowcast::models
