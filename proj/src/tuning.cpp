#include "nowcast/tuning.hpp"

#include <cmath>

#include "nowcast/error.hpp"
#include "nowcast/text.hpp"

namespace nowcast::tuning {

using models::Family;
using models::ModelSpec;

FoldPlan make_forward_chain_folds(Eigen::Index n_train, int k_folds, int horizon) {
  if (k_folds < 1 || horizon < 1) {
    throw Error(ErrorCode::TooShortForFolds, "need k_folds >= 1 and horizon >= 1");
  }
  const Eigen::Index initial = n_train - static_cast<Eigen::Index>(k_folds) * horizon;
  if (initial < kMinInitialWindow) {
    throw Error(ErrorCode::TooShortForFolds, std::to_string(n_train) + " training rows leave an initial window of " +
                                                 std::to_string(initial) + " (< " +
                                                 std::to_string(kMinInitialWindow) + ")");
  }
  FoldPlan plan;
  plan.horizon = horizon;
  plan.n_train = n_train;
  for (int k = 0; k < k_folds; ++k) {
    const Eigen::Index end = initial + static_cast<Eigen::Index>(k) * horizon;
    plan.folds.push_back({end, end, end + horizon});
  }
  return plan;
}

std::vector<double> complexity_key(const ModelSpec& spec) {
  switch (spec.family) {
    case Family::ridge:
    case Family::lasso:
    case Family::enet: return {-spec.get("lambda")};
    case Family::pcr:
    case Family::knn: return {spec.get("k")};
    case Family::svr: return {spec.get("C"), -spec.get("mu")};
    case Family::rf: return {spec.get("trees"), spec.get("max_depth"), -spec.get("min_leaf"), spec.get("mtry")};
    case Family::gbt:
      return {spec.get("trees"), spec.get("max_depth"), spec.get("learning_rate"), -spec.get("lambda_reg")};
    case Family::ols:
    case Family::ar4: return {};
  }
  return {};
}

CvReport grid_search(Family family, const std::vector<ModelSpec>& grid, const QuarterlyFrame& train,
                     const FoldPlan& plan, models::InputSpace space) {
  if (grid.empty()) throw Error(ErrorCode::EmptyGrid, "empty grid for " + std::string(models::to_string(family)));
  if (plan.n_train != train.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "fold plan built for " + std::to_string(plan.n_train) + " rows, frame has " +
                                              std::to_string(train.rows()));
  }
  CvReport report;
  report.family = family;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto& spec = grid[g];
    if (spec.family != family) throw Error(ErrorCode::BadHyperparameter, "grid point of another family");
    GridPointResult point;
    point.spec = spec;
    for (std::size_t f = 0; f < plan.folds.size(); ++f) {
      const auto& fold = plan.folds[f];
      try {
        const auto fit_rows = train.slice_rows(0, fold.train_end);
        const auto valid_rows = train.slice_rows(fold.valid_begin, fold.valid_end);
        const auto model = models::fit_model(spec, fit_rows, space);
        point.folds.push_back(metrics::evaluate(valid_rows.target(), models::predict(model, valid_rows)));
      } catch (const Error& e) {
        throw e.annotated(std::string(models::to_string(family)) + " grid point " + std::to_string(g) + " (" +
                          spec.describe() + "), fold " + std::to_string(f + 1));
      }
    }
    double rmse_sum = 0.0;
    double mse_sum = 0.0;
    for (const auto& m : point.folds) {
      rmse_sum += m.rmse;
      mse_sum += m.rmse * m.rmse;
    }
    point.mean_rmse = rmse_sum / static_cast<double>(point.folds.size());
    point.mean_mse = mse_sum / static_cast<double>(point.folds.size());
    report.points.push_back(std::move(point));
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < report.points.size(); ++i) {
    const double a = report.points[i].mean_rmse;
    const double b = report.points[best].mean_rmse;
    const double tol = 1e-12 * std::max(std::abs(a), std::abs(b));
    if (a < b - tol) {
      best = i;
    } else if (std::abs(a - b) <= tol &&
               complexity_key(report.points[i].spec) < complexity_key(report.points[best].spec)) {
      best = i;
    }
  }
  report.chosen = best;
  return report;
}

std::vector<ModelSpec> expand_grid(Family family, const std::map<std::string, std::vector<double>>& axes,
                                   std::optional<std::uint64_t> seed) {
  std::vector<ModelSpec> out(1);
  out[0].family = family;
  out[0].seed = seed;
  for (const auto& [key, values] : axes) {
    if (values.empty()) throw Error(ErrorCode::EmptyGrid, "axis '" + key + "' has no values");
    std::vector<ModelSpec> next;
    for (const auto& base : out) {
      for (const double v : values) {
        auto spec = base;
        spec.hyper[key] = v;
        next.push_back(std::move(spec));
      }
    }
    out = std::move(next);
  }
  for (const auto& s : out) s.validate();
  return out;
}

std::map<std::string, std::vector<double>> default_axes(Family family, Eigen::Index p, Eigen::Index min_train_rows) {
  std::vector<double> lambdas;
  for (int e = -4; e <= 3; ++e) lambdas.push_back(std::pow(10.0, e));
  std::vector<double> trees = {100, 300};
  std::vector<double> depth = {2, 3, 4};
  switch (family) {
    case Family::ols:
    case Family::ar4: return {};
    case Family::ridge:
    case Family::lasso: return {{"lambda", lambdas}};
    case Family::enet: return {{"lambda", lambdas}, {"alpha", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}}};
    case Family::pcr: {
      std::vector<double> k;
      for (Eigen::Index i = 1; i <= p; ++i) k.push_back(static_cast<double>(i));
      return {{"k", k}};
    }
    case Family::knn: {
      std::vector<double> k;
      for (Eigen::Index i = 1; i <= std::min<Eigen::Index>(10, min_train_rows); ++i) k.push_back(static_cast<double>(i));
      return {{"k", k}};
    }
    case Family::svr: return {{"C", {0.1, 1, 10, 100}}, {"mu", {0.01, 0.05, 0.1, 0.5}}};
    case Family::rf: {
      const double mtry = std::max<double>(1.0, std::ceil(static_cast<double>(p) / 3.0));
      return {{"trees", trees}, {"max_depth", depth}, {"min_leaf", {1}}, {"mtry", {mtry}}};
    }
    case Family::gbt:
      return {{"trees", trees},
              {"max_depth", depth},
              {"learning_rate", {0.05, 0.1, 0.3}},
              {"lambda_reg", {1}},
              {"min_leaf", {1}}};
  }
  return {};
}

std::string cv_report_csv(const CvReport& report) {
  std::string out = "family,point,hyperparameters,fold,rmse,mae,mape,chosen\n";
  const std::string family(models::to_string(report.family));
  for (std::size_t g = 0; g < report.points.size(); ++g) {
    const auto& p = report.points[g];
    const std::string head = family + "," + std::to_string(g) + "," + p.spec.describe() + ",";
    double mae = 0.0;
    double mape = 0.0;
    for (std::size_t f = 0; f < p.folds.size(); ++f) {
      const auto& m = p.folds[f];
      out += head + std::to_string(f + 1) + "," + text::shortest(m.rmse) + "," + text::shortest(m.mae) + "," +
             (m.mape ? text::shortest(*m.mape) : "") + ",\n";
      mae += m.mae;
      mape += m.mape.value_or(NAN);
    }
    const auto k = static_cast<double>(p.folds.size());
    out += head + "mean," + text::shortest(p.mean_rmse) + "," + text::shortest(mae / k) + "," +
           (std::isfinite(mape) ? text::shortest(mape / k) : "") + "," + (g == report.chosen ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace nowcast::tuning
