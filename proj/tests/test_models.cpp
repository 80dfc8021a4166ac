#include "support.hpp"

#include <cmath>
#include <numeric>

#include "nowcast/models/estimators.hpp"
#include "nowcast/models/fitted_model.hpp"
#include "nowcast/models/tree.hpp"
#include "nowcast/numeric.hpp"
#include "nowcast/synthetic.hpp"

using namespace nowcast;
using namespace nowcast::models;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using testing::code_of;
using testing::spec;

namespace {

struct Data {
  MatrixXd X;
  VectorXd y;
};

Data linear_data(std::uint64_t seed, int n = 40, int p = 6, double noise = 0.5) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> z;
  Data d{testing::gaussian(gen, n, p), VectorXd(n)};
  for (int i = 0; i < n; ++i) {
    d.y(i) = 2.0;
    for (int j = 0; j < p; ++j) d.y(i) += (j % 3 - 1 + 0.5 * j) * d.X(i, j);
    d.y(i) += noise * z(gen);
  }
  return d;
}

ModelSpec gbt_spec(double trees, double depth, double lr, double reg) {
  return spec(Family::gbt, {{"trees", trees}, {"max_depth", depth}, {"learning_rate", lr}, {"lambda_reg", reg},
                            {"min_leaf", 1}});
}

ModelSpec rf_spec(double trees, double depth, double mtry, std::uint64_t seed, double bootstrap = 1) {
  return spec(Family::rf, {{"trees", trees}, {"max_depth", depth}, {"min_leaf", 1}, {"mtry", mtry},
                           {"bootstrap", bootstrap}},
              seed);
}

}  // namespace

TEST_CASE("hyperparameter validation") {
  CHECK_NOTHROW(spec(Family::ridge, {{"lambda", 0}}).validate());
  CHECK(code_of([] { spec(Family::ridge, {}).validate(); }) == ErrorCode::BadHyperparameter);
  CHECK(code_of([] { spec(Family::ridge, {{"lambda", 1}, {"k", 1}}).validate(); }) == ErrorCode::BadHyperparameter);
  CHECK(code_of([] { spec(Family::ridge, {{"lambda", -1}}).validate(); }) == ErrorCode::BadHyperparameter);
  CHECK(code_of([] { spec(Family::enet, {{"lambda", 1}, {"alpha", 1.5}}).validate(); }) ==
        ErrorCode::BadHyperparameter);
  CHECK(code_of([] { spec(Family::knn, {{"k", 1.5}}).validate(); }) == ErrorCode::BadHyperparameter);
  CHECK(code_of([] { spec(Family::svr, {{"C", 0}, {"mu", 0.1}}).validate(); }) == ErrorCode::BadHyperparameter);
  CHECK(code_of([] { gbt_spec(0, 2, 0.1, 1).validate(); }) == ErrorCode::BadHyperparameter);
  CHECK(code_of([] { gbt_spec(5, 2, 1.5, 1).validate(); }) == ErrorCode::BadHyperparameter);
  CHECK(code_of([] { parse_family("xgboost"); }) == ErrorCode::BadHyperparameter);
  CHECK(parse_family("enet") == Family::enet);
  CHECK(spec(Family::enet, {{"lambda", 0.5}, {"alpha", 0.25}}).describe() == "alpha=0.25;lambda=0.5");
  CHECK(rf_spec(10, 3, 2, 1).get("bootstrap") == 1);
  CHECK(spec(Family::rf, {{"trees", 10}, {"max_depth", 3}, {"min_leaf", 1}, {"mtry", 2}}).get("bootstrap") == 1);
}

TEST_CASE("penalized linear family") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto d = linear_data(s);
    for (double lambda : {0.01, 0.1, 1.0}) {
      const auto lasso = fit_linear(spec(Family::lasso, {{"lambda", lambda}}), d.X, d.y);
      const auto enet1 = fit_linear(spec(Family::enet, {{"lambda", lambda}, {"alpha", 1.0}}), d.X, d.y);
      const auto ridge = fit_linear(spec(Family::ridge, {{"lambda", lambda}}), d.X, d.y);
      const auto enet0 = fit_linear(spec(Family::enet, {{"lambda", lambda}, {"alpha", 0.0}}), d.X, d.y);
      CHECK((lasso.coef - enet1.coef).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(std::abs(lasso.intercept - enet1.intercept) <= 1e-10);
      CHECK((ridge.coef - enet0.coef).cwiseAbs().maxCoeff() <= 1e-10);

      // Ridge closed form on centered data: (Xc'Xc/n + lambda I) b = Xc'yc/n.
      const MatrixXd Xc = d.X.rowwise() - d.X.colwise().mean();
      const VectorXd yc = d.y.array() - d.y.mean();
      const double n = static_cast<double>(d.X.rows());
      const VectorXd closed =
          (Xc.transpose() * Xc / n + lambda * MatrixXd::Identity(6, 6)).ldlt().solve(Xc.transpose() * yc / n);
      CHECK((ridge.coef - closed).cwiseAbs().maxCoeff() <= 1e-10);
    }
    double prev = INFINITY;
    for (double lambda : {0.0, 0.001, 0.01, 0.1, 1.0, 10.0, 100.0}) {
      const double norm = fit_linear(spec(Family::ridge, {{"lambda", lambda}}), d.X, d.y).coef.norm();
      CHECK(norm <= prev * (1 + 1e-12));
      prev = norm;
    }
  }

  SUBCASE("lasso sparsity is monotone on orthonormal designs") {
    std::mt19937_64 gen(21);
    const MatrixXd G = testing::gaussian(gen, 40, 6);
    const MatrixXd C = G.rowwise() - G.colwise().mean();
    Eigen::HouseholderQR<MatrixXd> qr(C);
    const MatrixXd Q = qr.householderQ() * MatrixXd::Identity(40, 6);
    const VectorXd y = Q * VectorXd::LinSpaced(6, -3, 3) + 0.1 * testing::gaussian(gen, 40, 1);
    int prev = 7;
    for (double lambda = 0.0; lambda < 0.2; lambda += 0.005) {
      const auto fit = fit_linear(spec(Family::lasso, {{"lambda", lambda}}), Q, y);
      const int nz = static_cast<int>((fit.coef.array() != 0.0).count());
      CHECK(nz <= prev);
      prev = nz;
    }
    CHECK(prev == 0);
  }

  SUBCASE("ols matches least squares") {
    const auto d = linear_data(4);
    const auto ols = fit_linear(spec(Family::ols), d.X, d.y);
    MatrixXd D(40, 7);
    D << VectorXd::Ones(40), d.X;
    const VectorXd b = numeric::solve_least_squares(D, d.y);
    CHECK(std::abs(ols.intercept - b(0)) <= 1e-12);
    CHECK((ols.coef - b.tail(6)).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("principal component regression") {
  MatrixXd X(10, 2);
  VectorXd y(10);
  for (int i = 0; i < 10; ++i) {
    X.row(i) << i, 2.0 * i;
    y(i) = 3 + 0.5 * i;
  }
  const auto fit = fit_pcr(spec(Family::pcr, {{"k", 1}}), X, y);
  CHECK((predict(fit, X) - y).cwiseAbs().maxCoeff() < 1e-8);

  const auto flat = fit_pcr(spec(Family::pcr, {{"k", 2}}), linear_data(1).X.leftCols(2), VectorXd::Constant(40, 4.0));
  CHECK(flat.theta.cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((predict(flat, linear_data(2).X.leftCols(2)).array() - 4.0).abs().maxCoeff() <= 1e-12);
  CHECK(code_of([&] { fit_pcr(spec(Family::pcr, {{"k", 3}}), X, y); }) == ErrorCode::KOutOfRange);
}

TEST_CASE("k nearest neighbours") {
  MatrixXd X(3, 1);
  X << 0, 1, 10;
  VectorXd y(3);
  y << 0, 2, 100;
  const auto two = fit_knn(spec(Family::knn, {{"k", 2}}), X, y);
  MatrixXd q(1, 1);
  q << 0.4;
  CHECK(predict(two, q)(0) == 1.0);

  const auto d = linear_data(6);
  const auto one = fit_knn(spec(Family::knn, {{"k", 1}}), d.X, d.y);
  CHECK(predict(one, d.X) == d.y);
  const auto all = fit_knn(spec(Family::knn, {{"k", 40}}), d.X, d.y);
  CHECK((predict(all, linear_data(7).X).array() - d.y.mean()).abs().maxCoeff() <= 1e-12);
  CHECK(code_of([&] { fit_knn(spec(Family::knn, {{"k", 41}}), d.X, d.y); }) == ErrorCode::KOutOfRange);

  // Permuting training rows leaves predictions unchanged (no distance ties here).
  std::vector<int> perm(40);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(2));
  MatrixXd Xp(40, 6);
  VectorXd yp(40);
  for (int i = 0; i < 40; ++i) Xp.row(i) = d.X.row(perm[i]), yp(i) = d.y(perm[i]);
  const auto q5 = linear_data(8).X;
  const auto a = predict(fit_knn(spec(Family::knn, {{"k", 5}}), d.X, d.y), q5);
  const auto b = predict(fit_knn(spec(Family::knn, {{"k", 5}}), Xp, yp), q5);
  CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("support vector regression") {
  const auto d = linear_data(9, 30, 3);
  const auto flat = fit_svr(spec(Family::svr, {{"C", 10}, {"mu", 0.1}}), d.X, VectorXd::Constant(30, 7.0));
  CHECK(flat.weights.norm() <= 1e-3);
  CHECK(std::abs(flat.bias - 7.0) <= 0.1);
  CHECK(flat.objective <= 1e-3);

  const auto tiny = fit_svr(spec(Family::svr, {{"C", 1e-9}, {"mu", 0.1}}), d.X, d.y);
  CHECK(tiny.weights.norm() <= 1e-3);

  const auto fit = fit_svr(spec(Family::svr, {{"C", 10}, {"mu", 0.05}}), d.X, d.y);
  CHECK(std::isfinite(fit.objective));
  CHECK(fit.objective == doctest::Approx(svr_objective(fit.weights, fit.bias, d.X, d.y, 10, 0.05)));
  CHECK(fit.objective <= svr_objective(VectorXd::Zero(3), d.y.mean(), d.X, d.y, 10, 0.05));
}

TEST_CASE("regression trees and forests") {
  const auto d = linear_data(10, 30, 4);
  const auto memorize = fit_random_forest(rf_spec(1, 1000, 4, 3, 0), d.X, d.y);
  CHECK((predict(memorize, d.X) - d.y).cwiseAbs().maxCoeff() == 0.0);

  const auto flat = fit_random_forest(rf_spec(20, 5, 2, 3), d.X, VectorXd::Constant(30, 2.5));
  CHECK((predict(flat, d.X).array() - 2.5).abs().maxCoeff() == 0.0);

  const auto f1 = fit_random_forest(rf_spec(25, 3, 2, 99), d.X, d.y);
  const auto f2 = fit_random_forest(rf_spec(25, 3, 2, 99), d.X, d.y);
  const auto f3 = fit_random_forest(rf_spec(25, 3, 2, 100), d.X, d.y);
  const auto q = linear_data(11, 12, 4).X;
  CHECK(predict(f1, q) == predict(f2, q));
  CHECK(predict(f1, q) != predict(f3, q));

  VectorXd mean = VectorXd::Zero(12);
  for (const auto& t : f1.trees) {
    CHECK(t.depth() <= 3);
    for (Eigen::Index i = 0; i < 12; ++i) mean(i) += t.predict(q.row(i));
    for (const auto& node : t.nodes) {
      CHECK(std::isfinite(node.value));
      if (!node.is_leaf()) CHECK((node.left > 0 && node.right > 0));
    }
  }
  mean /= static_cast<double>(f1.trees.size());
  CHECK(predict(f1, q) == mean);
  CHECK(code_of([&] { fit_random_forest(rf_spec(5, 3, 5, 1), d.X, d.y); }) == ErrorCode::BadHyperparameter);
}

TEST_CASE("gradient boosted trees") {
  const auto d = linear_data(12, 30, 4);
  const auto one = fit_gbt(gbt_spec(1, 2, 0.3, 1), d.X, d.y);
  CHECK(one.base == doctest::Approx(d.y.mean()).epsilon(1e-14));
  const auto q = linear_data(13, 10, 4).X;
  for (Eigen::Index i = 0; i < 10; ++i)
    CHECK(predict(one, q)(i) == doctest::Approx(one.base + 0.3 * one.trees[0].predict(q.row(i))).epsilon(1e-14));

  const auto many = fit_gbt(gbt_spec(200, 2, 0.1, 1), d.X, d.y);
  for (std::size_t r = 1; r < many.training_loss.size(); ++r)
    CHECK(many.training_loss[r] <= many.training_loss[r - 1] * (1 + 1e-12));
  CHECK(predict(many, q) == predict(fit_gbt(gbt_spec(200, 2, 0.1, 1), d.X, d.y), q));

  const auto exact = fit_gbt(gbt_spec(2, 64, 1.0, 0.0), d.X, d.y);
  CHECK((predict(exact, d.X) - d.y).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("AR(4) benchmark") {
  VectorXd levels(20);
  for (int t = 0; t < 20; ++t) levels(t) = (100.0 + 5.0 * (t % 4)) * std::exp(0.03 * (t / 4));
  const auto fit = fit_ar4(levels, QuarterLabel{2010, 1});
  const auto fc = forecast(fit, 8);
  for (int h = 0; h < 8; ++h) {
    const double last_year = h < 4 ? levels(16 + h) : fc(h - 4);
    CHECK(std::log(fc(h) / last_year) == doctest::Approx(0.03).epsilon(1e-9));
  }
  CHECK(fit.last == QuarterLabel{2014, 4});
  CHECK(code_of([] { fit_ar4(VectorXd::Ones(12), QuarterLabel{2010, 1}); }) == ErrorCode::TooShort);

  // Horizon 8 re-uses forecast levels from the first year as the lag base.
  const auto data = synthetic::generate_synthetic(5, 56);
  const VectorXd gdp = data.frame.target();
  const auto ar = fit_ar4(gdp, data.frame.start());
  const auto f8 = forecast(ar, 8);
  std::vector<double> lv(gdp.data(), gdp.data() + gdp.size());
  std::vector<double> gr;
  for (int t = 4; t < 56; ++t) gr.push_back(std::log(lv[t] / lv[t - 4]));
  for (int h = 0; h < 8; ++h) {
    const std::size_t m = gr.size();
    const double g = ar.phi[0] + ar.phi[1] * gr[m - 1] + ar.phi[2] * gr[m - 2] + ar.phi[3] * gr[m - 3] +
                     ar.phi[4] * gr[m - 4];
    gr.push_back(g);
    lv.push_back(lv[lv.size() - 4] * std::exp(g));
    CHECK(f8(h) == doctest::Approx(lv.back()).epsilon(1e-12));
  }
}

TEST_CASE("fitted models on frames") {
  const auto data = synthetic::generate_synthetic(3, 48);
  const auto frame = data.frame.drop({"CPI"});
  const auto train = frame.slice_rows(0, 40);
  const auto test = frame.slice_rows(40, 48);
  const std::vector<ModelSpec> specs = {
      spec(Family::ols),
      spec(Family::ridge, {{"lambda", 0.1}}),
      spec(Family::lasso, {{"lambda", 0.01}}),
      spec(Family::enet, {{"lambda", 0.01}, {"alpha", 0.5}}),
      spec(Family::pcr, {{"k", 4}}),
      spec(Family::knn, {{"k", 3}}),
      spec(Family::svr, {{"C", 10}, {"mu", 0.1}}),
      rf_spec(20, 3, 4, 8),
      gbt_spec(30, 2, 0.1, 1),
      spec(Family::ar4),
  };
  for (const auto& s : specs) {
    CAPTURE(to_string(s.family));
    for (auto space : {InputSpace::robust, InputSpace::log}) {
      const auto model = fit_model(s, train, space);
      const VectorXd p = predict(model, test);
      REQUIRE(p.size() == 8);
      CHECK(p.allFinite());
      const auto back = load_model(save_model(model));
      CHECK(save_model(back) == save_model(model));
      CHECK(predict(back, test) == p);
    }
  }
  const auto model = fit_model(spec(Family::ridge, {{"lambda", 1}}), train);
  CHECK(model.scaler.covers("GDP"));
  CHECK(model.scaler.at("ELEC").median == doctest::Approx(numeric::quantile(train.column("ELEC"), 0.5)));
  CHECK(code_of([&] { predict(model, test.drop({"TOUR"})); }) == ErrorCode::FeatureMismatch);
  CHECK(code_of([&] { load_model("format = other\n"); }) == ErrorCode::BadModelFile);
  const auto ar = fit_model(spec(Family::ar4), train);
  CHECK(code_of([&] { predict(ar, train); }) == ErrorCode::BoundaryOutOfRange);
  CHECK((predict(ar, test) - forecast(ar, 8)).cwiseAbs().maxCoeff() == 0.0);
}
