#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nowcast/metrics.hpp"

using namespace nowcast;
using namespace nowcast::metrics;
using testing::code_of;

TEST_CASE("hand-computed metrics") {
  Eigen::VectorXd y(2), h(2);
  y << 100, 200;
  h << 110, 180;
  const auto r = evaluate(y, h);
  CHECK(std::abs(r.rmse - std::sqrt(250.0)) <= 1e-9);
  CHECK(std::abs(r.mae - 15.0) <= 1e-9);
  CHECK(std::abs(*r.mape - 10.0) <= 1e-9);
  CHECK(r.n == 2);
  CHECK(mse(y, h) == doctest::Approx(250.0));

  const auto perfect = evaluate(y, y);
  CHECK(perfect.rmse == 0);
  CHECK(perfect.mae == 0);
  CHECK(*perfect.mape == 0);

  Eigen::VectorXd z = Eigen::VectorXd::Zero(2), g(2);
  g << 3, 4;
  const auto zr = evaluate(z, g);
  CHECK(std::abs(zr.rmse - std::sqrt(12.5)) <= 1e-9);
  CHECK(zr.mae == 3.5);
  CHECK_FALSE(zr.mape.has_value());
  CHECK(code_of([&] { mape_or_throw(zr); }) == ErrorCode::ZeroActualForMape);
  CHECK(code_of([&] { evaluate(y, g.head(1)); }) == ErrorCode::LengthMismatch);
}

TEST_CASE("percentage error series") {
  Eigen::VectorXd y(1), h(1);
  y << 100;
  h << 92;
  CHECK(percentage_error_series(y, h)(0) == doctest::Approx(-8.0).epsilon(1e-14));
  CHECK(percentage_error_series(y, y)(0) == 0);
  CHECK(code_of([] { percentage_error_series(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1)); }) ==
        ErrorCode::ZeroActual);

  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(50, 150);
  Eigen::VectorXd a(30), b(30);
  for (int i = 0; i < 30; ++i) a(i) = u(gen), b(i) = u(gen);
  CHECK(percentage_error_series(a, b).cwiseAbs().mean() == doctest::Approx(*evaluate(a, b).mape).epsilon(1e-12));
}

TEST_CASE("metric properties") {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(1, 100);
  for (int t = 0; t < 500; ++t) {
    Eigen::VectorXd y(15), h(15);
    for (int i = 0; i < 15; ++i) y(i) = u(gen), h(i) = u(gen);
    const auto r = evaluate(y, h);
    CHECK(r.mae <= r.rmse);
    const double c = u(gen) / 10;
    const auto s = evaluate(y * c, h * c);
    CHECK(std::abs(s.rmse - c * r.rmse) <= 1e-10 * std::max(1.0, c * r.rmse));
    CHECK(std::abs(s.mae - c * r.mae) <= 1e-10 * std::max(1.0, c * r.mae));
    CHECK(std::abs(*s.mape - *r.mape) <= 1e-10);
    std::vector<int> perm(15);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    Eigen::VectorXd yp(15), hp(15);
    for (int i = 0; i < 15; ++i) yp(i) = y(perm[i]), hp(i) = h(perm[i]);
    const auto p = evaluate(yp, hp);
    CHECK(p.rmse == doctest::Approx(r.rmse).epsilon(1e-14));
    CHECK(p.mae == doctest::Approx(r.mae).epsilon(1e-14));
  }
}
