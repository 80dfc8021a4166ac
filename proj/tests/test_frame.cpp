#include "support.hpp"

#include <cmath>
#include <random>

#include "nowcast/config.hpp"
#include "nowcast/error.hpp"
#include "nowcast/frame.hpp"
#include "nowcast/scaler.hpp"

using namespace nowcast;

using testing::code_of;
using testing::message_of;

namespace {

QuarterlyFrame frame_of(const std::vector<std::string>& names, const Eigen::MatrixXd& v, const std::string& target) {
  return QuarterlyFrame(QuarterLabel{2007, 1}, names, v, target);
}

}  // namespace

TEST_CASE("quarter labels order, step and round-trip") {
  const auto q = QuarterLabel::parse("2007Q4");
  CHECK(q.next() == QuarterLabel{2008, 1});
  CHECK(q.next().prev() == q);
  CHECK(q.str() == "2007Q4");
  CHECK(QuarterLabel{2008, 1} > QuarterLabel{2007, 4});
  CHECK(QuarterLabel{2022, 4} - QuarterLabel{2007, 1} == 63);
  CHECK(QuarterLabel{2007, 1} + 63 == QuarterLabel{2022, 4});
  for (const char* bad : {"2007Q5", "2007q1", "07Q1", "2007Q1 ", "2007-Q1", "1899Q4", ""}) {
    CHECK(code_of([&] { QuarterLabel::parse(bad); }) == ErrorCode::BadQuarterLabel);
  }
}

TEST_CASE("csv parsing") {
  const auto f = parse_csv("quarter,GDP\n2007Q1,100\n2007Q2,101", "GDP");
  CHECK(f.rows() == 2);
  CHECK(f.target_name() == "GDP");
  CHECK(f.target()(1) == 101);
  CHECK(f.end() == QuarterLabel{2007, 2});

  SUBCASE("rows are ordered by quarter") {
    const auto g = parse_csv("quarter,GDP,X\n2007Q2,2,20\n2007Q1,1,10\n", "GDP");
    CHECK(g.start() == QuarterLabel{2007, 1});
    CHECK(g.column("X")(0) == 10);
  }
  SUBCASE("gap names the missing quarter") {
    const auto fn = [] { parse_csv("quarter,GDP\n2007Q1,1\n2007Q3,2\n", "GDP"); };
    CHECK(code_of(fn) == ErrorCode::IndexGap);
    CHECK(message_of(fn).find("2007Q2") != std::string::npos);
  }
  SUBCASE("non-numeric cell reports location") {
    const auto fn = [] { parse_csv("quarter,GDP\n2007Q1,1\n2007Q2,n/a\n", "GDP"); };
    CHECK(code_of(fn) == ErrorCode::NonNumericCell);
    const auto msg = message_of(fn);
    CHECK(msg.find("2007Q2") != std::string::npos);
    CHECK(msg.find("GDP") != std::string::npos);
    CHECK(msg.find("line 3") != std::string::npos);
  }
  SUBCASE("schema errors") {
    CHECK(code_of([] { parse_csv("quarter,X\n2007Q1,1\n", "GDP"); }) == ErrorCode::MissingColumn);
    CHECK(code_of([] { parse_csv("quarter,GDP\n2007Q1,1\n2007Q1,2\n", "GDP"); }) == ErrorCode::DuplicateQuarter);
    CHECK(code_of([] { parse_csv("date,GDP\n2007Q1,1\n", "GDP"); }) == ErrorCode::BadHeader);
    CHECK(code_of([] { parse_csv("quarter,GDP,GDP\n2007Q1,1,2\n", "GDP"); }) == ErrorCode::BadHeader);
    CHECK(code_of([] { parse_csv("quarter,GDP\n2007Q1,1,2\n", "GDP"); }) == ErrorCode::BadHeader);
    CHECK(code_of([] { parse_csv("quarter,GDP\n2007X1,1\n", "GDP"); }) == ErrorCode::BadQuarterLabel);
  }
  SUBCASE("to_csv round-trips exactly") {
    Eigen::MatrixXd v(3, 2);
    v << 0.1, 1e-300, 1.0 / 3.0, -2.5, 123456789.123456789, 7;
    const auto g = frame_of({"GDP", "X"}, v, "GDP");
    const auto back = parse_csv(to_csv(g), "GDP");
    CHECK(back.values() == v);
    CHECK(back.names() == g.names());
  }
}

TEST_CASE("deflation") {
  Eigen::MatrixXd v(2, 3);
  v << 100, 100, 100, 110, 100, 125;
  const auto f = frame_of({"GDP", "X", "CPI"}, v, "GDP");
  const auto d = deflate(f, "CPI", QuarterLabel{2007, 1}, {"X"});
  CHECK(d.column("X")(0) == doctest::Approx(100).epsilon(1e-15));
  CHECK(d.column("X")(1) == doctest::Approx(80).epsilon(1e-15));
  CHECK(d.column("GDP")(1) == 110);
  CHECK(d.column("CPI")(1) == 125);

  Eigen::MatrixXd w(1, 2);
  w << 110, 110;
  const auto one = QuarterlyFrame(QuarterLabel{2010, 1}, {"N", "CPI"}, w, "N");
  Eigen::MatrixXd base(2, 2);
  base << 0, 100, 110, 110;
  const auto two = QuarterlyFrame(QuarterLabel{2009, 4}, {"N", "CPI"}, base, "N");
  CHECK(deflate(two, "CPI", QuarterLabel{2009, 4}, {"N"}).column("N")(1) == doctest::Approx(100));
  CHECK(deflate(one, "CPI", QuarterLabel{2010, 1}, {"N"}).column("N")(0) == 110);

  CHECK(code_of([&] { deflate(f, "CPI", QuarterLabel{2006, 4}, {"X"}); }) == ErrorCode::BaseOutOfRange);
  CHECK(code_of([&] { deflate(f, "CPI", QuarterLabel{2007, 1}, {"Y"}); }) == ErrorCode::UnknownColumn);
  Eigen::MatrixXd z = v;
  z(1, 2) = 0;
  CHECK(code_of([&] { deflate(f.with_values(z), "CPI", QuarterLabel{2007, 1}, {"X"}); }) ==
        ErrorCode::NonPositiveCpi);
}

TEST_CASE("year-over-year log growth") {
  Eigen::VectorXd c = Eigen::VectorXd::Constant(9, 5.0);
  auto g = yoy_log_growth(c);
  for (int t = 0; t < 4; ++t) CHECK_FALSE(g[t].has_value());
  for (int t = 4; t < 9; ++t) CHECK(*g[t] == 0.0);

  Eigen::VectorXd d(12);
  for (int t = 0; t < 12; ++t) d(t) = (1.0 + 0.1 * (t % 4)) * std::pow(2.0, t / 4);
  g = yoy_log_growth(d);
  for (int t = 4; t < 12; ++t) CHECK(*g[t] == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  const auto short4 = yoy_log_growth(Eigen::VectorXd::Ones(4));
  CHECK(std::none_of(short4.begin(), short4.end(), [](const auto& o) { return o.has_value(); }));
  Eigen::VectorXd bad = Eigen::VectorXd::Ones(6);
  bad(2) = -1;
  CHECK(code_of([&] { yoy_log_growth(bad); }) == ErrorCode::NonPositiveValue);

  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  Eigen::VectorXd a(20), b(20);
  for (int t = 0; t < 20; ++t) a(t) = u(gen), b(t) = u(gen);
  const auto ga = yoy_log_growth(a), gb = yoy_log_growth(b);
  const auto gab = yoy_log_growth(a.cwiseProduct(b));
  for (int t = 4; t < 20; ++t) CHECK(std::abs(*gab[t] - *ga[t] - *gb[t]) <= 1e-12);
}

TEST_CASE("robust scaler") {
  Eigen::MatrixXd v(5, 2);
  v << 1, 7, 2, 7, 3, 7, 4, 7, 5, 7;
  const auto f = frame_of({"A", "B"}, v, "A");
  const auto params = fit_robust_scaler(f, {"A", "B"});
  CHECK(params.at("A").median == 3);
  CHECK(params.at("A").iqr == 2);
  CHECK_FALSE(params.at("A").degenerate);
  CHECK(params.at("B").degenerate);
  CHECK(params.at("B").divisor() == 1);
  const auto s = apply_scaler(params, f);
  CHECK(s.column("A")(4) == 1.0);
  CHECK(s.column("B").isZero());
  CHECK(code_of([&] { fit_robust_scaler(f, {}); }) == ErrorCode::EmptyColumnSet);
  CHECK(code_of([&] { params.at("C"); }) == ErrorCode::UnknownColumn);

  SUBCASE("round-trip and affine invariance on random frames") {
    std::mt19937_64 gen(11);
    std::normal_distribution<double> z;
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::MatrixXd m(17, 3);
      for (int i = 0; i < 17; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = 1000 * z(gen) + 50;
      const auto g = frame_of({"Y", "P", "Q"}, m, "Y");
      const auto p = fit_robust_scaler(g, {"Y", "P"});
      const auto back = invert_scaler(p, apply_scaler(p, g));
      for (int i = 0; i < 17; ++i)
        for (int j = 0; j < 3; ++j)
          CHECK(std::abs(back.values()(i, j) - m(i, j)) <= 1e-12 * std::max(1.0, std::abs(m(i, j))));
      CHECK(apply_scaler(p, g).column("Q") == g.column("Q"));

      const double a = std::exp(z(gen)), b = 100 * z(gen);
      Eigen::MatrixXd m2 = m;
      m2.col(1) = (m.col(1).array() * a + b).matrix();
      const auto g2 = g.with_values(m2);
      const auto s1 = apply_scaler(p, g).column("P");
      const auto s2 = apply_scaler(fit_robust_scaler(g2, {"Y", "P"}), g2).column("P");
      CHECK((s1 - s2).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
}

TEST_CASE("scenario splits") {
  const auto f = frame_of({"GDP"}, Eigen::MatrixXd::Ones(64, 1), "GDP");
  const auto scenarios = default_scenarios();
  REQUIRE(scenarios.size() == 3);
  const auto s1 = split_scenario(f, scenarios[0]);
  CHECK(s1.train.rows() == 48);
  CHECK(s1.test.rows() == 16);
  CHECK(s1.test.start() == QuarterLabel{2019, 1});
  CHECK(split_scenario(f, scenarios[1]).train.rows() == 56);
  const auto s3 = split_scenario(f, scenarios[2]);
  CHECK(s3.train.rows() == 60);
  CHECK(s3.test.rows() == 4);
  const ScenarioSpec star{"1*", {2019, 4}, {2020, 1}, {2022, 4}};
  const auto s1s = split_scenario(f, star);
  CHECK(s1s.train.rows() == 52);
  CHECK(s1s.test.rows() == 12);

  CHECK(code_of([] { ScenarioSpec{"x", {2019, 4}, {2020, 2}, {2022, 4}}.validate(); }) == ErrorCode::BadScenario);
  CHECK(code_of([] { ScenarioSpec{"x", {2019, 4}, {2020, 1}, {2019, 4}}.validate(); }) == ErrorCode::BadScenario);
  CHECK(code_of([&] { split_scenario(f, ScenarioSpec{"x", {2021, 4}, {2022, 1}, {2023, 1}}); }) ==
        ErrorCode::BoundaryOutOfRange);
}

TEST_CASE("frame accessors") {
  Eigen::MatrixXd v(4, 3);
  v.setRandom();
  const auto f = frame_of({"GDP", "A", "B"}, v, "GDP");
  CHECK(f.feature_names() == std::vector<std::string>{"A", "B"});
  CHECK(f.drop({"A"}).names() == std::vector<std::string>{"GDP", "B"});
  CHECK(f.slice({2007, 2}, {2007, 3}).rows() == 2);
  CHECK(f.slice_rows(1, 3).start() == QuarterLabel{2007, 2});
  CHECK(*f.row_of({2007, 4}) == 3);
  CHECK_FALSE(f.row_of({2008, 1}).has_value());
  CHECK(code_of([&] { f.column("Z"); }) == ErrorCode::UnknownColumn);
  CHECK(code_of([&] { frame_of({"A"}, v.leftCols(1), "GDP"); }) == ErrorCode::MissingColumn);
}

TEST_CASE("config parsing") {
  const std::string text = R"(
[data]
path = data.csv
nominal = VAT, CRED
exclude = TOUR
cpi_base = 2010Q1

[run]
families = ridge, knn
seed = 7
weights = test_mse
folds = 4

[scenario A]
train_end = 2018Q4
test_end = 2019Q4

[grid ridge]
lambda = 0.1, 1, 10
)";
  const auto cfg = parse_config(text, "/base");
  CHECK(cfg.data_path == std::filesystem::path("/base/data.csv"));
  CHECK(cfg.nominal == std::vector<std::string>{"VAT", "CRED"});
  CHECK(cfg.exclude == std::vector<std::string>{"TOUR"});
  CHECK(*cfg.cpi_base == QuarterLabel{2010, 1});
  CHECK(cfg.families.size() == 2);
  CHECK(cfg.seed == 7);
  CHECK(cfg.weight_basis == ensemble::WeightBasis::test_mse);
  CHECK(cfg.folds == 4);
  CHECK(cfg.horizon == 4);
  REQUIRE(cfg.scenarios.size() == 1);
  CHECK(cfg.scenario("A").test_start == QuarterLabel{2019, 1});
  CHECK(cfg.grids.at(models::Family::ridge).at("lambda") == std::vector<double>{0.1, 1, 10});

  CHECK(parse_config("[data]\npath = x.csv\n").scenarios.size() == 3);
  for (const char* bad : {"[data]\npath = x.csv\ncolour = red\n", "[data]\npath = x.csv\n[misc]\na = 1\n",
                          "[run]\nseed = 1\n", "[data]\npath = x.csv\n[run]\nweights = median\n",
                          "[data]\npath = x.csv\n[grid ridge]\nk = 1\n", "[data]\npath = x.csv\n[grid ols]\nk = 1\n",
                          "[data]\npath = x.csv\n[scenario B]\ntrain_end = 2019Q4\n",
                          "[data]\npath = x.csv\n[run]\nfamilies = ridge, tree\n"}) {
    CHECK(code_of([&] { parse_config(bad); }) == ErrorCode::BadConfig);
  }
  CHECK(code_of([&] { cfg.scenario("B"); }) == ErrorCode::BadConfig);
}
