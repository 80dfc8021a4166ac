#include "nowcast/report.hpp"

#include <cctype>
#include <fstream>

#include "nowcast/error.hpp"
#include "nowcast/text.hpp"

namespace nowcast::report {

namespace {

std::string metric_row(const std::string& model, const std::string& phase, const metrics::MetricReport& m) {
  return model + "," + phase + "," + text::fixed(m.rmse, 3) + "," + text::fixed(m.mae, 3) + "," +
         (m.mape ? text::fixed(*m.mape, 3) : "") + "\n";
}

struct Column {
  std::string name;
  const Eigen::VectorXd* values;
};

std::vector<Column> prediction_columns(const ScenarioReport& r) {
  std::vector<Column> cols;
  for (const auto& m : r.members) cols.push_back({m.name, &m.test_predictions});
  cols.push_back({"Ensemble", &r.ensemble_predictions});
  for (const auto& b : r.benchmarks) cols.push_back({b.name, &b.test_predictions});
  return cols;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace

std::string metrics_csv(const ScenarioReport& r) {
  std::string out = "model,phase,rmse,mae,mape\n";
  for (const auto& m : r.members) out += metric_row(m.name, "train", *m.train);
  for (const auto& m : r.members) out += metric_row(m.name, "test", m.test);
  out += metric_row("Ensemble", "test", r.ensemble_test);
  for (const auto& b : r.benchmarks) out += metric_row(b.name, "test", b.test);
  return out;
}

std::string predictions_csv(const ScenarioReport& r) {
  const auto cols = prediction_columns(r);
  std::string out = "quarter,actual";
  for (const auto& c : cols) out += "," + c.name;
  out += "\n";
  for (std::size_t t = 0; t < r.test_quarters.size(); ++t) {
    const auto i = static_cast<Eigen::Index>(t);
    out += r.test_quarters[t].str() + "," + text::shortest(r.test_actual(i));
    for (const auto& c : cols) out += "," + text::shortest((*c.values)(i));
    out += "\n";
  }
  return out;
}

std::string pct_errors_csv(const ScenarioReport& r) {
  const auto cols = prediction_columns(r);
  std::vector<Eigen::VectorXd> errors;
  for (const auto& c : cols) errors.push_back(metrics::percentage_error_series(r.test_actual, *c.values));
  std::string out = "quarter";
  for (const auto& c : cols) out += "," + c.name;
  out += "\n";
  for (std::size_t t = 0; t < r.test_quarters.size(); ++t) {
    out += r.test_quarters[t].str();
    for (const auto& e : errors) out += "," + text::shortest(e(static_cast<Eigen::Index>(t)));
    out += "\n";
  }
  return out;
}

std::string weights_csv(const ScenarioReport& r) {
  const bool leaky = r.weights.basis == ensemble::WeightBasis::test_mse;
  std::string out = "member,weight,basis,mse,note\n";
  for (std::size_t i = 0; i < r.weights.members.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    out += r.weights.members[i] + "," + text::shortest(r.weights.weights(k)) + "," +
           std::string(ensemble::to_string(r.weights.basis)) + "," + text::shortest(r.weights.mse(k)) + "," +
           (leaky ? "leakage: weights use test-set errors" : "") + "\n";
  }
  return out;
}

std::string file_stem(const std::string& scenario_name) {
  std::string out;
  for (const char c : scenario_name) {
    out += std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ? c : (c == '*' ? 's' : '_');
  }
  return out.empty() ? "scenario" : out;
}

std::vector<std::filesystem::path> emit_reports(const ScenarioReport& r, const std::filesystem::path& outdir) {
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + outdir.string() + ": " + ec.message());
  const std::string stem = file_stem(r.scenario.name);
  const std::vector<std::pair<std::string, std::string>> files = {
      {"metrics_" + stem + ".csv", metrics_csv(r)},
      {"predictions_" + stem + ".csv", predictions_csv(r)},
      {"pct_errors_" + stem + ".csv", pct_errors_csv(r)},
      {"weights_" + stem + ".csv", weights_csv(r)},
  };
  std::vector<std::filesystem::path> written;
  for (const auto& [name, content] : files) {
    write_file(outdir / name, content);
    written.push_back(outdir / name);
  }
  return written;
}

std::string evaluate_predictions(std::string_view predictions_csv_text) {
  const auto frame = parse_csv(predictions_csv_text, "actual");
  std::string out = "model,phase,rmse,mae,mape\n";
  const Eigen::VectorXd actual = frame.target();
  for (const auto& name : frame.feature_names()) {
    out += metric_row(name, "test", metrics::evaluate(actual, frame.column(name)));
  }
  return out;
}

}  // namespace nowcast::report
