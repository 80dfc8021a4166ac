#include "nowcast/frame.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "nowcast/error.hpp"
#include "nowcast/text.hpp"

namespace nowcast {

QuarterlyFrame::QuarterlyFrame(QuarterLabel start, std::vector<std::string> names, Eigen::MatrixXd values,
                               std::string target_name)
    : start_(start), names_(std::move(names)), values_(std::move(values)), target_(std::move(target_name)) {
  if (static_cast<Eigen::Index>(names_.size()) != values_.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "column names do not match value matrix width");
  }
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) throw Error(ErrorCode::BadHeader, "duplicate column '" + n + "'");
  }
  if (!seen.count(target_)) throw Error(ErrorCode::MissingColumn, "target column '" + target_ + "' not present");
}

std::vector<QuarterLabel> QuarterlyFrame::index() const {
  std::vector<QuarterLabel> out;
  out.reserve(static_cast<std::size_t>(rows()));
  for (Eigen::Index i = 0; i < rows(); ++i) out.push_back(label(i));
  return out;
}

bool QuarterlyFrame::has_column(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

Eigen::Index QuarterlyFrame::column_index(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw Error(ErrorCode::UnknownColumn, "no column '" + name + "'");
  return it - names_.begin();
}

std::optional<Eigen::Index> QuarterlyFrame::row_of(QuarterLabel q) const {
  const long offset = q - start_;
  if (offset < 0 || offset >= rows()) return std::nullopt;
  return offset;
}

QuarterlyFrame QuarterlyFrame::slice(QuarterLabel first, QuarterLabel last) const {
  const auto b = row_of(first);
  const auto e = row_of(last);
  if (!b || !e || *e < *b) {
    throw Error(ErrorCode::BoundaryOutOfRange,
                first.str() + ".." + last.str() + " outside " + start_.str() + ".." + end().str());
  }
  return slice_rows(*b, *e + 1);
}

QuarterlyFrame QuarterlyFrame::slice_rows(Eigen::Index begin, Eigen::Index end) const {
  if (begin < 0 || end > rows() || end <= begin) {
    throw Error(ErrorCode::BoundaryOutOfRange, "row range [" + std::to_string(begin) + ", " +
                                                   std::to_string(end) + ") outside frame");
  }
  return QuarterlyFrame(label(begin), names_, values_.middleRows(begin, end - begin), target_);
}

QuarterlyFrame QuarterlyFrame::select(const std::vector<std::string>& names) const {
  Eigen::MatrixXd out(rows(), static_cast<Eigen::Index>(names.size()));
  for (std::size_t j = 0; j < names.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = column(names[j]);
  return QuarterlyFrame(start_, names, std::move(out), target_);
}

QuarterlyFrame QuarterlyFrame::drop(const std::vector<std::string>& names) const {
  std::vector<std::string> keep;
  for (const auto& n : names_) {
    if (std::find(names.begin(), names.end(), n) == names.end()) keep.push_back(n);
  }
  for (const auto& n : names) {
    if (!has_column(n)) throw Error(ErrorCode::UnknownColumn, "cannot drop missing column '" + n + "'");
  }
  return select(keep);
}

QuarterlyFrame QuarterlyFrame::with_values(Eigen::MatrixXd values) const {
  return QuarterlyFrame(start_, names_, std::move(values), target_);
}

std::vector<std::string> QuarterlyFrame::feature_names() const {
  std::vector<std::string> out;
  for (const auto& n : names_) {
    if (n != target_) out.push_back(n);
  }
  return out;
}

Eigen::MatrixXd QuarterlyFrame::matrix(const std::vector<std::string>& names) const {
  Eigen::MatrixXd out(rows(), static_cast<Eigen::Index>(names.size()));
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (!has_column(names[j])) throw Error(ErrorCode::FeatureMismatch, "frame lacks feature '" + names[j] + "'");
    out.col(static_cast<Eigen::Index>(j)) = column(names[j]);
  }
  return out;
}

QuarterlyFrame parse_csv(std::string_view text, const std::string& target_name) {
  std::vector<std::string> lines;
  {
    std::size_t begin = 0;
    while (begin <= text.size()) {
      const auto pos = text.find('\n', begin);
      const auto line = text.substr(begin, pos == std::string_view::npos ? std::string_view::npos : pos - begin);
      if (!text::trim(line).empty()) lines.emplace_back(line);
      if (pos == std::string_view::npos) break;
      begin = pos + 1;
    }
  }
  if (lines.empty()) throw Error(ErrorCode::BadHeader, "empty CSV");
  auto header = text::split(lines[0], ',');
  if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0) header[0].erase(0, 3);
  if (header.empty() || header[0] != "quarter") {
    throw Error(ErrorCode::BadHeader, "first header field must be 'quarter'");
  }
  std::vector<std::string> names(header.begin() + 1, header.end());
  if (std::find(names.begin(), names.end(), target_name) == names.end()) {
    throw Error(ErrorCode::MissingColumn, "target column '" + target_name + "' not in header");
  }

  std::map<QuarterLabel, std::vector<double>> rows;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = text::split(lines[r], ',');
    const std::string where = "line " + std::to_string(r + 1);
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::BadHeader, where + " has " + std::to_string(cells.size()) + " fields, header has " +
                                            std::to_string(header.size()));
    }
    QuarterLabel q;
    try {
      q = QuarterLabel::parse(cells[0]);
    } catch (const Error& e) {
      throw e.annotated(where);
    }
    std::vector<double> values(names.size());
    for (std::size_t c = 0; c < names.size(); ++c) {
      if (!text::parse_double(cells[c + 1], values[c])) {
        throw Error(ErrorCode::NonNumericCell,
                    where + " (" + q.str() + "), column '" + names[c] + "': '" + cells[c + 1] + "'");
      }
    }
    if (!rows.emplace(q, std::move(values)).second) {
      throw Error(ErrorCode::DuplicateQuarter, where + ": quarter " + q.str() + " repeated");
    }
  }
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "CSV has no data rows");

  const QuarterLabel start = rows.begin()->first;
  QuarterLabel expected = start;
  Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(names.size()));
  Eigen::Index r = 0;
  for (const auto& [q, row] : rows) {
    if (q != expected) throw Error(ErrorCode::IndexGap, "missing quarter " + expected.str());
    for (std::size_t c = 0; c < row.size(); ++c) values(r, static_cast<Eigen::Index>(c)) = row[c];
    expected = expected.next();
    ++r;
  }
  return QuarterlyFrame(start, std::move(names), std::move(values), target_name);
}

QuarterlyFrame load_csv(const std::filesystem::path& path, const std::string& target_name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_csv(buf.str(), target_name);
  } catch (const Error& e) {
    throw e.annotated(path.string());
  }
}

std::string to_csv(const QuarterlyFrame& frame) {
  std::string out = "quarter";
  for (const auto& n : frame.names()) out += "," + n;
  out += "\n";
  for (Eigen::Index r = 0; r < frame.rows(); ++r) {
    out += frame.label(r).str();
    for (Eigen::Index c = 0; c < frame.cols(); ++c) out += "," + text::shortest(frame.values()(r, c));
    out += "\n";
  }
  return out;
}

QuarterlyFrame deflate(const QuarterlyFrame& frame, const std::string& cpi, QuarterLabel base,
                       const std::vector<std::string>& columns) {
  if (!frame.has_column(cpi)) throw Error(ErrorCode::UnknownColumn, "cpi column '" + cpi + "' not present");
  const auto base_row = frame.row_of(base);
  if (!base_row) throw Error(ErrorCode::BaseOutOfRange, "base " + base.str() + " outside frame index");
  const Eigen::VectorXd index = frame.column(cpi);
  for (Eigen::Index r = 0; r < index.size(); ++r) {
    if (!(index(r) > 0.0)) {
      throw Error(ErrorCode::NonPositiveCpi, frame.label(r).str() + ": cpi = " + text::shortest(index(r)));
    }
  }
  Eigen::MatrixXd values = frame.values();
  const Eigen::ArrayXd factor = index(*base_row) / index.array();
  for (const auto& name : columns) {
    if (name == cpi) continue;
    const Eigen::Index c = frame.column_index(name);
    values.col(c) = (values.col(c).array() * factor).matrix();
  }
  return frame.with_values(std::move(values));
}

std::vector<std::optional<double>> yoy_log_growth(const Eigen::Ref<const Eigen::VectorXd>& series) {
  const Eigen::Index n = series.size();
  std::vector<std::optional<double>> out(static_cast<std::size_t>(n));
  for (Eigen::Index s = 0; s < n; ++s) {
    if (!(series(s) > 0.0)) {
      throw Error(ErrorCode::NonPositiveValue,
                  "entry " + std::to_string(s) + " = " + text::shortest(series(s)) + " cannot be logged");
    }
  }
  for (Eigen::Index t = 4; t < n; ++t) {
    out[static_cast<std::size_t>(t)] = std::log(series(t)) - std::log(series(t - 4));
  }
  return out;
}

void ScenarioSpec::validate() const {
  if (!(train_end < test_start) || test_end < test_start) {
    throw Error(ErrorCode::BadScenario, name + ": need train_end < test_start <= test_end");
  }
  if (test_start != train_end.next()) {
    throw Error(ErrorCode::BadScenario, name + ": test_start must immediately follow train_end");
  }
}

TrainTestSplit split_scenario(const QuarterlyFrame& frame, const ScenarioSpec& spec) {
  spec.validate();
  if (!frame.row_of(spec.train_end) || !frame.row_of(spec.test_end)) {
    throw Error(ErrorCode::BoundaryOutOfRange, spec.name + ": boundaries " + spec.train_end.str() + "/" +
                                                   spec.test_end.str() + " outside " + frame.start().str() +
                                                   ".." + frame.end().str());
  }
  return {frame.slice(frame.start(), spec.train_end), frame.slice(spec.test_start, spec.test_end)};
}

std::vector<ScenarioSpec> default_scenarios() {
  return {
      {"1", {2018, 4}, {2019, 1}, {2022, 4}},
      {"2", {2020, 4}, {2021, 1}, {2022, 4}},
      {"3", {2021, 4}, {2022, 1}, {2022, 4}},
  };
}

}  // namespace nowcast
