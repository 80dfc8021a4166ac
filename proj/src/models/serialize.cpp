#include <sstream>
#include <utility>

#include "nowcast/error.hpp"
#include "nowcast/models/fitted_model.hpp"
#include "nowcast/text.hpp"

namespace nowcast::models {

namespace {

constexpr std::string_view kFormat = "nowcast-model/1";

std::string join_numbers(const double* data, Eigen::Index n) {
  std::string out;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += text::shortest(data[i]);
  }
  return out;
}

std::string join_vector(const Eigen::VectorXd& v) { return join_numbers(v.data(), v.size()); }

std::string encode_tree(const RegressionTree& tree) {
  std::string out;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& n = tree.nodes[i];
    if (i) out += ' ';
    out += std::to_string(n.feature) + ":" + text::shortest(n.threshold) + ":" + std::to_string(n.left) + ":" +
           std::to_string(n.right) + ":" + text::shortest(n.value) + ":" + std::to_string(n.count) + ":" +
           text::shortest(n.sse);
  }
  return out;
}

class Writer {
public:
  void put(std::string_view key, const std::string& value) {
    out_ << key << " = " << value << '\n';
  }
  std::string str() const { return out_.str(); }

private:
  std::ostringstream out_;
};

struct Entries {
  std::vector<std::pair<std::string, std::string>> items;

  const std::string& one(std::string_view key) const {
    for (const auto& [k, v] : items) {
      if (k == key) return v;
    }
    throw Error(ErrorCode::BadModelFile, "missing key '" + std::string(key) + "'");
  }
  std::vector<std::string> all(std::string_view key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : items) {
      if (k == key) out.push_back(v);
    }
    return out;
  }
};

double to_double(const std::string& s) {
  double v = 0.0;
  if (!text::parse_double(s, v)) throw Error(ErrorCode::BadModelFile, "bad number '" + s + "'");
  return v;
}

long to_long(const std::string& s) {
  const double v = to_double(s);
  return static_cast<long>(v);
}

std::vector<std::string> words(const std::string& s, char sep = ' ') {
  std::vector<std::string> out;
  for (auto& w : text::split(s, sep)) {
    if (!w.empty()) out.push_back(std::move(w));
  }
  return out;
}

Eigen::VectorXd to_vector(const std::string& s) {
  const auto w = words(s);
  Eigen::VectorXd v(static_cast<Eigen::Index>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) v(static_cast<Eigen::Index>(i)) = to_double(w[i]);
  return v;
}

Eigen::MatrixXd to_matrix(const Entries& e, const std::string& prefix) {
  const auto rows = to_long(e.one(prefix + ".rows"));
  const auto cols = to_long(e.one(prefix + ".cols"));
  const Eigen::VectorXd flat = to_vector(e.one(prefix));
  if (flat.size() != rows * cols) throw Error(ErrorCode::BadModelFile, prefix + " has wrong entry count");
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = flat(i * cols + j);
  }
  return m;
}

void put_matrix(Writer& w, const std::string& prefix, const Eigen::MatrixXd& m) {
  w.put(prefix + ".rows", std::to_string(m.rows()));
  w.put(prefix + ".cols", std::to_string(m.cols()));
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
  w.put(prefix, join_numbers(rm.data(), rm.size()));
}

RegressionTree decode_tree(const std::string& s) {
  RegressionTree tree;
  for (const auto& node : words(s)) {
    const auto f = text::split(node, ':');
    if (f.size() != 7) throw Error(ErrorCode::BadModelFile, "bad tree node '" + node + "'");
    TreeNode n;
    n.feature = static_cast<int>(to_long(f[0]));
    n.threshold = to_double(f[1]);
    n.left = static_cast<int>(to_long(f[2]));
    n.right = static_cast<int>(to_long(f[3]));
    n.value = to_double(f[4]);
    n.count = static_cast<int>(to_long(f[5]));
    n.sse = to_double(f[6]);
    tree.nodes.push_back(n);
  }
  const auto size = static_cast<int>(tree.nodes.size());
  for (const auto& n : tree.nodes) {
    if (!n.is_leaf() && (n.left <= 0 || n.right <= 0 || n.left >= size || n.right >= size)) {
      throw Error(ErrorCode::BadModelFile, "tree child index out of range");
    }
  }
  if (tree.nodes.empty()) throw Error(ErrorCode::BadModelFile, "empty tree");
  return tree;
}

InputSpace parse_space(const std::string& s) {
  for (const auto space : {InputSpace::raw, InputSpace::robust, InputSpace::log}) {
    if (to_string(space) == s) return space;
  }
  throw Error(ErrorCode::BadModelFile, "unknown input space '" + s + "'");
}

}  // namespace

std::string save_model(const FittedModel& m) {
  Writer w;
  w.put("format", std::string(kFormat));
  w.put("family", std::string(to_string(m.spec.family)));
  w.put("space", std::string(to_string(m.space)));
  if (m.spec.seed) w.put("seed", std::to_string(*m.spec.seed));
  for (const auto& [k, v] : m.spec.hyper) w.put("hyper." + k, text::shortest(v));
  w.put("target", m.target_name);
  w.put("features", text::join(m.feature_names, ","));
  for (const auto& c : m.scaler.columns) {
    w.put("scaler", c.name + "," + text::shortest(c.median) + "," + text::shortest(c.iqr) + "," +
                        (c.degenerate ? "1" : "0"));
  }
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LinearState>) {
          w.put("state.intercept", text::shortest(s.intercept));
          w.put("state.coef", join_vector(s.coef));
          w.put("state.sweeps", std::to_string(s.sweeps));
        } else if constexpr (std::is_same_v<T, PcrState>) {
          w.put("state.means", join_vector(s.means));
          put_matrix(w, "state.loadings", s.loadings);
          w.put("state.intercept", text::shortest(s.intercept));
          w.put("state.theta", join_vector(s.theta));
        } else if constexpr (std::is_same_v<T, KnnState>) {
          w.put("state.k", std::to_string(s.k));
          put_matrix(w, "state.points", s.points);
          w.put("state.targets", join_vector(s.targets));
        } else if constexpr (std::is_same_v<T, SvrState>) {
          w.put("state.weights", join_vector(s.weights));
          w.put("state.bias", text::shortest(s.bias));
          w.put("state.objective", text::shortest(s.objective));
        } else if constexpr (std::is_same_v<T, ForestState>) {
          for (const auto& t : s.trees) w.put("state.tree", encode_tree(t));
        } else if constexpr (std::is_same_v<T, BoostState>) {
          w.put("state.base", text::shortest(s.base));
          w.put("state.learning_rate", text::shortest(s.learning_rate));
          w.put("state.loss", join_numbers(s.training_loss.data(), static_cast<Eigen::Index>(s.training_loss.size())));
          for (const auto& t : s.trees) w.put("state.tree", encode_tree(t));
        } else if constexpr (std::is_same_v<T, Ar4State>) {
          w.put("state.phi", join_numbers(s.phi.data(), 5));
          w.put("state.levels", join_numbers(s.levels.data(), 4));
          w.put("state.growth", join_numbers(s.growth.data(), 4));
          w.put("state.last", s.last.str());
        }
      },
      m.state);
  return w.str();
}

FittedModel load_model(std::string_view text_in) {
  Entries e;
  std::size_t begin = 0;
  int line_no = 0;
  while (begin < text_in.size()) {
    const auto pos = text_in.find('\n', begin);
    const auto line = text::trim(text_in.substr(begin, pos == std::string_view::npos ? std::string_view::npos
                                                                                      : pos - begin));
    ++line_no;
    begin = pos == std::string_view::npos ? text_in.size() : pos + 1;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find(" = ");
    if (eq == std::string_view::npos) {
      // "key =" with an empty value
      if (line.size() >= 2 && line.substr(line.size() - 2) == " =") {
        e.items.emplace_back(std::string(text::trim(line.substr(0, line.size() - 2))), "");
        continue;
      }
      throw Error(ErrorCode::BadModelFile, "line " + std::to_string(line_no) + " is not 'key = value'");
    }
    e.items.emplace_back(std::string(text::trim(line.substr(0, eq))), std::string(text::trim(line.substr(eq + 3))));
  }
  if (e.one("format") != kFormat) throw Error(ErrorCode::BadModelFile, "unsupported format '" + e.one("format") + "'");

  FittedModel m;
  try {
    m.spec.family = parse_family(e.one("family"));
  } catch (const Error& err) {
    throw Error(ErrorCode::BadModelFile, err.message());
  }
  m.space = parse_space(e.one("space"));
  if (!e.all("seed").empty()) m.spec.seed = std::stoull(e.one("seed"));
  for (const auto& [k, v] : e.items) {
    if (k.rfind("hyper.", 0) == 0) m.spec.hyper[k.substr(6)] = to_double(v);
  }
  m.target_name = e.one("target");
  m.feature_names = words(e.one("features"), ',');
  for (const auto& s : e.all("scaler")) {
    const auto f = text::split(s, ',');
    if (f.size() != 4) throw Error(ErrorCode::BadModelFile, "bad scaler entry '" + s + "'");
    m.scaler.columns.push_back({f[0], to_double(f[1]), to_double(f[2]), f[3] == "1"});
  }

  switch (m.spec.family) {
    case Family::ols:
    case Family::ridge:
    case Family::lasso:
    case Family::enet: {
      LinearState s;
      s.intercept = to_double(e.one("state.intercept"));
      s.coef = to_vector(e.one("state.coef"));
      s.sweeps = static_cast<int>(to_long(e.one("state.sweeps")));
      m.state = s;
      break;
    }
    case Family::pcr: {
      PcrState s;
      s.means = to_vector(e.one("state.means"));
      s.loadings = to_matrix(e, "state.loadings");
      s.intercept = to_double(e.one("state.intercept"));
      s.theta = to_vector(e.one("state.theta"));
      m.state = s;
      break;
    }
    case Family::knn: {
      KnnState s;
      s.k = static_cast<int>(to_long(e.one("state.k")));
      s.points = to_matrix(e, "state.points");
      s.targets = to_vector(e.one("state.targets"));
      m.state = s;
      break;
    }
    case Family::svr: {
      SvrState s;
      s.weights = to_vector(e.one("state.weights"));
      s.bias = to_double(e.one("state.bias"));
      s.objective = to_double(e.one("state.objective"));
      m.state = s;
      break;
    }
    case Family::rf: {
      ForestState s;
      for (const auto& t : e.all("state.tree")) s.trees.push_back(decode_tree(t));
      m.state = s;
      break;
    }
    case Family::gbt: {
      BoostState s;
      s.base = to_double(e.one("state.base"));
      s.learning_rate = to_double(e.one("state.learning_rate"));
      const Eigen::VectorXd loss = to_vector(e.one("state.loss"));
      s.training_loss.assign(loss.data(), loss.data() + loss.size());
      for (const auto& t : e.all("state.tree")) s.trees.push_back(decode_tree(t));
      m.state = s;
      break;
    }
    case Family::ar4: {
      Ar4State s;
      const Eigen::VectorXd phi = to_vector(e.one("state.phi"));
      const Eigen::VectorXd levels = to_vector(e.one("state.levels"));
      const Eigen::VectorXd growth = to_vector(e.one("state.growth"));
      if (phi.size() != 5 || levels.size() != 4 || growth.size() != 4) {
        throw Error(ErrorCode::BadModelFile, "ar4 state has wrong lengths");
      }
      for (int i = 0; i < 5; ++i) s.phi[static_cast<std::size_t>(i)] = phi(i);
      for (int i = 0; i < 4; ++i) {
        s.levels[static_cast<std::size_t>(i)] = levels(i);
        s.growth[static_cast<std::size_t>(i)] = growth(i);
      }
      s.last = QuarterLabel::parse(e.one("state.last"));
      m.state = s;
      break;
    }
  }
  try {
    m.spec.validate();
  } catch (const Error& err) {
    throw Error(ErrorCode::BadModelFile, err.message());
  }
  return m;
}

}  // namespace nowcast::models
