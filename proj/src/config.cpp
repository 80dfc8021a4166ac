#include "nowcast/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "nowcast/error.hpp"
#include "nowcast/text.hpp"

namespace nowcast {

namespace {

using boost::property_tree::ptree;

Error bad(const std::string& what) { return Error(ErrorCode::BadConfig, what); }

std::vector<std::string> list_of(const std::string& value) {
  std::vector<std::string> out;
  for (auto& item : text::split(value, ',')) {
    if (!item.empty()) out.push_back(std::move(item));
  }
  return out;
}

double number_of(const std::string& where, const std::string& value) {
  double v = 0.0;
  if (!text::parse_double(value, v)) throw bad(where + ": '" + value + "' is not a number");
  return v;
}

QuarterLabel quarter_of(const std::string& where, const std::string& value) {
  try {
    return QuarterLabel::parse(text::trim(value));
  } catch (const Error& e) {
    throw bad(where + ": " + e.message());
  }
}

template <typename Handler>
void each_key(const std::string& section, const ptree& node, const std::set<std::string>& allowed, Handler handle) {
  for (const auto& [key, child] : node) {
    if (!allowed.empty() && !allowed.count(key)) throw bad("[" + section + "] unknown key '" + key + "'");
    handle(key, child.data());
  }
}

}  // namespace

const ScenarioSpec& RunConfig::scenario(const std::string& name) const {
  for (const auto& s : scenarios) {
    if (s.name == name) return s;
  }
  throw bad("no scenario named '" + name + "'");
}

RunConfig parse_config(const std::string& text_in, const std::filesystem::path& base_dir) {
  ptree tree;
  try {
    std::istringstream in(text_in);
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw bad("line " + std::to_string(e.line()) + ": " + e.message());
  }

  RunConfig cfg;
  bool custom_scenarios = false;
  for (const auto& [section, node] : tree) {
    if (node.empty() && !node.data().empty()) throw bad("key '" + section + "' outside any section");
    const std::string where = "[" + section + "]";
    if (section == "data") {
      each_key(section, node, {"path", "target", "cpi", "cpi_base", "nominal", "exclude"},
               [&](const std::string& key, const std::string& value) {
                 if (key == "path") cfg.data_path = value;
                 if (key == "target") cfg.target = value;
                 if (key == "cpi") cfg.cpi = value;
                 if (key == "cpi_base") cfg.cpi_base = quarter_of(where + " cpi_base", value);
                 if (key == "nominal") cfg.nominal = list_of(value);
                 if (key == "exclude") cfg.exclude = list_of(value);
               });
    } else if (section == "run") {
      each_key(section, node, {"families", "seed", "weights", "folds", "horizon", "output"},
               [&](const std::string& key, const std::string& value) {
                 if (key == "families") {
                   cfg.families.clear();
                   for (const auto& f : list_of(value)) {
                     try {
                       cfg.families.push_back(models::parse_family(f));
                     } catch (const Error& e) {
                       throw bad(where + " families: " + e.message());
                     }
                   }
                 }
                 if (key == "seed") {
                   const double s = number_of(where + " seed", value);
                   if (s < 0 || s != std::floor(s)) throw bad(where + " seed must be a non-negative integer");
                   cfg.seed = static_cast<std::uint64_t>(s);
                 }
                 if (key == "weights") {
                   if (value == "validation_mse") {
                     cfg.weight_basis = ensemble::WeightBasis::validation_mse;
                   } else if (value == "test_mse") {
                     cfg.weight_basis = ensemble::WeightBasis::test_mse;
                   } else {
                     throw bad(where + " weights must be validation_mse or test_mse");
                   }
                 }
                 if (key == "folds") cfg.folds = static_cast<int>(number_of(where + " folds", value));
                 if (key == "horizon") cfg.horizon = static_cast<int>(number_of(where + " horizon", value));
                 if (key == "output") cfg.output_dir = value;
               });
    } else if (section.rfind("scenario ", 0) == 0) {
      if (!custom_scenarios) cfg.scenarios.clear();
      custom_scenarios = true;
      ScenarioSpec spec;
      spec.name = std::string(text::trim(section.substr(9)));
      std::set<std::string> seen;
      each_key(section, node, {"train_end", "test_start", "test_end"},
               [&](const std::string& key, const std::string& value) {
                 seen.insert(key);
                 const auto q = quarter_of(where + " " + key, value);
                 if (key == "train_end") spec.train_end = q;
                 if (key == "test_start") spec.test_start = q;
                 if (key == "test_end") spec.test_end = q;
               });
      if (!seen.count("train_end") || !seen.count("test_end")) throw bad(where + " needs train_end and test_end");
      if (!seen.count("test_start")) spec.test_start = spec.train_end.next();
      try {
        spec.validate();
      } catch (const Error& e) {
        throw bad(e.message());
      }
      cfg.scenarios.push_back(spec);
    } else if (section.rfind("grid ", 0) == 0) {
      models::Family family{};
      try {
        family = models::parse_family(text::trim(section.substr(5)));
      } catch (const Error& e) {
        throw bad(where + ": " + e.message());
      }
      std::set<std::string> allowed;
      for (const auto& d : models::declared_hyperparameters(family)) allowed.insert(d.name);
      if (allowed.empty()) throw bad(where + ": family takes no hyperparameters");
      auto& axes = cfg.grids[family];
      each_key(section, node, allowed, [&](const std::string& key, const std::string& value) {
        std::vector<double> values;
        for (const auto& item : list_of(value)) values.push_back(number_of(where + " " + key, item));
        if (values.empty()) throw bad(where + " " + key + " has no values");
        axes[key] = values;
      });
    } else {
      throw bad("unknown section [" + section + "]");
    }
  }
  if (cfg.data_path.empty()) throw bad("[data] path is required");
  if (cfg.data_path.is_relative() && !base_dir.empty()) cfg.data_path = base_dir / cfg.data_path;
  if (cfg.families.empty()) throw bad("[run] families is empty");
  std::set<std::string> names;
  for (const auto& s : cfg.scenarios) {
    if (!names.insert(s.name).second) throw bad("duplicate scenario '" + s.name + "'");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str(), path.parent_path());
  } catch (const Error& e) {
    throw e.annotated(path.string());
  }
}

}  // namespace nowcast
