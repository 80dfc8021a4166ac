#include "nowcast/models/spec.hpp"

#include <algorithm>
#include <cmath>

#include "nowcast/error.hpp"
#include "nowcast/text.hpp"

namespace nowcast::models {

namespace {

struct FamilyInfo {
  Family family;
  std::string_view key;
  std::string_view display;
};

constexpr FamilyInfo kFamilies[] = {
    {Family::ols, "ols", "OLS"},     {Family::ridge, "ridge", "Ridge"}, {Family::lasso, "lasso", "Lasso"},
    {Family::enet, "enet", "E-Net"}, {Family::pcr, "pcr", "PCR"},       {Family::knn, "knn", "k-NN"},
    {Family::svr, "svr", "SVR"},     {Family::rf, "rf", "RFR"},         {Family::gbt, "gbt", "GBT"},
    {Family::ar4, "ar4", "AR(4)"},
};

const FamilyInfo& info(Family f) {
  for (const auto& i : kFamilies) {
    if (i.family == f) return i;
  }
  throw Error(ErrorCode::BadHyperparameter, "unknown family");
}


}  // namespace

std::string_view to_string(Family family) { return info(family).key; }
std::string_view display_name(Family family) { return info(family).display; }

Family parse_family(std::string_view name) {
  for (const auto& i : kFamilies) {
    if (i.key == name) return i.family;
  }
  throw Error(ErrorCode::BadHyperparameter, "unknown model family '" + std::string(name) + "'");
}

const std::vector<Family>& ml_families() {
  static const std::vector<Family> families = {Family::ridge, Family::lasso, Family::enet, Family::pcr,
                                               Family::rf,    Family::knn,   Family::svr,  Family::gbt};
  return families;
}

const std::vector<HyperparameterDecl>& declared_hyperparameters(Family family) {
  static const std::vector<HyperparameterDecl> none;
  static const std::vector<HyperparameterDecl> penalized = {{"lambda"}};
  static const std::vector<HyperparameterDecl> enet = {{"lambda"}, {"alpha"}};
  static const std::vector<HyperparameterDecl> k = {{"k", true}};
  static const std::vector<HyperparameterDecl> svr = {{"C"}, {"mu"}};
  static const std::vector<HyperparameterDecl> rf = {{"trees", true},   {"max_depth", true}, {"min_leaf", true},
                                                     {"mtry", true},    {"bootstrap", true, false, 1.0}};
  static const std::vector<HyperparameterDecl> gbt = {{"trees", true},      {"max_depth", true},
                                                      {"learning_rate"},    {"lambda_reg"},
                                                      {"min_leaf", true}};
  switch (family) {
    case Family::ols:
    case Family::ar4: return none;
    case Family::ridge:
    case Family::lasso: return penalized;
    case Family::enet: return enet;
    case Family::pcr:
    case Family::knn: return k;
    case Family::svr: return svr;
    case Family::rf: return rf;
    case Family::gbt: return gbt;
  }
  return none;
}

double ModelSpec::get(const std::string& name) const {
  if (const auto it = hyper.find(name); it != hyper.end()) return it->second;
  for (const auto& d : declared_hyperparameters(family)) {
    if (d.name == name && !d.required) return d.fallback;
  }
  throw Error(ErrorCode::BadHyperparameter,
              std::string(to_string(family)) + " has no hyperparameter '" + name + "'");
}

void ModelSpec::validate() const {
  const auto& decls = declared_hyperparameters(family);
  const std::string fam(to_string(family));
  for (const auto& [key, value] : hyper) {
    const auto it = std::find_if(decls.begin(), decls.end(), [&](const auto& d) { return d.name == key; });
    if (it == decls.end()) throw Error(ErrorCode::BadHyperparameter, fam + " does not take '" + key + "'");
    if (!std::isfinite(value)) throw Error(ErrorCode::BadHyperparameter, fam + "." + key + " is not finite");
    if (it->integer && value != std::floor(value)) {
      throw Error(ErrorCode::BadHyperparameter, fam + "." + key + " must be an integer");
    }
  }
  for (const auto& d : decls) {
    if (d.required && !hyper.count(d.name)) {
      throw Error(ErrorCode::BadHyperparameter, fam + " requires '" + d.name + "'");
    }
  }
  const auto require = [&](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::BadHyperparameter, fam + ": " + what);
  };
  switch (family) {
    case Family::ols:
    case Family::ar4: break;
    case Family::ridge:
    case Family::lasso: require(get("lambda") >= 0.0, "lambda must be >= 0"); break;
    case Family::enet:
      require(get("lambda") >= 0.0, "lambda must be >= 0");
      require(get("alpha") >= 0.0 && get("alpha") <= 1.0, "alpha must lie in [0, 1]");
      break;
    case Family::pcr:
    case Family::knn: require(get("k") >= 1.0, "k must be >= 1"); break;
    case Family::svr:
      require(get("C") > 0.0, "C must be > 0");
      require(get("mu") >= 0.0, "mu must be >= 0");
      break;
    case Family::rf:
      require(get("trees") >= 1.0, "trees must be >= 1");
      require(get("max_depth") >= 1.0, "max_depth must be >= 1");
      require(get("min_leaf") >= 1.0, "min_leaf must be >= 1");
      require(get("mtry") >= 1.0, "mtry must be >= 1");
      require(get("bootstrap") == 0.0 || get("bootstrap") == 1.0, "bootstrap must be 0 or 1");
      break;
    case Family::gbt:
      require(get("trees") >= 1.0, "trees must be >= 1");
      require(get("max_depth") >= 1.0, "max_depth must be >= 1");
      require(get("learning_rate") > 0.0 && get("learning_rate") <= 1.0, "learning_rate must lie in (0, 1]");
      require(get("lambda_reg") >= 0.0, "lambda_reg must be >= 0");
      require(get("min_leaf") >= 1.0, "min_leaf must be >= 1");
      break;
  }
}

std::string ModelSpec::describe() const {
  std::vector<std::string> parts;
  for (const auto& [k, v] : hyper) parts.push_back(k + "=" + text::shortest(v));
  return text::join(parts, ";");
}

}  // namespace nowcast::models
