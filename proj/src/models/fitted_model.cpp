#include "nowcast/models/fitted_model.hpp"

#include <cmath>

#include "nowcast/error.hpp"
#include "nowcast/text.hpp"

namespace nowcast::models {

std::string_view to_string(InputSpace space) {
  switch (space) {
    case InputSpace::raw: return "raw";
    case InputSpace::robust: return "robust";
    case InputSpace::log: return "log";
  }
  return "raw";
}

namespace {

ModelState fit_state(const ModelSpec& spec, const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  switch (spec.family) {
    case Family::ols:
    case Family::ridge:
    case Family::lasso:
    case Family::enet: return fit_linear(spec, X, y);
    case Family::pcr: return fit_pcr(spec, X, y);
    case Family::knn: return fit_knn(spec, X, y);
    case Family::svr: return fit_svr(spec, X, y);
    case Family::rf: return fit_random_forest(spec, X, y);
    case Family::gbt: return fit_gbt(spec, X, y);
    case Family::ar4: break;
  }
  throw Error(ErrorCode::BadHyperparameter, "ar4 is fit on a target series, not a design matrix");
}

Eigen::MatrixXd log_of(const Eigen::MatrixXd& X, const std::vector<std::string>& names) {
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      if (!(X(i, j) > 0.0)) {
        throw Error(ErrorCode::NonPositiveValue, "column '" + names[static_cast<std::size_t>(j)] + "' row " +
                                                     std::to_string(i) + " = " + text::shortest(X(i, j)) +
                                                     " cannot be logged");
      }
    }
  }
  return X.array().log().matrix();
}

Eigen::MatrixXd to_model_space(const FittedModel& m, const Eigen::MatrixXd& X) {
  switch (m.space) {
    case InputSpace::raw: return X;
    case InputSpace::log: return log_of(X, m.feature_names);
    case InputSpace::robust: {
      Eigen::MatrixXd out(X.rows(), X.cols());
      for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const auto& c = m.scaler.at(m.feature_names[static_cast<std::size_t>(j)]);
        out.col(j) = X.col(j).unaryExpr([&](double x) { return c.apply(x); });
      }
      return out;
    }
  }
  return X;
}

Eigen::VectorXd to_levels(const FittedModel& m, Eigen::VectorXd y) {
  switch (m.space) {
    case InputSpace::raw: return y;
    case InputSpace::log: return y.array().exp().matrix();
    case InputSpace::robust: {
      const auto& c = m.scaler.at(m.target_name);
      return y.unaryExpr([&](double z) { return c.invert(z); });
    }
  }
  return y;
}

}  // namespace

FittedModel fit_model(const ModelSpec& spec, const QuarterlyFrame& train, InputSpace space) {
  spec.validate();
  FittedModel m;
  m.spec = spec;
  m.space = space;
  m.target_name = train.target_name();
  if (spec.family == Family::ar4) {
    m.space = InputSpace::raw;
    m.state = fit_ar4(train.target(), train.start());
    return m;
  }
  m.feature_names = train.feature_names();
  const Eigen::MatrixXd X = train.matrix(m.feature_names);
  Eigen::VectorXd y = train.target();
  if (space == InputSpace::robust) {
    auto columns = m.feature_names;
    columns.push_back(m.target_name);
    m.scaler = fit_robust_scaler(train, columns);
    const auto& t = m.scaler.at(m.target_name);
    y = y.unaryExpr([&](double v) { return t.apply(v); });
  } else if (space == InputSpace::log) {
    y = log_of(y, {m.target_name});
  }
  m.state = fit_state(spec, to_model_space(m, X), y);
  return m;
}

FittedModel fit_model(const ModelSpec& spec, const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  FittedModel m;
  m.spec = spec;
  m.target_name = "y";
  for (Eigen::Index j = 0; j < X.cols(); ++j) m.feature_names.push_back("x" + std::to_string(j + 1));
  m.state = fit_state(spec, X, y);
  return m;
}

Eigen::VectorXd predict(const FittedModel& model, const Eigen::MatrixXd& X) {
  if (std::holds_alternative<Ar4State>(model.state)) {
    throw Error(ErrorCode::FeatureMismatch, "ar4 forecasts by horizon; use forecast()");
  }
  if (X.cols() != static_cast<Eigen::Index>(model.feature_names.size())) {
    throw Error(ErrorCode::FeatureMismatch, "model expects " + std::to_string(model.feature_names.size()) +
                                                " features, got " + std::to_string(X.cols()));
  }
  const Eigen::MatrixXd Z = to_model_space(model, X);
  Eigen::VectorXd raw = std::visit(
      [&](const auto& s) -> Eigen::VectorXd {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, Ar4State>) {
          return {};
        } else {
          return models::predict(s, Z);
        }
      },
      model.state);
  return to_levels(model, std::move(raw));
}

Eigen::VectorXd predict(const FittedModel& model, const QuarterlyFrame& frame) {
  if (const auto* ar = std::get_if<Ar4State>(&model.state)) {
    const long ahead_first = frame.start() - ar->last;
    if (ahead_first < 1) {
      throw Error(ErrorCode::BoundaryOutOfRange, "ar4 trained through " + ar->last.str() +
                                                     " cannot predict from " + frame.start().str());
    }
    const Eigen::VectorXd path = models::forecast(*ar, frame.end() - ar->last);
    return path.tail(frame.rows());
  }
  for (const auto& name : model.feature_names) {
    if (!frame.has_column(name)) throw Error(ErrorCode::FeatureMismatch, "frame lacks feature '" + name + "'");
  }
  if (frame.feature_names().size() != model.feature_names.size()) {
    throw Error(ErrorCode::FeatureMismatch, "frame carries features the model was not trained on");
  }
  return predict(model, frame.matrix(model.feature_names));
}

Eigen::VectorXd forecast(const FittedModel& model, Eigen::Index horizon) {
  const auto* ar = std::get_if<Ar4State>(&model.state);
  if (ar == nullptr) throw Error(ErrorCode::FeatureMismatch, "forecast() is only defined for ar4");
  return models::forecast(*ar, horizon);
}

}  // namespace nowcast::models
