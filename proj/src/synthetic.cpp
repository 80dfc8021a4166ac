#include "nowcast/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "nowcast/error.hpp"
#include "nowcast/rng.hpp"
#include "nowcast/text.hpp"

namespace nowcast::synthetic {

void Dgp::validate() const {
  const auto bad = [](const std::string& what) { return Error(ErrorCode::BadDgp, what); };
  if (names.size() != 10) throw bad("expected 10 indicator names");
  if (coefficients.size() != names.size() || means.size() != names.size() || autocorrelation.size() != names.size()) {
    throw bad("coefficients, means and autocorrelation need one entry per indicator");
  }
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (!(std::abs(autocorrelation[j]) < 1.0)) throw bad(names[j] + ": autocorrelation must lie in (-1, 1)");
    if (!(means[j] > 0.0)) throw bad(names[j] + ": mean must be positive");
    if (!std::isfinite(coefficients[j])) throw bad(names[j] + ": coefficient not finite");
  }
  if (!(innovation_sd >= 0.0) || !(noise_sd >= 0.0)) throw bad("standard deviations must be >= 0");
  for (const auto& n : nominal) {
    if (std::find(names.begin(), names.end(), n) == names.end()) throw bad("nominal column '" + n + "' unknown");
  }
}

SyntheticData generate_synthetic(std::uint64_t seed, int n_quarters, const Dgp& dgp) {
  dgp.validate();
  if (n_quarters < 24) throw Error(ErrorCode::BadDgp, "n_quarters must be >= 24, got " + std::to_string(n_quarters));
  const Eigen::Index n = n_quarters;
  const auto p = static_cast<Eigen::Index>(dgp.names.size());
  const RngStream root(seed, "synthetic");

  Eigen::MatrixXd real(n, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    RngStream rng = root.substream(dgp.names[static_cast<std::size_t>(j)]);
    const double rho = dgp.autocorrelation[static_cast<std::size_t>(j)];
    double dev = rng.normal() * dgp.innovation_sd / std::sqrt(1.0 - rho * rho);
    for (Eigen::Index t = 0; t < n; ++t) {
      if (t > 0) dev = rho * dev + dgp.innovation_sd * rng.normal();
      const double level = dgp.means[static_cast<std::size_t>(j)] * std::exp(dgp.trend * static_cast<double>(t));
      real(t, j) = level * (1.0 + dev);
      if (!(real(t, j) > 0.0)) {
        throw Error(ErrorCode::BadDgp, dgp.names[static_cast<std::size_t>(j)] + " went non-positive; lower innovation_sd");
      }
    }
  }

  RngStream noise = root.substream("noise");
  const QuarterLabel start = dgp.start;
  Eigen::VectorXd gdp(n);
  Eigen::VectorXd cpi(n);
  for (Eigen::Index t = 0; t < n; ++t) {
    double y = dgp.intercept + dgp.seasonal[static_cast<std::size_t>((start + t).quarter - 1)];
    for (Eigen::Index j = 0; j < p; ++j) y += dgp.coefficients[static_cast<std::size_t>(j)] * real(t, j);
    y += dgp.noise_sd * noise.normal();
    if (!(y > 0.0)) throw Error(ErrorCode::BadDgp, "GDP went non-positive at row " + std::to_string(t));
    gdp(t) = y;
    cpi(t) = 100.0 * std::exp(dgp.inflation * static_cast<double>(t));
  }

  std::vector<std::string> names = {dgp.target};
  names.insert(names.end(), dgp.names.begin(), dgp.names.end());
  names.push_back(dgp.cpi);
  Eigen::MatrixXd values(n, p + 2);
  values.col(0) = gdp;
  for (Eigen::Index j = 0; j < p; ++j) {
    const bool nominal = std::find(dgp.nominal.begin(), dgp.nominal.end(), dgp.names[static_cast<std::size_t>(j)]) !=
                         dgp.nominal.end();
    values.col(j + 1) = nominal ? (real.col(j).array() * cpi.array() / cpi(0)).matrix() : Eigen::VectorXd(real.col(j));
  }
  values.col(p + 1) = cpi;

  SyntheticData out{QuarterlyFrame(start, names, std::move(values), dgp.target), std::move(real), dgp, seed};
  return out;
}

std::string SyntheticData::descriptor() const {
  std::string out;
  const auto put = [&](const std::string& k, const std::string& v) { out += k + " = " + v + "\n"; };
  put("seed", std::to_string(seed));
  put("n_quarters", std::to_string(frame.rows()));
  put("start", dgp.start.str());
  put("target", dgp.target);
  put("cpi", dgp.cpi);
  put("intercept", text::shortest(dgp.intercept));
  for (std::size_t j = 0; j < dgp.names.size(); ++j) {
    put("coef." + dgp.names[j], text::shortest(dgp.coefficients[j]));
    put("autocorrelation." + dgp.names[j], text::shortest(dgp.autocorrelation[j]));
  }
  for (int q = 0; q < 4; ++q) put("seasonal.Q" + std::to_string(q + 1), text::shortest(dgp.seasonal[static_cast<std::size_t>(q)]));
  put("noise_sd", text::shortest(dgp.noise_sd));
  put("innovation_sd", text::shortest(dgp.innovation_sd));
  put("trend", text::shortest(dgp.trend));
  put("inflation", text::shortest(dgp.inflation));
  put("nominal", text::join(dgp.nominal, ","));
  return out;
}

}  // namespace nowcast::synthetic
