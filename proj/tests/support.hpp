#pragma once

#include <doctest.h>

#include <Eigen/Dense>
#include <random>
#include <string>

#include "nowcast/error.hpp"
#include "nowcast/models/spec.hpp"

namespace testing {

template <typename F>
nowcast::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const nowcast::Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return nowcast::ErrorCode::InvariantViolated;
}

template <typename F>
std::string message_of(F&& f) {
  try {
    f();
  } catch (const nowcast::Error& e) {
    return e.what();
  }
  return {};
}

inline nowcast::models::ModelSpec spec(nowcast::models::Family f, std::map<std::string, double> h = {},
                                       std::optional<std::uint64_t> seed = std::nullopt) {
  return {f, std::move(h), seed};
}

inline Eigen::MatrixXd gaussian(std::mt19937_64& gen, Eigen::Index n, Eigen::Index p) {
  std::normal_distribution<double> z;
  Eigen::MatrixXd X(n, p);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j) X(i, j) = z(gen);
  return X;
}

}  // namespace testing
