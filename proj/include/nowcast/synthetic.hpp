#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "nowcast/frame.hpp"

namespace nowcast::synthetic {

/// Data-generating process for a desk-scale stand-in dataset: ten AR(1)
/// indicators around exponential trends, a CPI index, and
/// GDP = intercept + sum_j beta_j * real_j + seasonal[q] + noise.
struct Dgp {
  QuarterLabel start{2007, 1};
  std::vector<std::string> names = {"ELEC", "PETR", "VAT", "FDI", "CRED", "GCUREX", "GCAPEX", "TOUR", "XG", "MG"};
  std::vector<double> coefficients = {6.0, 3.0, 5.0, 0.0, 2.5, 4.0, 1.5, 0.0, 2.0, 3.0};
  std::vector<double> means = {120.0, 90.0, 150.0, 40.0, 200.0, 110.0, 60.0, 80.0, 70.0, 100.0};
  std::vector<double> autocorrelation = {0.8, 0.7, 0.6, 0.3, 0.9, 0.5, 0.4, 0.6, 0.7, 0.75};
  double innovation_sd = 0.04;  // relative to the trend level
  double trend = 0.006;         // quarterly log growth of indicator levels
  double intercept = 800.0;
  std::array<double, 4> seasonal = {-40.0, 10.0, 50.0, -20.0};
  double noise_sd = 25.0;
  double inflation = 0.015;  // quarterly log growth of CPI
  std::vector<std::string> nominal = {"VAT", "FDI", "CRED", "GCUREX", "GCAPEX"};
  std::string target = "GDP";
  std::string cpi = "CPI";

  void validate() const;  // throws BadDgp
};

struct SyntheticData {
  QuarterlyFrame frame;          // nominal columns in current prices
  Eigen::MatrixXd real_indicators;  // n x 10, before inflation
  Dgp dgp;
  std::uint64_t seed = 0;

  /// key = value record of the ground truth.
  std::string descriptor() const;
};

SyntheticData generate_synthetic(std::uint64_t seed, int n_quarters, const Dgp& dgp = Dgp{});

}  // namespace nowcast::synthetic
