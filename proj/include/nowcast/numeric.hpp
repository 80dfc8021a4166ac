#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "nowcast/error.hpp"

namespace nowcast::numeric {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Relative singular-value threshold below which a design is rank deficient.
inline constexpr double kRankTolerance = 1e-10;

/// argmin ||y - X b||^2 through column-pivoted Householder QR. Rank is decided
/// on the singular values first so that near-collinear designs are rejected
/// rather than silently regularized by pivoting.
template <typename DerivedX, typename DerivedY>
Vector<typename DerivedX::Scalar> solve_least_squares(const Eigen::MatrixBase<DerivedX>& X,
                                                      const Eigen::MatrixBase<DerivedY>& y) {
  using Scalar = typename DerivedX::Scalar;
  if (X.rows() != y.rows() || y.cols() != 1) {
    throw Error(ErrorCode::ShapeMismatch, "design has " + std::to_string(X.rows()) + " rows, response has " +
                                              std::to_string(y.rows()));
  }
  if (X.cols() == 0) return Vector<Scalar>();
  if (X.rows() < X.cols()) {
    throw Error(ErrorCode::RankDeficient,
                "fewer rows (" + std::to_string(X.rows()) + ") than columns (" + std::to_string(X.cols()) + ")");
  }
  const Matrix<Scalar> design = X;
  Eigen::JacobiSVD<Matrix<Scalar>> svd(design);
  const auto& sv = svd.singularValues();
  if (!(sv(0) > Scalar(0)) || sv(sv.size() - 1) < Scalar(kRankTolerance) * sv(0)) {
    throw Error(ErrorCode::RankDeficient, "smallest/largest singular value ratio below 1e-10");
  }
  return design.colPivHouseholderQr().solve(y.derived().template cast<Scalar>());
}

template <typename Scalar>
struct PcaResult {
  Vector<Scalar> column_means;
  Matrix<Scalar> loadings;  // p x p, columns are components
  Vector<Scalar> explained_variance;

  template <typename Derived>
  Matrix<Scalar> scores(const Eigen::MatrixBase<Derived>& X, Eigen::Index k) const {
    return (X.rowwise() - column_means.transpose()) * loadings.leftCols(k);
  }
};

/// Eigendecomposition of the sample covariance of column-centred X. Components
/// are ordered by decreasing variance; each loading is signed so its
/// largest-magnitude entry is positive.
template <typename Derived>
PcaResult<typename Derived::Scalar> pca(const Eigen::MatrixBase<Derived>& X) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  if (n < 2 || p < 1) {
    throw Error(ErrorCode::ShapeMismatch, "pca needs at least 2 rows and 1 column");
  }
  PcaResult<Scalar> out;
  out.column_means = X.colwise().mean().transpose();
  const Matrix<Scalar> centered = X.rowwise() - out.column_means.transpose();
  const Matrix<Scalar> cov = (centered.adjoint() * centered) / Scalar(n - 1);
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> eig(cov);

  out.loadings.resize(p, p);
  out.explained_variance.resize(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const Eigen::Index src = p - 1 - j;  // solver returns ascending order
    out.explained_variance(j) = std::max(Scalar(0), eig.eigenvalues()(src));
    Vector<Scalar> v = eig.eigenvectors().col(src);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < Scalar(0)) v = -v;
    out.loadings.col(j) = v;
  }
  return out;
}

/// Linear interpolation at 0-based position (n-1)q of the sorted values.
template <typename Scalar>
Scalar quantile(std::span<const Scalar> values, double q) {
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "quantile of empty input");
  if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorCode::QOutOfRange, "q = " + std::to_string(q));
  std::vector<Scalar> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const Scalar frac = Scalar(pos - static_cast<double>(lo));
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

template <typename Derived>
typename Derived::Scalar quantile(const Eigen::DenseBase<Derived>& values, double q) {
  using Scalar = typename Derived::Scalar;
  const Vector<Scalar> copy = values.derived().reshaped();
  return quantile<Scalar>(std::span<const Scalar>(copy.data(), static_cast<std::size_t>(copy.size())), q);
}

}  // namespace nowcast::numeric
