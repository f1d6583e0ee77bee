#pragma once

// Two-variable geometry linking PCA lines to the regression line.
//
// With A = (1 / 2 rho) (sigma_x / sigma_y - sigma_y / sigma_x) the slopes
// A+- = A +- sqrt(1 + A^2) satisfy A+ * A- = -1, and either of them gives
// B = b - 1/b = 2A. The regression slope beta = rho sigma_y / sigma_x is then
// the root of beta^2 + B rho^2 beta - rho^2 = 0 whose sign matches rho.
//
// Note the orientation: the eigenvectors of the covariance matrix have slopes
// -A- and -A+ (with rho > 0 and sigma_y > sigma_x the major axis is steeper
// than 1, yet A+ < 1). A+- keep the sign convention under
// which the B -> beta inversion above holds, so they are what feeds
// pca_slope_to_beta; principal_axis_slopes() gives the geometric axes.

#include <cmath>
#include <span>
#include <utility>

#include <Eigen/Dense>

#include "lawpca/eigen_decomposition.hpp"
#include "lawpca/error.hpp"

namespace lawpca {

template <typename Scalar>
struct BivariateMoments {
  Scalar mu_x = 0;
  Scalar mu_y = 0;
  Scalar sigma_x = 1;
  Scalar sigma_y = 1;
  Scalar rho = 0;

  /// Sample means, unbiased SDs, and the sample correlation.
  template <typename DerivedX, typename DerivedY>
  static BivariateMoments from_samples(const Eigen::MatrixBase<DerivedX>& xs,
                                       const Eigen::MatrixBase<DerivedY>& ys) {
    if (xs.size() != ys.size()) throw InputError("moments: x and y lengths differ");
    if (xs.size() < 2) throw InputError("moments: need at least 2 samples");
    const Scalar n = Scalar(xs.size());
    BivariateMoments m;
    m.mu_x = xs.mean();
    m.mu_y = ys.mean();
    const auto dx = (xs.array() - m.mu_x).eval();
    const auto dy = (ys.array() - m.mu_y).eval();
    const Scalar sxx = dx.square().sum();
    const Scalar syy = dy.square().sum();
    const Scalar sxy = (dx * dy).sum();
    m.sigma_x = std::sqrt(sxx / (n - 1));
    m.sigma_y = std::sqrt(syy / (n - 1));
    m.rho = (sxx > 0 && syy > 0) ? sxy / std::sqrt(sxx * syy) : Scalar(0);
    return m;
  }
};

template <typename Scalar>
struct PcaLineSlopes {
  Scalar a_plus = 0;
  Scalar a_minus = 0;
  Scalar A = 0;
};

template <typename Scalar>
void require_valid(const BivariateMoments<Scalar>& m) {
  if (!(m.sigma_x > 0) || !(m.sigma_y > 0)) {
    throw InputError("bivariate moments: standard deviations must be positive");
  }
  if (!(std::abs(m.rho) < 1)) throw InputError("bivariate moments: |rho| must be below 1");
}

template <typename Scalar>
PcaLineSlopes<Scalar> pca_slopes(const BivariateMoments<Scalar>& m) {
  require_valid(m);
  if (m.rho == Scalar(0)) {
    throw InputError(
        "pca_slopes: rho == 0, PCA axes align with the coordinate axes (slopes 0 and infinity)");
  }
  PcaLineSlopes<Scalar> s;
  s.A = (m.sigma_x / m.sigma_y - m.sigma_y / m.sigma_x) / (Scalar(2) * m.rho);
  const Scalar root = std::sqrt(Scalar(1) + s.A * s.A);
  // take the non-cancelling root directly and the other from a+ a- = -1
  if (s.A >= 0) {
    s.a_plus = s.A + root;
    s.a_minus = Scalar(-1) / s.a_plus;
  } else {
    s.a_minus = s.A - root;
    s.a_plus = Scalar(-1) / s.a_minus;
  }
  return s;
}

/// Slopes of the major and minor principal axes of the covariance matrix.
/// The major axis slope carries the sign of rho.
template <typename Scalar>
std::pair<Scalar, Scalar> principal_axis_slopes(const PcaLineSlopes<Scalar>& s, Scalar rho) {
  if (rho > 0) return {-s.a_minus, -s.a_plus};
  return {-s.a_plus, -s.a_minus};
}

enum class Radicand {
  corrected,   // B^2 rho^4 + 4 rho^2, the exact inverse of the slope formula
  as_printed,  // B^2 rho^4 + 4 rho^4, kept for side-by-side comparison output
};

template <typename Scalar>
Scalar pca_slope_to_beta(Scalar b, Scalar rho, Radicand radicand = Radicand::corrected) {
  if (b == Scalar(0)) throw InputError("pca_slope_to_beta: slope b must be nonzero");
  if (!(std::abs(rho) <= 1)) throw InputError("pca_slope_to_beta: |rho| must not exceed 1");
  if (rho == Scalar(0)) return Scalar(0);
  const Scalar big_b = b - Scalar(1) / b;
  const Scalar rho2 = rho * rho;
  const Scalar last = radicand == Radicand::corrected ? Scalar(4) * rho2 : Scalar(4) * rho2 * rho2;
  const Scalar root = std::sqrt(big_b * big_b * rho2 * rho2 + last);
  const Scalar sign = rho > 0 ? Scalar(1) : Scalar(-1);
  return Scalar(0.5) * (-big_b * rho2 + sign * root);
}

/// Ordinary least-squares slope cov(x, y) / var(x).
template <typename DerivedX, typename DerivedY>
typename DerivedX::Scalar regression_slope_direct(const Eigen::MatrixBase<DerivedX>& xs,
                                                  const Eigen::MatrixBase<DerivedY>& ys) {
  using Scalar = typename DerivedX::Scalar;
  if (xs.size() != ys.size()) throw InputError("regression: x and y lengths differ");
  if (xs.size() < 2) throw InputError("regression: need at least 2 samples");
  const auto dx = (xs.array() - xs.mean()).eval();
  const auto dy = (ys.array() - ys.mean()).eval();
  const Scalar sxx = dx.square().sum();
  if (!(sxx > 0)) throw InputError("regression: x has zero variance");
  return (dx * dy).sum() / sxx;
}

template <typename Scalar>
struct Line {
  Scalar slope = 0;
  Scalar intercept = 0;
};

template <typename Scalar>
struct PcaLinesDemo {
  Line<Scalar> pca_plus;
  Line<Scalar> pca_minus;
  Line<Scalar> regression;
};

/// Lines through (mu_x, mu_y) with slopes A+, A-, and rho sigma_y / sigma_x.
template <typename Scalar>
PcaLinesDemo<Scalar> pca_lines_demo(const BivariateMoments<Scalar>& m) {
  const PcaLineSlopes<Scalar> s = pca_slopes(m);
  auto through_mean = [&](Scalar slope) { return Line<Scalar>{slope, m.mu_y - slope * m.mu_x}; };
  return {through_mean(s.a_plus), through_mean(s.a_minus),
          through_mean(m.rho * m.sigma_y / m.sigma_x)};
}

}  // namespace lawpca
