#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lawpca/bridge.hpp"
#include "lawpca/data_table.hpp"
#include "lawpca/statistics.hpp"

namespace lawpca {
namespace {

const BivariateMoments<double> kDemo{0.0, 10.0, std::sqrt(2.0), std::sqrt(3.0), 0.8};

TEST(PcaSlopes, SymmetricCase) {
  const auto s = pca_slopes(BivariateMoments<double>{0, 0, 1.5, 1.5, 0.8});
  EXPECT_EQ(s.A, 0.0);
  EXPECT_EQ(s.a_plus, 1.0);
  EXPECT_EQ(s.a_minus, -1.0);
}

TEST(PcaSlopes, DemoParameters) {
  const auto s = pca_slopes(kDemo);
  EXPECT_NEAR(s.A, -0.255155, 1e-6);
  EXPECT_NEAR(s.a_plus, 0.776884, 1e-6);
  EXPECT_NEAR(s.a_minus, -1.287194, 1e-6);
}

TEST(PcaSlopes, ProductIsMinusOne) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> sd(0.1, 10.0), r(-0.99, 0.99);
  for (int k = 0; k < 500; ++k) {
    const double rho = r(rng);
    if (rho == 0.0) continue;
    const auto s = pca_slopes(BivariateMoments<double>{0, 0, sd(rng), sd(rng), rho});
    EXPECT_NEAR(s.a_plus * s.a_minus, -1.0, 1e-12);
  }
}

TEST(PcaSlopes, RejectsInvalidMoments) {
  EXPECT_THROW(pca_slopes(BivariateMoments<double>{0, 0, 1, 1, 0}), InputError);
  EXPECT_THROW(pca_slopes(BivariateMoments<double>{0, 0, 0, 1, 0.5}), InputError);
  EXPECT_THROW(pca_slopes(BivariateMoments<double>{0, 0, 1, 1, 1.0}), InputError);
}

TEST(PrincipalAxes, MatchCovarianceEigenvectors) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> sd(0.2, 5.0), r(-0.95, 0.95);
  for (int k = 0; k < 200; ++k) {
    const BivariateMoments<double> m{0, 0, sd(rng), sd(rng), r(rng)};
    if (m.rho == 0.0 || m.sigma_x == m.sigma_y) continue;
    Eigen::Matrix2d c;
    c << m.sigma_x * m.sigma_x, m.rho * m.sigma_x * m.sigma_y, m.rho * m.sigma_x * m.sigma_y,
        m.sigma_y * m.sigma_y;
    const auto dec = eigh_jacobi(SymmetricMatrix<double>(c));
    const auto [major, minor] = principal_axis_slopes(pca_slopes(m), m.rho);
    EXPECT_NEAR(major, dec.eigenvectors(1, 0) / dec.eigenvectors(0, 0), 1e-9 * (1 + std::abs(major)));
    EXPECT_NEAR(minor, dec.eigenvectors(1, 1) / dec.eigenvectors(0, 1), 1e-9 * (1 + std::abs(minor)));
  }
}

TEST(SlopeToBeta, UnitSlopeGivesRho) {
  EXPECT_NEAR(pca_slope_to_beta(1.0, 0.8), 0.8, 1e-15);
  // the unsquared radicand variant gives rho^2 instead
  EXPECT_NEAR(pca_slope_to_beta(1.0, 0.8, Radicand::as_printed), 0.64, 1e-15);
}

TEST(SlopeToBeta, DemoParameters) {
  const auto s = pca_slopes(kDemo);
  EXPECT_NEAR(pca_slope_to_beta(s.a_plus, kDemo.rho), 0.979796, 1e-6);
  EXPECT_NEAR(pca_slope_to_beta(s.a_plus, kDemo.rho), 0.8 * std::sqrt(1.5), 1e-14);
}

TEST(SlopeToBeta, EitherPcaSlopeGivesSameBeta) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> sd(0.1, 10.0), r(-0.99, 0.99);
  for (int k = 0; k < 500; ++k) {
    const BivariateMoments<double> m{0, 0, sd(rng), sd(rng), r(rng)};
    const auto s = pca_slopes(m);
    EXPECT_NEAR(1.0 / s.a_plus, std::sqrt(1 + s.A * s.A) - s.A, 1e-9 * (1 + std::abs(1.0 / s.a_plus)));
    const double b1 = pca_slope_to_beta(s.a_plus, m.rho);
    const double b2 = pca_slope_to_beta(s.a_minus, m.rho);
    EXPECT_NEAR(b1, b2, 1e-10 * (1 + std::abs(b1)));
    EXPECT_NEAR(b1, m.rho * m.sigma_y / m.sigma_x, 1e-10 * (1 + std::abs(b1)));
  }
}

TEST(SlopeToBeta, ZeroRhoAndBadInput) {
  EXPECT_EQ(pca_slope_to_beta(2.0, 0.0), 0.0);
  EXPECT_THROW(pca_slope_to_beta(0.0, 0.5), InputError);
  EXPECT_THROW(pca_slope_to_beta(1.0, 1.5), InputError);
}

TEST(RegressionSlope, ExactFitAndFlat) {
  EXPECT_DOUBLE_EQ(regression_slope_direct(Eigen::Vector2d(0, 1), Eigen::Vector2d(0, 1)), 1.0);
  EXPECT_DOUBLE_EQ(regression_slope_direct(Eigen::Vector2d(0, 1), Eigen::Vector2d(0, 0)), 0.0);
  EXPECT_THROW(regression_slope_direct(Eigen::Vector2d(1, 1), Eigen::Vector2d(0, 1)), InputError);
}

TEST(RegressionSlope, MatchesLeastSquaresSolve) {
  const auto t = sample_gaussian_pairs(300, {1, 2, 4, 1, -0.4}, 21);
  const auto x = t.values().col(0);
  const auto y = t.values().col(1);
  Eigen::MatrixXd design(x.size(), 2);
  design.col(0).setOnes();
  design.col(1) = x;
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(y);
  EXPECT_NEAR(regression_slope_direct(x, y), coef(1), 1e-12);
}

TEST(RegressionSlope, OracleEquivalenceOverSeededDatasets) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> var(0.1, 10.0), r(-0.95, 0.95), mu(-5, 5);
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const BivariateNormalParams p{mu(rng), mu(rng), var(rng), var(rng), r(rng)};
    const auto t = sample_gaussian_pairs(200, p, k);
    const auto x = t.values().col(0);
    const auto y = t.values().col(1);
    const auto m = BivariateMoments<double>::from_samples(x, y);
    const double via_pca = pca_slope_to_beta(pca_slopes(m).a_plus, m.rho);
    EXPECT_LT(std::abs(via_pca - regression_slope_direct(x, y)), 1e-9) << "dataset " << k;
  }
}

TEST(PcaLines, DemoLinesThroughMean) {
  const auto d = pca_lines_demo(kDemo);
  EXPECT_NEAR(d.pca_plus.slope, 0.776884, 1e-6);
  EXPECT_NEAR(d.pca_minus.slope, -1.287194, 1e-6);
  EXPECT_EQ(d.pca_plus.intercept, 10.0);
  EXPECT_EQ(d.pca_minus.intercept, 10.0);
  EXPECT_EQ(d.regression.intercept, 10.0);
}

TEST(PcaLines, SymmetricThroughOrigin) {
  const auto d = pca_lines_demo(BivariateMoments<double>{0, 0, 1, 1, 0.5});
  EXPECT_EQ(d.pca_plus.slope, 1.0);
  EXPECT_EQ(d.pca_minus.slope, -1.0);
  EXPECT_EQ(d.pca_plus.intercept, 0.0);
  EXPECT_EQ(d.pca_minus.intercept, 0.0);
}

TEST(PcaLines, NonZeroMeanIntercept) {
  const auto d = pca_lines_demo(BivariateMoments<double>{2, 1, 1, 1, 0.5});
  EXPECT_DOUBLE_EQ(d.pca_plus.intercept, 1 - 2 * d.pca_plus.slope);
}

}  // namespace
}  // namespace lawpca
