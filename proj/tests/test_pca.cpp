#include <gtest/gtest.h>

#include <cmath>

#include "lawpca/datagen.hpp"
#include "lawpca/error.hpp"
#include "lawpca/pca.hpp"
#include "test_support.hpp"

namespace lawpca {
namespace {

PcaModel solar_model() {
  PcaOptions o;
  o.log_space = true;
  return fit_pca(log_transform_si(solar_dataset()), o);
}

TEST(LogTransform, EarthSemiMajorAxis) {
  const auto t = log_transform_si(solar_dataset());
  const auto earth = 2;
  EXPECT_NEAR(t.values()(earth, 0), std::log(1.495104e11), 1e-12);
  EXPECT_NEAR(t.values()(earth, 0), 25.730632, 1e-6);
  EXPECT_NEAR(t.values()(earth, 4), 17.267325, 1e-6);
  EXPECT_EQ(t.case_labels()[earth], "Earth");
}

TEST(LogTransform, OneIsZero) {
  const DataTable t({"x"}, Eigen::MatrixXd::Constant(2, 1, 1.0));
  EXPECT_EQ(log_transform_si(t).values()(0, 0), 0.0);
}

TEST(LogTransform, RejectsNonPositiveWithLocation) {
  Eigen::MatrixXd v(2, 1);
  v << 1.0, -2.0;
  try {
    log_transform_si(DataTable({"x"}, v));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("case 2"), std::string::npos);
  }
}

TEST(LogTransform, ConstantAdditionsShiftBeforeScaling) {
  Eigen::MatrixXd v(2, 1);
  v << 0.0, 1.0;
  const auto t = log_transform_si(DataTable({"x"}, v, {10.0}), std::vector<double>{1.0});
  EXPECT_NEAR(t.values()(0, 0), std::log(10.0), 1e-15);
  EXPECT_NEAR(t.values()(1, 0), std::log(20.0), 1e-15);
}

TEST(FitPca, SolarSpectrumMatchesReferenceValues) {
  const auto m = solar_model();
  ASSERT_EQ(m.n_components(), 5);
  EXPECT_NEAR(m.decomposition.eigenvalues(0), 18.42139, 18.42139 * 1e-6);
  EXPECT_NEAR(m.decomposition.eigenvalues(1), 2.509082, 2.509082 * 1e-6);
  for (int j = 2; j < 5; ++j) EXPECT_LT(std::abs(m.decomposition.eigenvalues(j)), 1e-3);
  EXPECT_EQ(m.path, EigenPath::direct);
  EXPECT_EQ(m.kind(), MomentKind::covariance);
}

TEST(FitPca, SolarLeadingLoadingsMatchReference) {
  // reference eigenvectors 1 and 2 (rows a, b, m, M, T), up to global sign
  const Eigen::VectorXd ref[2] = {
      (Eigen::VectorXd(5) << -0.36, -0.36, -0.68, 0.00, -0.53).finished(),
      (Eigen::VectorXd(5) << 0.33, 0.33, -0.73, 0.00, 0.49).finished()};
  const auto m = solar_model();
  for (int j = 0; j < 2; ++j) {
    Eigen::VectorXd e = m.decomposition.eigenvectors.col(j);
    if (e.dot(ref[j]) < 0) e = -e;
    EXPECT_LE((e - ref[j]).cwiseAbs().maxCoeff(), 0.01) << "eigenvector " << j + 1;
  }
}

TEST(FitPca, IdenticalColumnsRankOne) {
  Eigen::MatrixXd v(4, 2);
  v << 1, 1, 2, 2, 4, 4, 8, 8;
  const auto m = fit_pca(DataTable({"x", "y"}, v));
  EXPECT_NEAR(m.decomposition.eigenvalues(1), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(m.decomposition.eigenvectors(0, 1)), std::sqrt(0.5), 1e-12);
}

TEST(FitPca, SnapshotPathWhenWide) {
  const Eigen::MatrixXd x = testing::random_data(6, 9, 2);
  std::vector<std::string> names;
  for (int j = 0; j < 9; ++j) names.push_back("v" + std::to_string(j));
  const auto m = fit_pca(DataTable(names, x));
  EXPECT_EQ(m.path, EigenPath::snapshot);
  EXPECT_EQ(m.n_components(), 5);
}

TEST(FitPca, ScoresAreCenteredProjections) {
  const Eigen::MatrixXd x = testing::random_data(25, 4, 3);
  const DataTable t({"a", "b", "c", "d"}, x);
  const auto m = fit_pca(t);
  const Eigen::MatrixXd expected = testing::centered(x) * m.decomposition.eigenvectors;
  EXPECT_LT((m.scores - expected).cwiseAbs().maxCoeff(), 1e-12);
  // score variances equal eigenvalues
  for (Eigen::Index j = 0; j < m.n_components(); ++j) {
    EXPECT_NEAR(m.scores.col(j).squaredNorm() / 24.0, m.decomposition.eigenvalues(j), 1e-10);
  }
}

TEST(FitPca, CorrelationDropsConstantColumn) {
  Eigen::MatrixXd v(5, 3);
  v << 1, 9, 2, 2, 9, 1, 3, 9, 5, 4, 9, 3, 5, 9, 4;
  PcaOptions o;
  o.kind = MomentKind::correlation;
  o.constant_columns = ConstantColumnPolicy::drop;
  const auto m = fit_pca(DataTable({"a", "k", "b"}, v), o);
  EXPECT_EQ(m.dropped, (std::vector<std::string>{"k"}));
  EXPECT_EQ(m.n_components(), 2);
  const auto full = m.full_loadings(0);
  EXPECT_EQ(full.size(), 3);
  EXPECT_EQ(full(1), 0.0);
  EXPECT_THROW(m.full_loadings(2), InputError);
}

TEST(FitPca, TooFewCases) {
  EXPECT_THROW(fit_pca(DataTable({"x"}, Eigen::MatrixXd::Ones(1, 1))), InputError);
}

TEST(Scree, SquareRoots) {
  PcaModel m;
  m.decomposition.eigenvalues = Eigen::Vector2d(4, 1);
  const auto s = scree_data(m);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].index, 1);
  EXPECT_EQ(s[0].sqrt_eigenvalue, 2.0);
  EXPECT_EQ(s[1].index, 2);
  EXPECT_EQ(s[1].sqrt_eigenvalue, 1.0);
}

TEST(Scree, SolarFirstEntry) {
  const auto s = scree_data(solar_model());
  EXPECT_NEAR(s[0].sqrt_eigenvalue, std::sqrt(18.42139), 1e-6);
  EXPECT_NEAR(s[0].sqrt_eigenvalue, 4.2920, 1e-4);
}

TEST(Scree, EmptySpectrum) {
  PcaModel m;
  EXPECT_TRUE(scree_data(m).empty());
}

TEST(ProjectUncentered, AxisReturnsColumn) {
  Eigen::MatrixXd v(3, 2);
  v << 1, 4, 2, 5, 3, 6;
  const DataTable t({"x", "y"}, v);
  const Eigen::VectorXd p = project_uncentered(t, Eigen::Vector2d(0, 1));
  EXPECT_EQ(p, v.col(1));
}

TEST(ProjectUncentered, LinearInScale) {
  const auto m = solar_model();
  const auto t = log_transform_si(solar_dataset());
  const auto one = project_uncentered(m, t, 3, 1.0);
  const auto two = project_uncentered(m, t, 3, 2.0);
  EXPECT_EQ(two, 2.0 * one);
}

TEST(ProjectUncentered, SolarKeplerConstant) {
  const auto m = solar_model();
  const auto t = log_transform_si(solar_dataset());
  const double scale = 3.0 / m.decomposition.eigenvectors(0, 3);
  const Eigen::VectorXd p = project_uncentered(m, t, 3, scale);
  EXPECT_NEAR(p.mean(), 87.45, 0.05);
}

}  // namespace
}  // namespace lawpca
