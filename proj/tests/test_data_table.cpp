#include <gtest/gtest.h>

#include "lawpca/data_table.hpp"
#include "lawpca/datagen.hpp"
#include "lawpca/error.hpp"
#include "lawpca/pca.hpp"
#include "test_support.hpp"

namespace lawpca {
namespace {

DataTable two_cases() {
  Eigen::MatrixXd v(2, 2);
  v << 0, 0, 1, 1;
  return DataTable({"x", "y"}, v);
}

TEST(DataTable, ValidatesShapeAndNames) {
  EXPECT_THROW(DataTable({"x"}, Eigen::MatrixXd::Zero(2, 2)), InputError);
  EXPECT_THROW(DataTable({"x", "x"}, Eigen::MatrixXd::Zero(2, 2)), InputError);
  EXPECT_THROW(DataTable({"x", "y"}, Eigen::MatrixXd::Zero(2, 2), {1.0}), InputError);
  EXPECT_THROW(DataTable({"x", "y"}, Eigen::MatrixXd::Zero(2, 2), {1.0, 0.0}), InputError);
  EXPECT_THROW(DataTable({"x", "y"}, Eigen::MatrixXd::Zero(2, 2), {}, {"only-one"}), InputError);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(1, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(DataTable({"x", "y"}, bad), InputError);
}

TEST(DataTable, DefaultsUnitScaleToOne) {
  const auto t = two_cases();
  EXPECT_EQ(t.unit_scale(), (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(t.index_of("y"), 1);
  EXPECT_FALSE(t.find("z").has_value());
  EXPECT_THROW(t.index_of("z"), InputError);
}

TEST(MomentMatrix, TwoCasesCovariance) {
  const auto m = moment_matrix(two_cases(), MomentKind::covariance);
  Eigen::Matrix2d expected;
  expected << 0.5, 0.5, 0.5, 0.5;
  EXPECT_EQ(m.matrix.matrix(), expected);
}

TEST(MomentMatrix, ConstantColumnCovarianceIsZeroRowAndColumn) {
  Eigen::MatrixXd v(4, 3);
  v << 1, 7, 2, 2, 7, 5, 3, 7, 1, 4, 7, 0;
  const auto m = moment_matrix(DataTable({"a", "c", "b"}, v), MomentKind::covariance);
  EXPECT_EQ(m.matrix.matrix().row(1).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(m.matrix.matrix().col(1).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(m.sds(1), 0.0);
  EXPECT_EQ(m.means(1), 7.0);
}

TEST(MomentMatrix, ConstantColumnCorrelationPolicies) {
  Eigen::MatrixXd v(3, 2);
  v << 1, 5, 2, 5, 4, 5;
  const DataTable t({"x", "k"}, v);
  EXPECT_THROW(moment_matrix(t, MomentKind::correlation), InputError);
  const auto m = moment_matrix(t, MomentKind::correlation, ConstantColumnPolicy::drop);
  EXPECT_EQ(m.matrix.dim(), 1);
  EXPECT_EQ(m.columns.dropped, (std::vector<std::string>{"k"}));
  EXPECT_EQ(m.matrix(0, 0), 1.0);
}

TEST(MomentMatrix, CorrelationMatchesCovarianceScaling) {
  const Eigen::MatrixXd x = testing::random_data(30, 4, 8);
  const DataTable t({"a", "b", "c", "d"}, x);
  const auto cov = moment_matrix(t, MomentKind::covariance);
  const auto cor = moment_matrix(t, MomentKind::correlation);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(cor.matrix(i, i), 1.0);
    for (int j = 0; j < 4; ++j) {
      EXPECT_NEAR(cor.matrix(i, j), cov.matrix(i, j) / (cov.sds(i) * cov.sds(j)), 1e-14);
    }
  }
  EXPECT_NEAR(cov.sds(2), std::sqrt(cov.matrix(2, 2)), 1e-14);
}

TEST(MomentMatrix, SolarTraceMatchesReferenceEigenvalueSum) {
  const auto m = moment_matrix(log_transform_si(solar_dataset()), MomentKind::covariance);
  EXPECT_NEAR(m.matrix.matrix().trace(), 18.42139 + 2.509082, 1e-3);
}

TEST(ColumnMoments, ConstantColumnExact) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Constant(7, 1, 0.1);
  const auto m = column_moments(v);
  EXPECT_EQ(m.means(0), 0.1);
  EXPECT_EQ(m.sds(0), 0.0);
}

}  // namespace
}  // namespace lawpca
