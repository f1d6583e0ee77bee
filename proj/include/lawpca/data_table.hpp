#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lawpca/eigen_decomposition.hpp"

namespace lawpca {

/// n cases x p variables, with names and a per-variable multiplicative factor
/// that converts stored values to SI units.
class DataTable {
 public:
  DataTable() = default;
  /// Validates shape, finiteness, and unit scales; unit_scale defaults to all 1.
  DataTable(std::vector<std::string> variable_names, Eigen::MatrixXd values,
            std::vector<double> unit_scale = {}, std::vector<std::string> case_labels = {});

  Eigen::Index n_cases() const { return values_.rows(); }
  Eigen::Index n_variables() const { return values_.cols(); }

  const std::vector<std::string>& variable_names() const { return names_; }
  const std::vector<double>& unit_scale() const { return unit_scale_; }
  const std::vector<std::string>& case_labels() const { return case_labels_; }
  const Eigen::MatrixXd& values() const { return values_; }

  /// Column index of a variable, if present.
  std::optional<Eigen::Index> find(const std::string& name) const;
  Eigen::Index index_of(const std::string& name) const;

 private:
  std::vector<std::string> names_;
  std::vector<double> unit_scale_;
  std::vector<std::string> case_labels_;
  Eigen::MatrixXd values_;
};

enum class ConstantColumnPolicy { error, drop };

/// Sample means and unbiased (n-1) standard deviations per column.
struct ColumnMoments {
  Eigen::VectorXd means;
  Eigen::VectorXd sds;
};

ColumnMoments column_moments(const Eigen::MatrixXd& values);

/// Columns whose sample variance falls below this (squared data units) count
/// as constant.
inline constexpr double kConstantVarianceThreshold = 1e-24;

/// Which columns survive standardization. Under covariance kind every column
/// is kept; under correlation kind constant columns either raise InputError
/// (naming them) or are dropped, according to the policy.
struct ColumnSelection {
  std::vector<Eigen::Index> retained;
  std::vector<std::string> dropped;
};

ColumnSelection select_columns(const DataTable& table, const ColumnMoments& moments,
                               MomentKind kind, ConstantColumnPolicy policy);

struct MomentMatrix {
  SymmetricMatrix<double> matrix;
  Eigen::VectorXd means;  // all p columns
  Eigen::VectorXd sds;    // all p columns
  ColumnSelection columns;
};

/// Unbiased covariance or correlation matrix over the retained columns.
MomentMatrix moment_matrix(const DataTable& table, MomentKind kind,
                           ConstantColumnPolicy policy = ConstantColumnPolicy::error);

}  // namespace lawpca
