#include "lawpca/data_table.hpp"

#include <cmath>
#include <sstream>

#include "lawpca/error.hpp"

namespace lawpca {

DataTable::DataTable(std::vector<std::string> variable_names, Eigen::MatrixXd values,
                     std::vector<double> unit_scale, std::vector<std::string> case_labels)
    : names_(std::move(variable_names)),
      unit_scale_(std::move(unit_scale)),
      case_labels_(std::move(case_labels)),
      values_(std::move(values)) {
  const auto p = static_cast<std::size_t>(values_.cols());
  if (names_.size() != p) {
    std::ostringstream msg;
    msg << "DataTable: " << names_.size() << " variable names for " << p << " columns";
    throw InputError(msg.str());
  }
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = a + 1; b < p; ++b) {
      if (names_[a] == names_[b]) throw InputError("DataTable: duplicate variable name '" + names_[a] + "'");
    }
  }
  if (unit_scale_.empty()) unit_scale_.assign(p, 1.0);
  if (unit_scale_.size() != p) {
    throw InputError("DataTable: unit_scale length does not match column count");
  }
  for (std::size_t j = 0; j < p; ++j) {
    if (!(unit_scale_[j] > 0.0) || !std::isfinite(unit_scale_[j])) {
      throw InputError("DataTable: unit scale of '" + names_[j] + "' must be positive");
    }
  }
  if (!case_labels_.empty() && case_labels_.size() != static_cast<std::size_t>(values_.rows())) {
    throw InputError("DataTable: case label count does not match row count");
  }
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    for (Eigen::Index j = 0; j < values_.cols(); ++j) {
      if (!std::isfinite(values_(i, j))) {
        std::ostringstream msg;
        msg << "DataTable: non-finite value at case " << i + 1 << ", variable '"
            << names_[static_cast<std::size_t>(j)] << "'";
        throw InputError(msg.str());
      }
    }
  }
}

std::optional<Eigen::Index> DataTable::find(const std::string& name) const {
  for (std::size_t j = 0; j < names_.size(); ++j) {
    if (names_[j] == name) return static_cast<Eigen::Index>(j);
  }
  return std::nullopt;
}

Eigen::Index DataTable::index_of(const std::string& name) const {
  if (auto j = find(name)) return *j;
  throw InputError("unknown variable '" + name + "'");
}

ColumnMoments column_moments(const Eigen::MatrixXd& values) {
  const Eigen::Index n = values.rows();
  if (n < 2) throw InputError("column moments need at least 2 cases");
  ColumnMoments m;
  m.means = values.colwise().mean().transpose();
  m.sds.resize(values.cols());
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    if (values.col(j).maxCoeff() == values.col(j).minCoeff()) {
      // summation rounding would otherwise leave a 1-ulp residual
      m.means(j) = values(0, j);
      m.sds(j) = 0.0;
      continue;
    }
    const double ss = (values.col(j).array() - m.means(j)).square().sum();
    m.sds(j) = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return m;
}

ColumnSelection select_columns(const DataTable& table, const ColumnMoments& moments,
                               MomentKind kind, ConstantColumnPolicy policy) {
  ColumnSelection sel;
  std::vector<std::string> constant;
  for (Eigen::Index j = 0; j < table.n_variables(); ++j) {
    const bool is_constant = moments.sds(j) * moments.sds(j) < kConstantVarianceThreshold;
    if (kind == MomentKind::correlation && is_constant) {
      constant.push_back(table.variable_names()[static_cast<std::size_t>(j)]);
    } else {
      sel.retained.push_back(j);
    }
  }
  if (!constant.empty() && policy == ConstantColumnPolicy::error) {
    std::ostringstream msg;
    msg << "correlation matrix undefined: constant column(s)";
    for (const auto& name : constant) msg << " '" << name << "'";
    msg << " (use the drop policy to exclude them)";
    throw InputError(msg.str());
  }
  sel.dropped = std::move(constant);
  if (sel.retained.empty()) throw InputError("no non-constant columns to analyse");
  return sel;
}

MomentMatrix moment_matrix(const DataTable& table, MomentKind kind, ConstantColumnPolicy policy) {
  const ColumnMoments mom = column_moments(table.values());
  ColumnSelection sel = select_columns(table, mom, kind, policy);

  const Eigen::Index n = table.n_cases();
  const auto k = static_cast<Eigen::Index>(sel.retained.size());
  Eigen::MatrixXd centered(n, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    const Eigen::Index j = sel.retained[static_cast<std::size_t>(c)];
    centered.col(c) = table.values().col(j).array() - mom.means(j);
    if (kind == MomentKind::correlation) centered.col(c) /= mom.sds(j);
  }
  Eigen::MatrixXd s = (centered.transpose() * centered) / static_cast<double>(n - 1);
  if (kind == MomentKind::correlation) s.diagonal().setOnes();
  return MomentMatrix{SymmetricMatrix<double>(s), mom.means, mom.sds, std::move(sel)};
}

}  // namespace lawpca
