#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lawpca/data_table.hpp"
#include "lawpca/eigen_decomposition.hpp"

namespace lawpca {

/// ln(value * unit_scale) for every entry; output unit scales are 1.
/// `constant_additions`, when given, is added to each variable (in stored
/// units) before scaling. Throws InputError naming the first nonpositive entry.
DataTable log_transform_si(const DataTable& table,
                           const std::optional<std::vector<double>>& constant_additions = {});

enum class EigenPath { direct, snapshot };

inline const char* to_string(EigenPath path) {
  return path == EigenPath::direct ? "direct" : "snapshot";
}

struct PcaOptions {
  MomentKind kind = MomentKind::covariance;
  ConstantColumnPolicy constant_columns = ConstantColumnPolicy::error;
  bool log_space = false;  // bookkeeping only; fit_pca does not transform
};

/// A fitted PCA. Eigenvectors live in the space of the retained columns;
/// full_loadings() re-expands one to all input columns with zeros for
/// dropped ones.
struct PcaModel {
  Eigen::VectorXd means;  // all input columns
  Eigen::VectorXd sds;    // all input columns
  EigenDecomposition<double> decomposition;
  Eigen::MatrixXd scores;  // n x k
  bool log_space = false;
  EigenPath path = EigenPath::direct;
  std::vector<std::string> variable_names;  // all input columns
  std::vector<Eigen::Index> retained;
  std::vector<std::string> dropped;
  Eigen::Index n_cases = 0;

  MomentKind kind() const { return decomposition.kind; }
  Eigen::Index n_components() const { return decomposition.size(); }
  Eigen::Index n_inputs() const { return static_cast<Eigen::Index>(variable_names.size()); }
  Eigen::VectorXd full_loadings(Eigen::Index component) const;
};

/// Centers (and standardizes, for correlation kind) the data, decomposes it
/// with the direct Jacobi path when p <= n and the snapshot path when p > n,
/// and computes scores for the retained eigenpairs.
PcaModel fit_pca(const DataTable& table, const PcaOptions& options = {});

/// The centered (and standardized) retained-column data fit_pca decomposed.
Eigen::MatrixXd preprocessed_data(const PcaModel& model, const DataTable& table);

struct ScreePoint {
  int index = 0;  // 1-based
  double sqrt_eigenvalue = 0.0;
};

std::vector<ScreePoint> scree_data(const PcaModel& model);

/// Raw (uncentered) values times loading_scale * eigenvector, one per case.
Eigen::VectorXd project_uncentered(const PcaModel& model, const DataTable& table,
                                   Eigen::Index eigenvector_index, double loading_scale = 1.0);

/// Same projection with an explicit loading vector over all input columns.
Eigen::VectorXd project_uncentered(const DataTable& table, const Eigen::VectorXd& loadings);

}  // namespace lawpca
