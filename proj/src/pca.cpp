#include "lawpca/pca.hpp"

#include <cmath>
#include <sstream>

#include "lawpca/error.hpp"

namespace lawpca {

DataTable log_transform_si(const DataTable& table,
                           const std::optional<std::vector<double>>& constant_additions) {
  const Eigen::Index n = table.n_cases();
  const Eigen::Index p = table.n_variables();
  if (constant_additions && constant_additions->size() != static_cast<std::size_t>(p)) {
    throw InputError("log_transform_si: constant_additions length does not match column count");
  }
  Eigen::MatrixXd out(n, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const double scale = table.unit_scale()[ju];
    const double shift = constant_additions ? (*constant_additions)[ju] : 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double si = (table.values()(i, j) + shift) * scale;
      if (!(si > 0.0)) {
        std::ostringstream msg;
        msg << "log transform: nonpositive value " << si << " at case " << i + 1;
        if (!table.case_labels().empty()) {
          msg << " ('" << table.case_labels()[static_cast<std::size_t>(i)] << "')";
        }
        msg << ", variable '" << table.variable_names()[ju] << "'";
        throw InputError(msg.str());
      }
      out(i, j) = std::log(si);
    }
  }
  return DataTable(table.variable_names(), std::move(out), {}, table.case_labels());
}

Eigen::VectorXd PcaModel::full_loadings(Eigen::Index component) const {
  if (component < 0 || component >= n_components()) {
    std::ostringstream msg;
    msg << "eigenvector index " << component + 1 << " out of range (model has "
        << n_components() << ")";
    throw InputError(msg.str());
  }
  Eigen::VectorXd full = Eigen::VectorXd::Zero(n_inputs());
  for (std::size_t r = 0; r < retained.size(); ++r) {
    full(retained[r]) = decomposition.eigenvectors(static_cast<Eigen::Index>(r), component);
  }
  return full;
}

namespace {

Eigen::MatrixXd standardize(const DataTable& table, const Eigen::VectorXd& means,
                            const Eigen::VectorXd& sds, const std::vector<Eigen::Index>& retained,
                            MomentKind kind) {
  const auto k = static_cast<Eigen::Index>(retained.size());
  Eigen::MatrixXd x(table.n_cases(), k);
  for (Eigen::Index c = 0; c < k; ++c) {
    const Eigen::Index j = retained[static_cast<std::size_t>(c)];
    x.col(c) = table.values().col(j).array() - means(j);
    if (kind == MomentKind::correlation) x.col(c) /= sds(j);
  }
  return x;
}

}  // namespace

PcaModel fit_pca(const DataTable& table, const PcaOptions& options) {
  if (table.n_cases() < 2) throw InputError("PCA needs at least 2 cases");
  PcaModel model;
  model.log_space = options.log_space;
  model.variable_names = table.variable_names();
  model.n_cases = table.n_cases();

  const ColumnMoments mom = column_moments(table.values());
  ColumnSelection sel = select_columns(table, mom, options.kind, options.constant_columns);
  model.means = mom.means;
  model.sds = mom.sds;
  model.retained = std::move(sel.retained);
  model.dropped = std::move(sel.dropped);

  const Eigen::MatrixXd x = standardize(table, model.means, model.sds, model.retained, options.kind);
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  if (p > n) {
    model.path = EigenPath::snapshot;
    model.decomposition = eigh_snapshot(x, options.kind);
  } else {
    model.path = EigenPath::direct;
    Eigen::MatrixXd s = (x.transpose() * x) / static_cast<double>(n - 1);
    if (options.kind == MomentKind::correlation) s.diagonal().setOnes();
    model.decomposition = eigh_jacobi(SymmetricMatrix<double>(s), options.kind);
  }
  model.scores = x * model.decomposition.eigenvectors;
  return model;
}

Eigen::MatrixXd preprocessed_data(const PcaModel& model, const DataTable& table) {
  if (table.n_variables() != model.n_inputs()) {
    throw InputError("table column count does not match the fitted model");
  }
  return standardize(table, model.means, model.sds, model.retained, model.kind());
}

std::vector<ScreePoint> scree_data(const PcaModel& model) {
  std::vector<ScreePoint> out;
  const auto& ev = model.decomposition.eigenvalues;
  out.reserve(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index j = 0; j < ev.size(); ++j) {
    // round-off can leave a null-space eigenvalue a hair below zero
    out.push_back({static_cast<int>(j + 1), std::sqrt(std::max(ev(j), 0.0))});
  }
  return out;
}

Eigen::VectorXd project_uncentered(const DataTable& table, const Eigen::VectorXd& loadings) {
  if (loadings.size() != table.n_variables()) {
    throw InputError("loading vector length does not match column count");
  }
  return table.values() * loadings;
}

Eigen::VectorXd project_uncentered(const PcaModel& model, const DataTable& table,
                                   Eigen::Index eigenvector_index, double loading_scale) {
  if (table.n_variables() != model.n_inputs()) {
    throw InputError("table column count does not match the fitted model");
  }
  return project_uncentered(table, loading_scale * model.full_loadings(eigenvector_index));
}

}  // namespace lawpca
