#pragma once

// End-to-end pipelines that produce the structured discovery report, and the
// plot-data files derived from a report.
//
// Reports are nlohmann::ordered_json documents with a fixed key order; doubles
// are written in shortest round-trip form, so re-reading a report yields the
// identical values and identical inputs give byte-identical output.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lawpca/data_table.hpp"
#include "lawpca/discovery.hpp"
#include "lawpca/gridded.hpp"

namespace lawpca {

using Report = nlohmann::ordered_json;

inline constexpr int kReportFormatVersion = 1;

/// How the CLI picks the integerization pivot for each eigenvector.
struct PivotRule {
  enum class Kind { first_significant, largest, variable } kind = Kind::first_significant;
  std::string variable;  // name or 1-based index when kind == variable

  /// "first", "auto", a variable name, or a 1-based column number.
  static PivotRule parse(const std::string& text);
  Eigen::Index resolve(const Eigen::VectorXd& loadings, const std::vector<std::string>& names) const;
  std::string describe() const;
};

struct TabularRequest {
  std::optional<std::filesystem::path> input;
  std::string builtin;  // "solar" or empty
  bool log_si = false;
  MomentKind kind = MomentKind::covariance;
  ConstantColumnPolicy constant_columns = ConstantColumnPolicy::error;
  double pool = 0.25;
  PivotRule pivot;
  std::optional<int> pivot_target;
  int max_target = 6;
  std::optional<int> select;  // 1-based eigenvector
};

Report discover_tabular(const TabularRequest& request);

struct GriddedRequest {
  std::filesystem::path stack_dir;
  std::vector<std::string> law_fields;
  double pool = 0.25;
  std::optional<std::pair<std::string, std::string>> pair;
  std::optional<double> beta0;
  Eigen::Index lag = 12;  // 0 skips the difference filter
  std::optional<std::pair<double, double>> crop;
  MomentKind kind = MomentKind::correlation;
  ConstantColumnPolicy constant_columns = ConstantColumnPolicy::drop;
  std::optional<int> select;  // 1-based eigenvector; default is the top-ranked candidate
  std::optional<int> bins;    // overrides Freedman-Diaconis
  int max_target = 6;
};

Report discover_gridded(const GriddedRequest& request);

/// Gridded pipeline on an in-memory stack (the CLI reads it from disk first).
Report discover_gridded(const GriddedStack& stack, const GriddedRequest& request);

/// Bivariate-normal demonstration of the PCA lines and the regression line.
Report pca_lines_demo_report(std::uint64_t seed, Eigen::Index n = 200);

struct HistogramBin {
  double left = 0.0;
  double right = 0.0;
  std::size_t count = 0;
};

inline constexpr std::size_t kMaxHistogramBins = 1000;

/// Freedman-Diaconis bins (width 2 IQR n^(-1/3)) unless `bins` is given;
/// at most kMaxHistogramBins.
std::vector<HistogramBin> histogram(std::vector<double> values, std::optional<int> bins = {});

std::string dump_report(const Report& report);
Report load_report(const std::filesystem::path& path);

enum class PlotData { scree, loading_sd, beta_hist, pca_lines };

PlotData parse_plot_data(const std::string& which);
const char* plot_file_name(PlotData which);

/// CSV text for one figure; InputError when the report lacks the data.
std::string plot_data_csv(const Report& report, PlotData which);

}  // namespace lawpca
