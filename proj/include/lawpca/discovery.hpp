#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lawpca/pca.hpp"
#include "lawpca/statistics.hpp"

namespace lawpca {

/// One contiguous block of the stacked loading vector (0-based, half-open).
struct Segment {
  std::string field;
  Eigen::Index begin = 0;
  Eigen::Index end = 0;

  Eigen::Index size() const { return end - begin; }
  Eigen::Index first_one_based() const { return begin + 1; }
  Eigen::Index last_one_based() const { return end; }
};

/// Disjoint contiguous segments covering [0, L) in order.
class SegmentSpec {
 public:
  SegmentSpec() = default;
  explicit SegmentSpec(std::vector<Segment> segments);

  /// One segment of `length` per field, in order.
  static SegmentSpec uniform(const std::vector<std::string>& fields, Eigen::Index length);

  const std::vector<Segment>& segments() const { return segments_; }
  Eigen::Index total_length() const { return segments_.empty() ? 0 : segments_.back().end; }
  std::optional<std::size_t> find(const std::string& field) const;
  const Segment& at(const std::string& field) const;

 private:
  std::vector<Segment> segments_;
};

struct SegmentLoadingSd {
  std::vector<double> sds;  // population SD per segment
  double equal_loading_reference = 0.0;  // 1 / sqrt(L)
};

SegmentLoadingSd segment_loading_sd(const Eigen::VectorXd& eigenvector, const SegmentSpec& segments);

struct Candidate {
  Eigen::Index eigenvector_index = 0;  // 0-based
  double eigenvalue = 0.0;
  std::vector<double> segment_sds;
  double law_score = 0.0;
};

struct CandidateRanking {
  std::vector<Candidate> entries;  // ascending law_score
  double pool_quantile = 0.25;
  double pool_threshold = 0.0;
  std::vector<std::string> law_fields;
};

struct EigenvaluePool {
  std::vector<Eigen::Index> indices;  // ascending eigenvalue
  double threshold = 0.0;
};

/// Eigenpairs whose eigenvalue is above 1e-12 * lambda_max and at or below
/// the `quantile` quantile (linear interpolation) of those nonzero eigenvalues.
EigenvaluePool low_eigenvalue_pool(const EigenDecomposition<double>& dec, double quantile);

/// Ranks the low-eigenvalue pool by the largest segment loading SD over
/// `law_fields` (every field when empty). The pool holds eigenvalues at or
/// below the `pool_quantile` quantile of the spectrum above 1e-12 * lambda_max.
CandidateRanking rank_law_candidates(const PcaModel& model, const SegmentSpec& segments,
                                     double pool_quantile = 0.25,
                                     const std::vector<std::string>& law_fields = {});

struct IntegerizeOptions {
  std::optional<Eigen::Index> pivot;  // empty: largest-magnitude loading
  std::optional<int> target;          // empty: search 1..max_target
  int max_target = 6;
};

struct IntegerizedLoadings {
  Eigen::VectorXd raw;
  Eigen::Index pivot = 0;
  int target = 1;
  double scale = 1.0;
  Eigen::VectorXd scaled;
  Eigen::VectorXi rounded;
  double max_residual = 0.0;
};

/// Loadings with magnitude at or below this after scaling are ignored when
/// scoring how close a target gets to integers.
inline constexpr double kNegligibleScaledLoading = 0.1;

/// Rescales so loading[pivot] becomes a small integer target, picking the
/// target (smallest on ties) whose non-negligible scaled loadings sit closest
/// to integers.
IntegerizedLoadings integerize(const Eigen::VectorXd& eigenvector, const IntegerizeOptions& options = {});

enum class LoadingChoice { scaled, rounded };

struct ConstantEstimate {
  double constant = 0.0;
  double dispersion_sd = 0.0;  // sample SD of per_case
  Eigen::VectorXd per_case;
};

ConstantEstimate estimate_constant(const PcaModel& model, const DataTable& table,
                                   Eigen::Index eigenvector_index, const IntegerizedLoadings& loadings,
                                   LoadingChoice use = LoadingChoice::scaled);

enum class BetaInvalidReason { none, near_zero_loading, zero_slope, degenerate_moments };

const char* to_string(BetaInvalidReason reason);

struct BetaMap {
  Eigen::Index nlat = 0;
  Eigen::Index nlon = 0;
  std::string field_x;
  std::string field_y;
  Eigen::VectorXd beta;  // lat-major, lon fastest; NaN where invalid
  std::vector<bool> valid_mask;
  std::vector<BetaInvalidReason> reasons;
  std::optional<TTestResult> summary;
  std::optional<double> theoretical_beta;

  std::vector<double> valid_values() const;
  std::size_t n_valid() const;
};

inline constexpr double kNearZeroLoading = 1e-8;

/// Per grid point: b = -loading_x / loading_y, rho from the two time series,
/// beta_std = pca_slope_to_beta(b, rho), beta = beta_std * s_y / s_x.
/// `table` is the flattened data the correlation model was fitted on.
BetaMap grid_beta_map(const PcaModel& model, const DataTable& table, const SegmentSpec& segments,
                      Eigen::Index nlat, Eigen::Index nlon, Eigen::Index eigenvector_index,
                      const std::pair<std::string, std::string>& pair,
                      std::optional<double> theoretical_beta = std::nullopt);

}  // namespace lawpca
