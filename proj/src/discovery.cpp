#include "lawpca/discovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lawpca/bridge.hpp"
#include "lawpca/error.hpp"

namespace lawpca {

SegmentSpec::SegmentSpec(std::vector<Segment> segments) : segments_(std::move(segments)) {
  Eigen::Index expected = 0;
  for (const auto& s : segments_) {
    if (s.begin != expected || s.end <= s.begin) {
      throw InputError("SegmentSpec: segments must be non-empty, contiguous, and start at 0");
    }
    expected = s.end;
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    for (std::size_t j = i + 1; j < segments_.size(); ++j) {
      if (segments_[i].field == segments_[j].field) {
        throw InputError("SegmentSpec: duplicate field '" + segments_[i].field + "'");
      }
    }
  }
}

SegmentSpec SegmentSpec::uniform(const std::vector<std::string>& fields, Eigen::Index length) {
  std::vector<Segment> segs;
  Eigen::Index start = 0;
  for (const auto& f : fields) {
    segs.push_back({f, start, start + length});
    start += length;
  }
  return SegmentSpec(std::move(segs));
}

std::optional<std::size_t> SegmentSpec::find(const std::string& field) const {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (segments_[i].field == field) return i;
  }
  return std::nullopt;
}

const Segment& SegmentSpec::at(const std::string& field) const {
  if (auto i = find(field)) return segments_[*i];
  throw InputError("field '" + field + "' is not among the stacked segments");
}

SegmentLoadingSd segment_loading_sd(const Eigen::VectorXd& eigenvector, const SegmentSpec& segments) {
  if (eigenvector.size() != segments.total_length() || segments.segments().empty()) {
    std::ostringstream msg;
    msg << "segment_loading_sd: loading length " << eigenvector.size()
        << " does not match segment total " << segments.total_length();
    throw InputError(msg.str());
  }
  SegmentLoadingSd out;
  for (const auto& s : segments.segments()) {
    const auto block = eigenvector.segment(s.begin, s.size());
    const double mean = block.mean();
    out.sds.push_back(std::sqrt((block.array() - mean).square().mean()));
  }
  out.equal_loading_reference = 1.0 / std::sqrt(static_cast<double>(segments.total_length()));
  return out;
}

EigenvaluePool low_eigenvalue_pool(const EigenDecomposition<double>& dec, double quantile) {
  if (!(quantile > 0.0 && quantile <= 1.0)) {
    throw InputError("candidate pool quantile must lie in (0, 1]");
  }
  const auto& ev = dec.eigenvalues;
  const double lambda_max = ev.size() > 0 ? ev.maxCoeff() : 0.0;
  std::vector<double> nonzero;
  for (Eigen::Index j = 0; j < ev.size(); ++j) {
    if (ev(j) > 1e-12 * lambda_max) nonzero.push_back(ev(j));
  }
  if (nonzero.empty()) {
    throw InputError("candidate pool is empty: the spectrum has no nonzero eigenvalues; "
                     "try a larger pool quantile or check the data");
  }
  std::sort(nonzero.begin(), nonzero.end());
  EigenvaluePool pool;
  pool.threshold = quantile_sorted(nonzero, quantile);
  for (Eigen::Index j = ev.size() - 1; j >= 0; --j) {
    if (ev(j) > 1e-12 * lambda_max && ev(j) <= pool.threshold) pool.indices.push_back(j);
  }
  if (pool.indices.empty()) throw InputError("candidate pool is empty; try a larger pool quantile");
  return pool;
}

CandidateRanking rank_law_candidates(const PcaModel& model, const SegmentSpec& segments,
                                     double pool_quantile, const std::vector<std::string>& law_fields) {
  std::vector<std::size_t> law_segments;
  if (law_fields.empty()) {
    for (std::size_t i = 0; i < segments.segments().size(); ++i) law_segments.push_back(i);
  } else {
    for (const auto& f : law_fields) {
      auto i = segments.find(f);
      if (!i) throw InputError("law field '" + f + "' is not among the stacked segments");
      law_segments.push_back(*i);
    }
  }

  const EigenvaluePool pool = low_eigenvalue_pool(model.decomposition, pool_quantile);
  CandidateRanking ranking;
  ranking.pool_quantile = pool_quantile;
  ranking.pool_threshold = pool.threshold;
  for (const auto& i : law_segments) ranking.law_fields.push_back(segments.segments()[i].field);

  for (Eigen::Index j : pool.indices) {
    Candidate c;
    c.eigenvector_index = j;
    c.eigenvalue = model.decomposition.eigenvalues(j);
    c.segment_sds = segment_loading_sd(model.full_loadings(j), segments).sds;
    for (auto i : law_segments) c.law_score = std::max(c.law_score, c.segment_sds[i]);
    ranking.entries.push_back(std::move(c));
  }
  std::stable_sort(ranking.entries.begin(), ranking.entries.end(),
                   [](const Candidate& a, const Candidate& b) {
                     if (a.law_score != b.law_score) return a.law_score < b.law_score;
                     return a.eigenvector_index < b.eigenvector_index;
                   });
  return ranking;
}

namespace {

double integer_distance_score(const Eigen::VectorXd& scaled) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < scaled.size(); ++i) {
    if (std::abs(scaled(i)) <= kNegligibleScaledLoading) continue;
    worst = std::max(worst, std::abs(scaled(i) - std::round(scaled(i))));
  }
  return worst;
}

}  // namespace

IntegerizedLoadings integerize(const Eigen::VectorXd& eigenvector, const IntegerizeOptions& options) {
  if (eigenvector.size() == 0) throw InputError("integerize: empty loading vector");
  Eigen::Index pivot = 0;
  if (options.pivot) {
    pivot = *options.pivot;
    if (pivot < 0 || pivot >= eigenvector.size()) throw InputError("integerize: pivot out of range");
  } else {
    eigenvector.cwiseAbs().maxCoeff(&pivot);
  }
  if (eigenvector(pivot) == 0.0) throw InputError("integerize: pivot loading is zero");

  int lo = 1;
  int hi = options.max_target;
  if (options.target) {
    if (*options.target == 0) throw InputError("integerize: target must be nonzero");
    lo = hi = *options.target;
  } else if (options.max_target < 1) {
    throw InputError("integerize: search range must include at least 1");
  }

  IntegerizedLoadings best;
  best.raw = eigenvector;
  best.pivot = pivot;
  double best_score = std::numeric_limits<double>::infinity();
  for (int t = lo; t <= hi; ++t) {
    const double scale = static_cast<double>(t) / eigenvector(pivot);
    Eigen::VectorXd scaled = eigenvector * scale;
    const double score = integer_distance_score(scaled);
    if (score < best_score) {
      best_score = score;
      best.target = t;
      best.scale = scale;
      best.scaled = std::move(scaled);
    }
  }
  best.rounded = best.scaled.array().round().cast<int>();
  best.max_residual = (best.scaled - best.rounded.cast<double>()).cwiseAbs().maxCoeff();
  return best;
}

ConstantEstimate estimate_constant(const PcaModel& model, const DataTable& table,
                                   Eigen::Index eigenvector_index, const IntegerizedLoadings& loadings,
                                   LoadingChoice use) {
  model.full_loadings(eigenvector_index);  // range check
  if (loadings.scaled.size() != static_cast<Eigen::Index>(model.retained.size())) {
    throw InputError("estimate_constant: integerized loadings do not match the model");
  }
  const Eigen::VectorXd chosen =
      use == LoadingChoice::scaled ? loadings.scaled : loadings.rounded.cast<double>().eval();
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(model.n_inputs());
  for (std::size_t r = 0; r < model.retained.size(); ++r) {
    weights(model.retained[r]) = chosen(static_cast<Eigen::Index>(r));
  }
  ConstantEstimate out;
  out.per_case = project_uncentered(table, weights);
  out.constant = out.per_case.mean();
  const auto n = out.per_case.size();
  out.dispersion_sd =
      n > 1 ? std::sqrt((out.per_case.array() - out.constant).square().sum() / static_cast<double>(n - 1))
            : 0.0;
  return out;
}

const char* to_string(BetaInvalidReason reason) {
  switch (reason) {
    case BetaInvalidReason::none: return "valid";
    case BetaInvalidReason::near_zero_loading: return "near_zero_loading";
    case BetaInvalidReason::zero_slope: return "zero_slope";
    case BetaInvalidReason::degenerate_moments: return "degenerate_moments";
  }
  return "unknown";
}

std::vector<double> BetaMap::valid_values() const {
  std::vector<double> out;
  for (Eigen::Index g = 0; g < beta.size(); ++g) {
    if (valid_mask[static_cast<std::size_t>(g)]) out.push_back(beta(g));
  }
  return out;
}

std::size_t BetaMap::n_valid() const {
  return static_cast<std::size_t>(std::count(valid_mask.begin(), valid_mask.end(), true));
}

BetaMap grid_beta_map(const PcaModel& model, const DataTable& table, const SegmentSpec& segments,
                      Eigen::Index nlat, Eigen::Index nlon, Eigen::Index eigenvector_index,
                      const std::pair<std::string, std::string>& pair,
                      std::optional<double> theoretical_beta) {
  const Segment& sx = segments.at(pair.first);
  const Segment& sy = segments.at(pair.second);
  const Eigen::Index n_points = nlat * nlon;
  if (sx.size() != n_points || sy.size() != n_points) {
    throw InputError("grid_beta_map: segment length does not match the grid");
  }
  if (table.n_variables() != segments.total_length() || model.n_inputs() != table.n_variables()) {
    throw InputError("grid_beta_map: table, model, and segments disagree on column count");
  }
  const Eigen::VectorXd loadings = model.full_loadings(eigenvector_index);

  BetaMap map;
  map.nlat = nlat;
  map.nlon = nlon;
  map.field_x = pair.first;
  map.field_y = pair.second;
  map.theoretical_beta = theoretical_beta;
  map.beta = Eigen::VectorXd::Constant(n_points, std::numeric_limits<double>::quiet_NaN());
  map.valid_mask.assign(static_cast<std::size_t>(n_points), false);
  map.reasons.assign(static_cast<std::size_t>(n_points), BetaInvalidReason::none);

  for (Eigen::Index g = 0; g < n_points; ++g) {
    const auto gu = static_cast<std::size_t>(g);
    const Eigen::Index cx = sx.begin + g;
    const Eigen::Index cy = sy.begin + g;
    const double lx = loadings(cx);
    const double ly = loadings(cy);
    if (std::abs(ly) < kNearZeroLoading) {
      map.reasons[gu] = BetaInvalidReason::near_zero_loading;
      continue;
    }
    const double b = -lx / ly;
    if (b == 0.0) {
      map.reasons[gu] = BetaInvalidReason::zero_slope;
      continue;
    }
    const double s_x = model.sds(cx);
    const double s_y = model.sds(cy);
    if (!(s_x > 0.0) || !(s_y > 0.0)) {
      map.reasons[gu] = BetaInvalidReason::degenerate_moments;
      continue;
    }
    const auto mom = BivariateMoments<double>::from_samples(table.values().col(cx), table.values().col(cy));
    const double rho = std::clamp(mom.rho, -1.0, 1.0);
    const double beta_std = pca_slope_to_beta(b, rho);
    const double beta = beta_std * s_y / s_x;
    if (!std::isfinite(beta)) {
      map.reasons[gu] = BetaInvalidReason::degenerate_moments;
      continue;
    }
    map.beta(g) = beta;
    map.valid_mask[gu] = true;
  }

  if (theoretical_beta) {
    const std::vector<double> values = map.valid_values();
    if (values.size() >= 2) {
      try {
        map.summary = t_test_one_sample(values, *theoretical_beta);
      } catch (const InputError&) {
        // every valid point identical: no dispersion to test against
      }
    }
  }
  return map;
}

}  // namespace lawpca
