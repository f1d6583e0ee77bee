#include "lawpca/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lawpca/bridge.hpp"
#include "lawpca/datagen.hpp"
#include "lawpca/error.hpp"
#include "lawpca/number_format.hpp"
#include "lawpca/pca.hpp"
#include "lawpca/statistics.hpp"
#include "lawpca/tabular_csv.hpp"

namespace lawpca {

using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// pivot rule

PivotRule PivotRule::parse(const std::string& text) {
  PivotRule rule;
  if (text.empty() || text == "first") {
    rule.kind = Kind::first_significant;
  } else if (text == "auto") {
    rule.kind = Kind::largest;
  } else {
    rule.kind = Kind::variable;
    rule.variable = text;
  }
  return rule;
}

Eigen::Index PivotRule::resolve(const Eigen::VectorXd& loadings,
                                const std::vector<std::string>& names) const {
  switch (kind) {
    case Kind::largest: {
      Eigen::Index i = 0;
      loadings.cwiseAbs().maxCoeff(&i);
      return i;
    }
    case Kind::first_significant: {
      const double cutoff = 0.1 * loadings.cwiseAbs().maxCoeff();
      for (Eigen::Index i = 0; i < loadings.size(); ++i) {
        if (std::abs(loadings(i)) > cutoff) return i;
      }
      return 0;
    }
    case Kind::variable: {
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == variable) return static_cast<Eigen::Index>(i);
      }
      const bool numeric = !variable.empty() && std::all_of(variable.begin(), variable.end(),
                                                            [](char c) { return c >= '0' && c <= '9'; });
      if (numeric) {
        const long k = std::stol(variable);
        if (k >= 1 && k <= static_cast<long>(names.size())) return static_cast<Eigen::Index>(k - 1);
      }
      throw InputError("pivot '" + variable + "' is neither a variable name nor a column number");
    }
  }
  return 0;
}

std::string PivotRule::describe() const {
  switch (kind) {
    case Kind::first_significant: return "first";
    case Kind::largest: return "auto";
    case Kind::variable: return variable;
  }
  return "first";
}

// ---------------------------------------------------------------------------
// shared report pieces

namespace {

ordered_json vector_json(const Eigen::VectorXd& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

ordered_json spectrum_json(const PcaModel& model) {
  ordered_json s;
  s["kind"] = to_string(model.kind());
  s["path"] = to_string(model.path);
  s["n_eigenpairs"] = model.n_components();
  s["zero_spectrum"] = model.decomposition.zero_spectrum;
  s["trace"] = model.decomposition.eigenvalues.sum();
  s["eigenvalues"] = vector_json(model.decomposition.eigenvalues);
  return s;
}

ordered_json scree_json(const PcaModel& model) {
  ordered_json a = ordered_json::array();
  for (const auto& p : scree_data(model)) {
    a.push_back({{"index", p.index}, {"sqrt_eigenvalue", p.sqrt_eigenvalue}});
  }
  return a;
}

ordered_json t_test_json(const TTestResult& t) {
  return {{"t_statistic", t.t_statistic},
          {"degrees_of_freedom", t.degrees_of_freedom},
          {"p_value_two_sided", t.p_value_two_sided},
          {"ci95", {t.ci95.low, t.ci95.high}},
          {"sample_mean", t.sample_mean},
          {"sample_sd", t.sample_sd}};
}

// Scaled/rounded vectors are reported over all input columns (0 for dropped ones).
Eigen::VectorXd expand(const PcaModel& model, const Eigen::VectorXd& retained_values) {
  Eigen::VectorXd full = Eigen::VectorXd::Zero(model.n_inputs());
  for (std::size_t r = 0; r < model.retained.size(); ++r) {
    full(model.retained[r]) = retained_values(static_cast<Eigen::Index>(r));
  }
  return full;
}

std::vector<std::string> retained_names(const PcaModel& model) {
  std::vector<std::string> names;
  for (auto j : model.retained) names.push_back(model.variable_names[static_cast<std::size_t>(j)]);
  return names;
}

struct TabularComponent {
  ordered_json integerized;
  ordered_json constant;
};

TabularComponent tabular_component(const PcaModel& model, const DataTable& work, Eigen::Index j,
                                   const TabularRequest& req, bool with_per_case) {
  TabularComponent out;
  const Eigen::VectorXd v = model.decomposition.eigenvectors.col(j);
  const auto names = retained_names(model);
  try {
    IntegerizeOptions opts;
    opts.pivot = req.pivot.resolve(v, names);
    opts.target = req.pivot_target;
    opts.max_target = req.max_target;
    const IntegerizedLoadings il = integerize(v, opts);
    out.integerized["pivot"] = names[static_cast<std::size_t>(il.pivot)];
    out.integerized["target"] = il.target;
    out.integerized["scale"] = il.scale;
    out.integerized["scaled"] = vector_json(expand(model, il.scaled));
    out.integerized["rounded"] = vector_json(expand(model, il.rounded.cast<double>()));
    out.integerized["max_residual"] = il.max_residual;

    const ConstantEstimate scaled = estimate_constant(model, work, j, il, LoadingChoice::scaled);
    const ConstantEstimate rounded = estimate_constant(model, work, j, il, LoadingChoice::rounded);
    out.constant["scaled"] = scaled.constant;
    out.constant["scaled_dispersion_sd"] = scaled.dispersion_sd;
    out.constant["rounded"] = rounded.constant;
    out.constant["rounded_dispersion_sd"] = rounded.dispersion_sd;
    if (with_per_case) out.constant["per_case_scaled"] = vector_json(scaled.per_case);
  } catch (const InputError& e) {
    out.integerized = {{"error", e.what()}};
    out.constant = nullptr;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// tabular pipeline

Report discover_tabular(const TabularRequest& req) {
  if (req.builtin.empty() == !req.input.has_value()) {
    throw InputError("give exactly one of an input CSV path or --builtin");
  }
  if (!req.builtin.empty() && req.builtin != "solar") {
    throw InputError("unknown builtin dataset '" + req.builtin + "' (available: solar)");
  }
  const DataTable raw = req.input ? read_tabular_csv(*req.input) : solar_dataset();
  const DataTable work = req.log_si ? log_transform_si(raw) : raw;
  PcaOptions popts;
  popts.kind = req.kind;
  popts.constant_columns = req.constant_columns;
  popts.log_space = req.log_si;
  const PcaModel model = fit_pca(work, popts);

  Report r;
  r["report"] = "lawpca discovery";
  r["format_version"] = kReportFormatVersion;
  r["mode"] = "tabular";

  ordered_json run;
  run["input"] = req.input ? ordered_json(req.input->string()) : ordered_json(nullptr);
  run["builtin"] = req.builtin.empty() ? ordered_json(nullptr) : ordered_json(req.builtin);
  run["log_si"] = req.log_si;
  run["kind"] = to_string(req.kind);
  run["constant_policy"] = req.constant_columns == ConstantColumnPolicy::error ? "error" : "drop";
  run["pool"] = req.pool;
  run["pivot"] = req.pivot.describe();
  run["pivot_target"] = req.pivot_target ? ordered_json(*req.pivot_target) : ordered_json(nullptr);
  run["max_target"] = req.max_target;
  run["select"] = req.select ? ordered_json(*req.select) : ordered_json(nullptr);
  r["run"] = run;

  ordered_json data;
  data["n_cases"] = raw.n_cases();
  data["variables"] = raw.variable_names();
  data["unit_scale"] = raw.unit_scale();
  data["case_labels"] = raw.case_labels();
  data["dropped_columns"] = model.dropped;
  r["data"] = data;

  r["spectrum"] = spectrum_json(model);
  r["scree"] = scree_json(model);

  ordered_json vectors = ordered_json::array();
  for (Eigen::Index j = 0; j < model.n_components(); ++j) {
    const TabularComponent comp = tabular_component(model, work, j, req, false);
    ordered_json e;
    e["index"] = j + 1;
    e["eigenvalue"] = model.decomposition.eigenvalues(j);
    e["loadings"] = vector_json(model.full_loadings(j));
    e["integerized"] = comp.integerized;
    e["constant"] = comp.constant;
    vectors.push_back(std::move(e));
  }
  r["eigenvectors"] = vectors;

  const EigenvaluePool pool = low_eigenvalue_pool(model.decomposition, req.pool);
  ordered_json cand;
  cand["pool_quantile"] = req.pool;
  cand["pool_threshold"] = pool.threshold;
  cand["indices"] = ordered_json::array();
  for (auto j : pool.indices) cand["indices"].push_back(j + 1);
  r["candidates"] = cand;

  Eigen::Index selected = pool.indices.front();
  if (req.select) {
    if (*req.select < 1 || *req.select > model.n_components()) {
      throw InputError("--select " + std::to_string(*req.select) + " is out of range 1.." +
                       std::to_string(model.n_components()));
    }
    selected = *req.select - 1;
  }
  const TabularComponent comp = tabular_component(model, work, selected, req, true);
  ordered_json sel;
  sel["index"] = selected + 1;
  sel["eigenvalue"] = model.decomposition.eigenvalues(selected);
  sel["loadings"] = vector_json(model.full_loadings(selected));
  sel["integerized"] = comp.integerized;
  sel["constant"] = comp.constant;
  r["selected"] = sel;
  return r;
}

// ---------------------------------------------------------------------------
// gridded pipeline

Report discover_gridded(const GriddedRequest& req) {
  return discover_gridded(read_stack_dir(req.stack_dir), req);
}

Report discover_gridded(const GriddedStack& input, const GriddedRequest& req) {
  input.validate();
  if (req.beta0 && !req.pair) throw InputError("--beta0 needs --pair to name the two law fields");
  if (req.lag < 0) throw InputError("--lag must be nonnegative");
  GriddedStack stack = input;
  if (req.lag > 0) stack = difference_filter(stack, req.lag);
  if (req.crop) stack = crop_latitudes(stack, req.crop->first, req.crop->second);
  const auto [table, segments] = flatten_stack(stack);
  if (req.pair) {
    segments.at(req.pair->first);
    segments.at(req.pair->second);
  }

  PcaOptions popts;
  popts.kind = req.kind;
  popts.constant_columns = req.constant_columns;
  const PcaModel model = fit_pca(table, popts);
  const CandidateRanking ranking = rank_law_candidates(model, segments, req.pool, req.law_fields);

  Report r;
  r["report"] = "lawpca discovery";
  r["format_version"] = kReportFormatVersion;
  r["mode"] = "gridded";

  ordered_json run;
  run["stack_dir"] = req.stack_dir.string();
  run["lag"] = req.lag;
  run["crop"] = req.crop ? ordered_json({req.crop->first, req.crop->second}) : ordered_json(nullptr);
  run["kind"] = to_string(req.kind);
  run["constant_policy"] = req.constant_columns == ConstantColumnPolicy::error ? "error" : "drop";
  run["pool"] = req.pool;
  run["law_fields"] = req.law_fields;
  run["pair"] = req.pair ? ordered_json({req.pair->first, req.pair->second}) : ordered_json(nullptr);
  run["beta0"] = req.beta0 ? ordered_json(*req.beta0) : ordered_json(nullptr);
  run["select"] = req.select ? ordered_json(*req.select) : ordered_json(nullptr);
  run["bins"] = req.bins ? ordered_json(*req.bins) : ordered_json(nullptr);
  r["run"] = run;

  ordered_json pre;
  pre["n_time_input"] = input.n_time();
  pre["n_cases"] = stack.n_time();
  pre["nlat_input"] = input.nlat;
  pre["nlat"] = stack.nlat;
  pre["nlon"] = stack.nlon;
  pre["lat_first"] = stack.latitude(0);
  pre["lat_last"] = stack.latitude(stack.nlat - 1);
  pre["n_loadings"] = segments.total_length();
  pre["dropped_columns"] = model.dropped.size();
  ordered_json fields = ordered_json::array();
  for (const auto& f : stack.fields) fields.push_back({{"name", f.name}, {"units", f.units}});
  pre["fields"] = fields;
  r["preprocessing"] = pre;

  ordered_json segs = ordered_json::array();
  for (const auto& s : segments.segments()) {
    segs.push_back({{"field", s.field}, {"first", s.first_one_based()}, {"last", s.last_one_based()}});
  }
  r["segments"] = segs;
  r["spectrum"] = spectrum_json(model);
  r["scree"] = scree_json(model);

  ordered_json lsd;
  lsd["reference"] = 1.0 / std::sqrt(static_cast<double>(segments.total_length()));
  lsd["fields"] = ordered_json::array();
  for (const auto& s : segments.segments()) lsd["fields"].push_back(s.field);
  lsd["rows"] = ordered_json::array();
  for (Eigen::Index j = 0; j < model.n_components(); ++j) {
    const auto sd = segment_loading_sd(model.full_loadings(j), segments);
    lsd["rows"].push_back({{"eigenvector_index", j + 1}, {"sds", sd.sds}});
  }
  r["loading_sd"] = lsd;

  ordered_json cand;
  cand["pool_quantile"] = ranking.pool_quantile;
  cand["pool_threshold"] = ranking.pool_threshold;
  cand["law_fields"] = ranking.law_fields;
  cand["entries"] = ordered_json::array();
  for (const auto& c : ranking.entries) {
    cand["entries"].push_back({{"eigenvector_index", c.eigenvector_index + 1},
                               {"eigenvalue", c.eigenvalue},
                               {"segment_sds", c.segment_sds},
                               {"law_score", c.law_score}});
  }
  r["candidates"] = cand;

  Eigen::Index selected = ranking.entries.front().eigenvector_index;
  if (req.select) {
    if (*req.select < 1 || *req.select > model.n_components()) {
      throw InputError("--select " + std::to_string(*req.select) + " is out of range 1.." +
                       std::to_string(model.n_components()));
    }
    selected = *req.select - 1;
  }
  const Eigen::VectorXd loadings = model.full_loadings(selected);
  const auto sel_sd = segment_loading_sd(loadings, segments);
  ordered_json sel;
  sel["eigenvector_index"] = selected + 1;
  sel["eigenvalue"] = model.decomposition.eigenvalues(selected);
  sel["segment_sds"] = sel_sd.sds;
  double score = 0.0;
  for (const auto& f : ranking.law_fields) {
    score = std::max(score, sel_sd.sds[*segments.find(f)]);
  }
  sel["law_score"] = score;
  {
    IntegerizeOptions iopts;
    iopts.max_target = req.max_target;
    const IntegerizedLoadings il = integerize(loadings, iopts);
    sel["integerized"] = {{"pivot", il.pivot + 1},
                          {"pivot_name", table.variable_names()[static_cast<std::size_t>(il.pivot)]},
                          {"target", il.target},
                          {"scale", il.scale},
                          {"max_residual", il.max_residual}};
  }
  sel["loadings"] = vector_json(loadings);
  r["selected"] = sel;

  if (req.pair) {
    const BetaMap map = grid_beta_map(model, table, segments, stack.nlat, stack.nlon, selected,
                                      *req.pair, req.beta0);
    ordered_json beta;
    beta["pair"] = {map.field_x, map.field_y};
    beta["n_points"] = map.beta.size();
    beta["n_valid"] = map.n_valid();
    ordered_json reasons;
    for (auto reason : {BetaInvalidReason::near_zero_loading, BetaInvalidReason::zero_slope,
                        BetaInvalidReason::degenerate_moments}) {
      reasons[to_string(reason)] = std::count(map.reasons.begin(), map.reasons.end(), reason);
    }
    beta["invalid"] = reasons;
    std::vector<double> valid = map.valid_values();
    if (!valid.empty()) {
      double mean = 0.0;
      for (double b : valid) mean += b;
      mean /= static_cast<double>(valid.size());
      std::vector<double> sorted = valid;
      std::sort(sorted.begin(), sorted.end());
      beta["mean"] = mean;
      beta["median"] = quantile_sorted(sorted, 0.5);
      double ss = 0.0;
      for (double b : valid) ss += (b - mean) * (b - mean);
      beta["sd"] = valid.size() > 1 ? std::sqrt(ss / static_cast<double>(valid.size() - 1)) : 0.0;
    } else {
      beta["mean"] = nullptr;
      beta["median"] = nullptr;
      beta["sd"] = nullptr;
    }
    ordered_json values = ordered_json::array();
    for (Eigen::Index g = 0; g < map.beta.size(); ++g) {
      if (map.valid_mask[static_cast<std::size_t>(g)]) {
        values.push_back(map.beta(g));
      } else {
        values.push_back(nullptr);
      }
    }
    beta["values"] = values;
    ordered_json hist;
    hist["rule"] = req.bins ? "fixed" : "freedman-diaconis";
    hist["bins"] = ordered_json::array();
    for (const auto& b : histogram(valid, req.bins)) {
      hist["bins"].push_back({{"left", b.left}, {"right", b.right}, {"count", b.count}});
    }
    beta["histogram"] = hist;
    beta["theoretical"] = map.theoretical_beta ? ordered_json(*map.theoretical_beta) : ordered_json(nullptr);
    beta["t_test"] = map.summary ? t_test_json(*map.summary) : ordered_json(nullptr);
    r["beta"] = beta;
  }
  return r;
}

// ---------------------------------------------------------------------------
// bivariate demonstration

namespace {

ordered_json line_json(const Line<double>& l) {
  return {{"slope", l.slope}, {"intercept", l.intercept}};
}

ordered_json moments_json(const BivariateMoments<double>& m) {
  return {{"mu_x", m.mu_x}, {"mu_y", m.mu_y}, {"sigma_x", m.sigma_x}, {"sigma_y", m.sigma_y}, {"rho", m.rho}};
}

ordered_json lines_block(const BivariateMoments<double>& m, const std::pair<double, double>& axes) {
  const PcaLineSlopes<double> s = pca_slopes(m);
  const PcaLinesDemo<double> demo = pca_lines_demo(m);
  auto through_mean = [&](double slope) { return Line<double>{slope, m.mu_y - slope * m.mu_x}; };
  ordered_json out;
  out["moments"] = moments_json(m);
  out["A"] = s.A;
  out["a_plus"] = s.a_plus;
  out["a_minus"] = s.a_minus;
  out["lines"] = {{"pca_plus", line_json(demo.pca_plus)},
                  {"pca_minus", line_json(demo.pca_minus)},
                  {"regression", line_json(demo.regression)},
                  {"axis_major", line_json(through_mean(axes.first))},
                  {"axis_minor", line_json(through_mean(axes.second))}};
  out["beta_from_pca_slope"] = pca_slope_to_beta(s.a_plus, m.rho);
  out["beta_from_pca_slope_as_printed"] = pca_slope_to_beta(s.a_plus, m.rho, Radicand::as_printed);
  out["beta_regression"] = m.rho * m.sigma_y / m.sigma_x;
  return out;
}

}  // namespace

Report pca_lines_demo_report(std::uint64_t seed, Eigen::Index n) {
  const BivariateMoments<double> truth{0.0, 10.0, std::sqrt(2.0), std::sqrt(3.0), 0.8};
  const DataTable data = synth_bivariate_demo(seed, n);
  const auto x = data.values().col(0);
  const auto y = data.values().col(1);
  const auto sample = BivariateMoments<double>::from_samples(x, y);

  // principal axes of the sample covariance straight from the eigensolver
  const MomentMatrix cov = moment_matrix(data, MomentKind::covariance);
  const auto dec = eigh_jacobi(cov.matrix);
  auto slope_of = [&](Eigen::Index j) {
    return dec.eigenvectors(1, j) / dec.eigenvectors(0, j);
  };

  Report r;
  r["report"] = "lawpca pca-lines demo";
  r["format_version"] = kReportFormatVersion;
  r["mode"] = "pca-lines-demo";
  r["run"] = {{"seed", seed}, {"n", n}};
  r["parameters"] = {{"mu_x", 0.0}, {"mu_y", 10.0}, {"var_x", 2.0}, {"var_y", 3.0}, {"rho", 0.8}};
  r["theoretical"] = lines_block(truth, principal_axis_slopes(pca_slopes(truth), truth.rho));
  ordered_json s = lines_block(sample, {slope_of(0), slope_of(1)});
  s["beta_ols"] = regression_slope_direct(x, y);
  r["sample"] = s;
  ordered_json points = ordered_json::array();
  for (Eigen::Index i = 0; i < data.n_cases(); ++i) points.push_back({x(i), y(i)});
  r["points"] = points;
  return r;
}

// ---------------------------------------------------------------------------
// histogram, serialization, plot data

std::vector<HistogramBin> histogram(std::vector<double> values, std::optional<int> bins) {
  std::vector<HistogramBin> out;
  if (values.empty()) return out;
  if (bins && *bins < 1) throw InputError("histogram bin count must be positive");
  std::sort(values.begin(), values.end());
  const double lo = values.front();
  const double hi = values.back();
  const double range = hi - lo;
  const auto n = static_cast<double>(values.size());

  std::size_t count = 1;
  double width = range;
  if (range > 0.0) {
    if (bins) {
      count = static_cast<std::size_t>(*bins);
      width = range / static_cast<double>(count);
    } else {
      const double iqr = quantile_sorted(values, 0.75) - quantile_sorted(values, 0.25);
      const double fd = 2.0 * iqr * std::pow(n, -1.0 / 3.0);
      if (fd > 0.0) {
        const double raw = std::ceil(range / fd);
        if (raw > static_cast<double>(kMaxHistogramBins)) {
          count = kMaxHistogramBins;
          width = range / static_cast<double>(count);
        } else {
          count = std::max<std::size_t>(1, static_cast<std::size_t>(raw));
          width = fd;
        }
      }
    }
  }
  out.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i].left = lo + static_cast<double>(i) * width;
    out[i].right = i + 1 == count ? std::max(hi, lo + static_cast<double>(count) * width)
                                  : lo + static_cast<double>(i + 1) * width;
  }
  for (double v : values) {
    std::size_t k = width > 0.0 ? static_cast<std::size_t>((v - lo) / width) : 0;
    k = std::min(k, count - 1);
    ++out[k].count;
  }
  return out;
}

std::string dump_report(const Report& report) { return report.dump(2) + "\n"; }

Report load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open report " + path.string());
  try {
    return Report::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": not a valid report: " + e.what());
  }
}

PlotData parse_plot_data(const std::string& which) {
  if (which == "scree") return PlotData::scree;
  if (which == "loading-sd") return PlotData::loading_sd;
  if (which == "beta-hist") return PlotData::beta_hist;
  if (which == "pca-lines") return PlotData::pca_lines;
  throw InputError("unknown plot data '" + which + "' (scree, loading-sd, beta-hist, pca-lines)");
}

const char* plot_file_name(PlotData which) {
  switch (which) {
    case PlotData::scree: return "scree.csv";
    case PlotData::loading_sd: return "loading_sd.csv";
    case PlotData::beta_hist: return "beta_hist.csv";
    case PlotData::pca_lines: return "pca_lines.csv";
  }
  return "plot.csv";
}

namespace {

std::string num(const ordered_json& v) {
  if (v.is_number_integer()) return v.dump();
  return format_shortest(v.get<double>());
}

const ordered_json& require(const Report& r, std::initializer_list<const char*> path, const char* what) {
  const ordered_json* node = &r;
  for (const char* key : path) {
    if (!node->is_object() || !node->contains(key) || (*node)[key].is_null()) {
      throw InputError(std::string("report has no ") + what + " data");
    }
    node = &(*node)[key];
  }
  return *node;
}

}  // namespace

std::string plot_data_csv(const Report& report, PlotData which) {
  std::string out;
  try {
    switch (which) {
      case PlotData::scree: {
        out = "index,sqrt_eigenvalue\n";
        for (const auto& p : require(report, {"scree"}, "scree")) {
          out += num(p.at("index")) + "," + num(p.at("sqrt_eigenvalue")) + "\n";
        }
        break;
      }
      case PlotData::loading_sd: {
        const auto& lsd = require(report, {"loading_sd"}, "loading-sd");
        const auto& fields = lsd.at("fields");
        out = "eigenvector_index,field_name,loading_sd\n";
        for (const auto& row : lsd.at("rows")) {
          const auto& sds = row.at("sds");
          for (std::size_t f = 0; f < fields.size(); ++f) {
            out += num(row.at("eigenvector_index")) + "," + fields[f].get<std::string>() + "," +
                   num(sds.at(f)) + "\n";
          }
        }
        out += "0,equal_loading_reference," + num(lsd.at("reference")) + "\n";
        break;
      }
      case PlotData::beta_hist: {
        out = "bin_left,bin_right,count\n";
        for (const auto& b : require(report, {"beta", "histogram", "bins"}, "beta-hist")) {
          out += num(b.at("left")) + "," + num(b.at("right")) + "," + num(b.at("count")) + "\n";
        }
        break;
      }
      case PlotData::pca_lines: {
        out = "source,line,slope,intercept\n";
        for (const char* source : {"theoretical", "sample"}) {
          const auto& lines = require(report, {source, "lines"}, "pca-lines");
          for (const auto& [name, line] : lines.items()) {
            out += std::string(source) + "," + name + "," + num(line.at("slope")) + "," +
                   num(line.at("intercept")) + "\n";
          }
        }
        break;
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
  return out;
}

}  // namespace lawpca
