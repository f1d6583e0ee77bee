#include "lawpca/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lawpca/datagen.hpp"
#include "lawpca/error.hpp"
#include "lawpca/report.hpp"
#include "lawpca/tabular_csv.hpp"

namespace lawpca {

namespace {

MomentKind parse_kind(const std::string& text) {
  if (text == "cov" || text == "covariance") return MomentKind::covariance;
  if (text == "corr" || text == "correlation") return MomentKind::correlation;
  throw InputError("--kind must be cov or corr, got '" + text + "'");
}

ConstantColumnPolicy parse_policy(const std::string& text) {
  if (text == "error") return ConstantColumnPolicy::error;
  if (text == "drop") return ConstantColumnPolicy::drop;
  throw InputError("--constant-policy must be error or drop, got '" + text + "'");
}

std::pair<std::string, std::string> split_pair(const std::string& text, const char* flag) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw InputError(std::string(flag) + " expects two comma-separated values, got '" + text + "'");
  }
  std::string a = text.substr(0, comma);
  std::string b = text.substr(comma + 1);
  if (a.empty() || b.empty()) throw InputError(std::string(flag) + ": empty entry in '" + text + "'");
  return {a, b};
}

double to_double(const std::string& text, const char* flag) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError(std::string(flag) + ": '" + text + "' is not a number");
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw InputError("cannot write " + out_path);
  f << text;
  if (!f) throw InputError("write failed for " + out_path);
}

struct TabularArgs {
  std::string input, builtin, kind = "cov", policy = "error", pivot = "first", out;
  bool log_si = false;
  double pool = 0.25;
  std::optional<int> pivot_target, select;
  int max_target = 6;
};

struct GriddedArgs {
  std::string dir, pair, crop, kind = "corr", policy = "drop", out;
  std::vector<std::string> law_fields;
  double pool = 0.25;
  std::optional<double> beta0;
  long lag = 12;
  std::optional<int> select, bins;
  int max_target = 6;
};

struct PlotArgs {
  std::string report, which, out_dir = ".";
};

struct SynthArgs {
  std::string out;
  SynthSpec spec;
  std::uint64_t seed = 1;
  long n = 200;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discover constant linear combinations (laws) in data via low-variance principal components",
               "lawpca"};
  app.require_subcommand(1);

  auto* discover = app.add_subcommand("discover", "Run a discovery pipeline and write a JSON report");
  discover->require_subcommand(1);

  TabularArgs ta;
  auto* tab = discover->add_subcommand("tabular", "PCA law discovery on a CSV table");
  tab->add_option("input", ta.input, "CSV file: header row, optional '#scale:' line, data rows");
  tab->add_option("--builtin", ta.builtin, "Use a bundled dataset instead of a file (solar)");
  tab->add_flag("--log-si", ta.log_si, "Multiply by unit scales and take natural logs first");
  tab->add_option("--kind", ta.kind, "cov or corr")->capture_default_str();
  tab->add_option("--pool", ta.pool, "Candidate pool quantile of the nonzero eigenvalues")->capture_default_str();
  tab->add_option("--pivot", ta.pivot, "Integerization pivot: first, auto, a variable name, or column number")
      ->capture_default_str();
  tab->add_option("--pivot-target", ta.pivot_target, "Fix the pivot's integer instead of searching");
  tab->add_option("--max-target", ta.max_target, "Search pivot integers 1..N")->capture_default_str();
  tab->add_option("--select", ta.select, "Report this eigenvector (1-based) as the selected law");
  tab->add_option("--constant-policy", ta.policy, "error or drop constant columns (correlation only)")
      ->capture_default_str();
  tab->add_option("--out", ta.out, "Write the report here instead of stdout");

  GriddedArgs ga;
  auto* grid = discover->add_subcommand("gridded", "S-mode PCA law discovery on a gridded stack directory");
  grid->add_option("stack_dir", ga.dir, "Directory with meta.json and one <field>.csv per field")->required();
  grid->add_option("--law-fields", ga.law_fields, "Fields whose loading SD ranks candidates (default: all)")
      ->delimiter(',');
  grid->add_option("--pool", ga.pool, "Candidate pool quantile of the nonzero eigenvalues")->capture_default_str();
  grid->add_option("--pair", ga.pair, "x,y fields for the per-grid-point coefficient map");
  grid->add_option("--beta0", ga.beta0, "Theoretical coefficient for the t-test");
  grid->add_option("--lag", ga.lag, "Difference lag in time steps; 0 skips the filter")->capture_default_str();
  grid->add_option("--crop", ga.crop, "latmin,latmax inclusive");
  grid->add_option("--kind", ga.kind, "cov or corr")->capture_default_str();
  grid->add_option("--constant-policy", ga.policy, "error or drop constant columns")->capture_default_str();
  grid->add_option("--select", ga.select, "Use this eigenvector (1-based) instead of the top candidate");
  grid->add_option("--bins", ga.bins, "Histogram bin count (default Freedman-Diaconis)");
  grid->add_option("--max-target", ga.max_target, "Search pivot integers 1..N")->capture_default_str();
  grid->add_option("--out", ga.out, "Write the report here instead of stdout");

  PlotArgs pa;
  auto* plot = app.add_subcommand("emit-plotdata", "Write the CSV data behind one figure from a report");
  plot->add_option("report", pa.report, "Report JSON written by discover or demo")->required();
  plot->add_option("--which", pa.which, "scree, loading-sd, beta-hist, or pca-lines")->required();
  plot->add_option("--out-dir", pa.out_dir, "Directory for the CSV file")->capture_default_str();

  auto* synth = app.add_subcommand("synth", "Write synthetic or bundled datasets");
  synth->require_subcommand(1);
  SynthArgs sh;
  auto* hyps = synth->add_subcommand("hypsometric", "Synthetic T_v/H/V gridded stack");
  hyps->add_option("--out", sh.out, "Output stack directory")->required();
  hyps->add_option("--seed", sh.spec.seed)->capture_default_str();
  hyps->add_option("--nlat", sh.spec.nlat)->capture_default_str();
  hyps->add_option("--nlon", sh.spec.nlon)->capture_default_str();
  hyps->add_option("--n-time", sh.spec.n_time)->capture_default_str();
  hyps->add_option("--noise", sh.spec.noise_sd_fraction, "Noise SD as a fraction of the signal SD")
      ->capture_default_str();
  hyps->add_option("--beta", sh.spec.beta_true, "True thickness coefficient")->capture_default_str();
  hyps->add_option("--smoothing", sh.spec.smoothing_radius, "Noise box-smoothing radius in cells")
      ->capture_default_str();
  hyps->add_option("--seasonal", sh.spec.seasonal_amplitude, "Amplitude of a 12-periodic component")
      ->capture_default_str();
  hyps->add_option("--lat0", sh.spec.lat0)->capture_default_str();
  hyps->add_option("--dlat", sh.spec.dlat)->capture_default_str();

  SynthArgs ss;
  auto* solar = synth->add_subcommand("solar", "The bundled planetary table as CSV");
  solar->add_option("--out", ss.out, "Output CSV (default stdout)");

  SynthArgs sb;
  auto* biv = synth->add_subcommand("bivariate", "Bivariate normal sample (x, y)");
  biv->add_option("--seed", sb.seed)->capture_default_str();
  biv->add_option("--n", sb.n)->capture_default_str();
  biv->add_option("--out", sb.out, "Output CSV (default stdout)");

  auto* demo = app.add_subcommand("demo", "Demonstrations");
  demo->require_subcommand(1);
  SynthArgs sd;
  auto* lines = demo->add_subcommand("pca-lines", "PCA lines vs the regression line on a bivariate sample");
  lines->add_option("--seed", sd.seed)->capture_default_str();
  lines->add_option("--n", sd.n)->capture_default_str();
  lines->add_option("--out", sd.out, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (tab->parsed()) {
      TabularRequest req;
      if (!ta.input.empty()) req.input = ta.input;
      req.builtin = ta.builtin;
      req.log_si = ta.log_si;
      req.kind = parse_kind(ta.kind);
      req.constant_columns = parse_policy(ta.policy);
      req.pool = ta.pool;
      req.pivot = PivotRule::parse(ta.pivot);
      req.pivot_target = ta.pivot_target;
      req.max_target = ta.max_target;
      req.select = ta.select;
      emit(dump_report(discover_tabular(req)), ta.out, out);
    } else if (grid->parsed()) {
      GriddedRequest req;
      req.stack_dir = ga.dir;
      req.law_fields = ga.law_fields;
      req.pool = ga.pool;
      if (!ga.pair.empty()) req.pair = split_pair(ga.pair, "--pair");
      req.beta0 = ga.beta0;
      req.lag = ga.lag;
      if (!ga.crop.empty()) {
        const auto [a, b] = split_pair(ga.crop, "--crop");
        req.crop = std::make_pair(to_double(a, "--crop"), to_double(b, "--crop"));
      }
      req.kind = parse_kind(ga.kind);
      req.constant_columns = parse_policy(ga.policy);
      req.select = ga.select;
      req.bins = ga.bins;
      req.max_target = ga.max_target;
      emit(dump_report(discover_gridded(req)), ga.out, out);
    } else if (plot->parsed()) {
      const PlotData which = parse_plot_data(pa.which);
      const Report report = load_report(pa.report);
      const std::string csv = plot_data_csv(report, which);
      std::filesystem::create_directories(pa.out_dir);
      emit(csv, (std::filesystem::path(pa.out_dir) / plot_file_name(which)).string(), out);
    } else if (hyps->parsed()) {
      write_stack_dir(synth_hypsometric(sh.spec), sh.out);
    } else if (solar->parsed()) {
      std::ostringstream csv;
      write_tabular_csv(solar_dataset(), csv);
      emit(csv.str(), ss.out, out);
    } else if (biv->parsed()) {
      std::ostringstream csv;
      write_tabular_csv(synth_bivariate_demo(sb.seed, sb.n), csv);
      emit(csv.str(), sb.out, out);
    } else if (lines->parsed()) {
      emit(dump_report(pca_lines_demo_report(sd.seed, sd.n)), sd.out, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace lawpca
