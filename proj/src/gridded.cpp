#include "lawpca/gridded.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lawpca/error.hpp"
#include "lawpca/number_format.hpp"

namespace lawpca {

Eigen::Index GriddedStack::field_index(const std::string& name) const {
  for (std::size_t f = 0; f < fields.size(); ++f) {
    if (fields[f].name == name) return static_cast<Eigen::Index>(f);
  }
  throw InputError("stack has no field '" + name + "'");
}

void GriddedStack::validate() const {
  if (fields.empty()) throw InputError("stack has no fields");
  if (nlat < 1 || nlon < 1) throw InputError("stack grid must be at least 1 x 1");
  if (values.cols() != n_fields() * points()) {
    std::ostringstream msg;
    msg << "stack values have " << values.cols() << " columns, expected "
        << n_fields() * points();
    throw InputError(msg.str());
  }
  if (!values.allFinite()) throw InputError("stack values contain NaN or Inf");
  if (!time_labels.empty() && static_cast<Eigen::Index>(time_labels.size()) != n_time()) {
    throw InputError("stack time label count does not match n_time");
  }
  for (const auto& f : fields) {
    // names double as file names in the stack directory
    if (f.name.empty() || f.name == "." || f.name == ".." ||
        f.name.find_first_of("/\\,[]") != std::string::npos) {
      throw InputError("invalid field name '" + f.name + "'");
    }
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    for (std::size_t j = i + 1; j < fields.size(); ++j) {
      if (fields[i].name == fields[j].name) throw InputError("duplicate field '" + fields[i].name + "'");
    }
  }
}

bool operator==(const GriddedStack& a, const GriddedStack& b) {
  return a.fields == b.fields && a.nlat == b.nlat && a.nlon == b.nlon && a.lat0 == b.lat0 &&
         a.dlat == b.dlat && a.lon0 == b.lon0 && a.dlon == b.dlon &&
         a.time_labels == b.time_labels && a.values.rows() == b.values.rows() &&
         a.values.cols() == b.values.cols() && a.values == b.values;
}

std::pair<DataTable, SegmentSpec> flatten_stack(const GriddedStack& stack) {
  stack.validate();
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(stack.values.cols()));
  std::vector<std::string> field_names;
  for (const auto& f : stack.fields) {
    field_names.push_back(f.name);
    for (Eigen::Index i = 0; i < stack.nlat; ++i) {
      for (Eigen::Index j = 0; j < stack.nlon; ++j) {
        names.push_back(f.name + "[" + std::to_string(i) + "," + std::to_string(j) + "]");
      }
    }
  }
  return {DataTable(std::move(names), stack.values, {}, stack.time_labels),
          SegmentSpec::uniform(field_names, stack.points())};
}

GriddedStack unflatten(const DataTable& table, const GriddedStack& like) {
  if (table.n_variables() != like.n_fields() * like.points()) {
    throw InputError("unflatten: column count does not match the grid");
  }
  GriddedStack out = like;
  out.values = table.values();
  out.time_labels = table.case_labels();
  out.validate();
  return out;
}

GriddedStack difference_filter(const GriddedStack& stack, Eigen::Index lag) {
  if (lag < 1) throw InputError("difference filter lag must be positive");
  if (stack.n_time() <= lag) {
    std::ostringstream msg;
    msg << "difference filter: " << stack.n_time() << " time steps do not exceed lag " << lag;
    throw InputError(msg.str());
  }
  GriddedStack out = stack;
  const Eigen::Index n = stack.n_time() - lag;
  out.values = stack.values.bottomRows(n) - stack.values.topRows(n);
  if (!stack.time_labels.empty()) {
    out.time_labels.assign(stack.time_labels.begin() + lag, stack.time_labels.end());
  }
  return out;
}

GriddedStack crop_latitudes(const GriddedStack& stack, double lat_min, double lat_max) {
  if (lat_min > lat_max) throw InputError("latitude crop: min exceeds max");
  constexpr double kSlack = 1e-9;
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < stack.nlat; ++i) {
    const double lat = stack.latitude(i);
    if (lat >= lat_min - kSlack && lat <= lat_max + kSlack) rows.push_back(i);
  }
  if (rows.empty()) {
    std::ostringstream msg;
    msg << "latitude crop [" << lat_min << ", " << lat_max << "] does not intersect the grid";
    throw InputError(msg.str());
  }
  // rows are consecutive because latitude is monotone in the row index
  GriddedStack out = stack;
  out.nlat = static_cast<Eigen::Index>(rows.size());
  out.lat0 = stack.latitude(rows.front());
  out.values.resize(stack.n_time(), stack.n_fields() * out.points());
  for (Eigen::Index f = 0; f < stack.n_fields(); ++f) {
    out.values.middleCols(f * out.points(), out.points()) =
        stack.values.middleCols(stack.column(f, rows.front(), 0), out.points());
  }
  return out;
}

GriddedStack with_virtual_temperature(const GriddedStack& stack, const std::string& temperature_field,
                                      const std::string& humidity_field,
                                      const std::string& output_field) {
  const Eigen::Index ft = stack.field_index(temperature_field);
  const Eigen::Index fq = stack.field_index(humidity_field);
  const Eigen::Index pts = stack.points();
  GriddedStack out = stack;
  out.fields.clear();
  std::vector<Eigen::Index> sources;
  for (Eigen::Index f = 0; f < stack.n_fields(); ++f) {
    if (f == fq) continue;
    if (f == ft) {
      out.fields.push_back({output_field, "K"});
    } else {
      out.fields.push_back(stack.fields[static_cast<std::size_t>(f)]);
    }
    sources.push_back(f);
  }
  out.values.resize(stack.n_time(), static_cast<Eigen::Index>(sources.size()) * pts);
  for (std::size_t k = 0; k < sources.size(); ++k) {
    const Eigen::Index f = sources[k];
    auto dst = out.values.middleCols(static_cast<Eigen::Index>(k) * pts, pts);
    if (f == ft) {
      dst = virtual_temperature(stack.values.middleCols(ft * pts, pts).array(),
                                stack.values.middleCols(fq * pts, pts).array())
                .matrix();
    } else {
      dst = stack.values.middleCols(f * pts, pts);
    }
  }
  out.validate();
  return out;
}

void write_stack_dir(const GriddedStack& stack, const std::filesystem::path& dir) {
  stack.validate();
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json meta;
  meta["fields"] = nlohmann::ordered_json::array();
  for (const auto& f : stack.fields) meta["fields"].push_back({{"name", f.name}, {"units", f.units}});
  meta["nlat"] = stack.nlat;
  meta["nlon"] = stack.nlon;
  meta["lat0"] = stack.lat0;
  meta["dlat"] = stack.dlat;
  meta["lon0"] = stack.lon0;
  meta["dlon"] = stack.dlon;
  meta["n_time"] = stack.n_time();
  meta["flattening_order"] = kFlatteningOrder;
  if (!stack.time_labels.empty()) meta["time_labels"] = stack.time_labels;
  {
    std::ofstream out(dir / "meta.json");
    if (!out) throw InputError("cannot write " + (dir / "meta.json").string());
    out << meta.dump(2) << '\n';
  }
  const Eigen::Index pts = stack.points();
  for (Eigen::Index f = 0; f < stack.n_fields(); ++f) {
    const auto path = dir / (stack.fields[static_cast<std::size_t>(f)].name + ".csv");
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    std::string line;
    for (Eigen::Index t = 0; t < stack.n_time(); ++t) {
      line.clear();
      for (Eigen::Index g = 0; g < pts; ++g) {
        if (g > 0) line += ',';
        append_shortest(line, stack.values(t, f * pts + g));
      }
      line += '\n';
      out << line;
    }
  }
}

namespace {

void read_field_csv(const std::filesystem::path& path, Eigen::Index n_time, Eigen::Index pts,
                    Eigen::Ref<Eigen::MatrixXd> dst) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::string line;
  Eigen::Index row = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (row >= n_time) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": more rows than n_time");
    }
    Eigen::Index col = 0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p <= end) {
      const char* comma = std::find(p, end, ',');
      while (p < comma && *p == ' ') ++p;
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(p, comma, v);
      const char* tail = ptr;
      while (tail < comma && *tail == ' ') ++tail;
      if (ec != std::errc() || tail != comma) {
        throw InputError(path.string() + ":" + std::to_string(line_no) + ": cannot parse '" +
                         std::string(p, comma) + "' as a number");
      }
      if (col >= pts) {
        throw InputError(path.string() + ":" + std::to_string(line_no) + ": more than " +
                         std::to_string(pts) + " values");
      }
      dst(row, col++) = v;
      p = comma + 1;
    }
    if (col != pts) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(pts) + " values, got " + std::to_string(col));
    }
    ++row;
  }
  if (row != n_time) {
    throw InputError(path.string() + ": expected " + std::to_string(n_time) + " rows, got " +
                     std::to_string(row));
  }
}

}  // namespace

GriddedStack read_stack_dir(const std::filesystem::path& dir) {
  const auto meta_path = dir / "meta.json";
  std::ifstream in(meta_path);
  if (!in) throw InputError("cannot open " + meta_path.string());
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(meta_path.string() + ": " + e.what());
  }
  GriddedStack stack;
  Eigen::Index n_time = 0;
  try {
    for (const auto& f : meta.at("fields")) {
      stack.fields.push_back({f.at("name").get<std::string>(), f.value("units", std::string{})});
    }
    stack.nlat = meta.at("nlat").get<Eigen::Index>();
    stack.nlon = meta.at("nlon").get<Eigen::Index>();
    stack.lat0 = meta.at("lat0").get<double>();
    stack.dlat = meta.at("dlat").get<double>();
    stack.lon0 = meta.at("lon0").get<double>();
    stack.dlon = meta.at("dlon").get<double>();
    n_time = meta.at("n_time").get<Eigen::Index>();
    const auto order = meta.value("flattening_order", std::string(kFlatteningOrder));
    if (order != kFlatteningOrder) {
      throw InputError(meta_path.string() + ": unsupported flattening order '" + order + "'");
    }
    if (meta.contains("time_labels")) {
      stack.time_labels = meta.at("time_labels").get<std::vector<std::string>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(meta_path.string() + ": " + e.what());
  }
  if (stack.fields.empty() || stack.nlat < 1 || stack.nlon < 1 || n_time < 1) {
    throw InputError(meta_path.string() + ": fields, grid, and n_time must be non-empty");
  }
  const Eigen::Index pts = stack.points();
  stack.values.resize(n_time, stack.n_fields() * pts);
  for (Eigen::Index f = 0; f < stack.n_fields(); ++f) {
    read_field_csv(dir / (stack.fields[static_cast<std::size_t>(f)].name + ".csv"), n_time, pts,
                   stack.values.middleCols(f * pts, pts));
  }
  stack.validate();
  return stack;
}

}  // namespace lawpca
