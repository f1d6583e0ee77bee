#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lawpca/data_table.hpp"
#include "lawpca/discovery.hpp"

namespace lawpca {

struct FieldDescriptor {
  std::string name;
  std::string units;

  bool operator==(const FieldDescriptor&) const = default;
};

/// Name of the flattening order written to meta.json.
inline constexpr const char* kFlatteningOrder = "field-major,lat-rows,lon-fastest";

/// Time x field x lat x lon values. Each row of `values` is one time step
/// already in flattened order: column = field * (nlat * nlon) + lat * nlon + lon.
/// Row `lat` sits at latitude lat0 + lat * dlat (dlat < 0 for north-to-south).
struct GriddedStack {
  std::vector<FieldDescriptor> fields;
  Eigen::Index nlat = 0;
  Eigen::Index nlon = 0;
  double lat0 = 0.0;
  double dlat = 1.0;
  double lon0 = 0.0;
  double dlon = 1.0;
  Eigen::MatrixXd values;  // n_time x (fields * nlat * nlon)
  std::vector<std::string> time_labels;

  Eigen::Index n_time() const { return values.rows(); }
  Eigen::Index n_fields() const { return static_cast<Eigen::Index>(fields.size()); }
  Eigen::Index points() const { return nlat * nlon; }
  double latitude(Eigen::Index row) const { return lat0 + static_cast<double>(row) * dlat; }

  Eigen::Index column(Eigen::Index field, Eigen::Index lat, Eigen::Index lon) const {
    return field * points() + lat * nlon + lon;
  }
  double& at(Eigen::Index t, Eigen::Index field, Eigen::Index lat, Eigen::Index lon) {
    return values(t, column(field, lat, lon));
  }
  double at(Eigen::Index t, Eigen::Index field, Eigen::Index lat, Eigen::Index lon) const {
    return values(t, column(field, lat, lon));
  }
  Eigen::Index field_index(const std::string& name) const;

  /// Throws InputError when shape, finiteness, or metadata are inconsistent.
  void validate() const;
};

/// Exact (bitwise for values) equality of data and metadata.
bool operator==(const GriddedStack& a, const GriddedStack& b);

/// Column names are "<field>[<lat>,<lon>]" with 0-based grid indices.
std::pair<DataTable, SegmentSpec> flatten_stack(const GriddedStack& stack);

/// Inverse of flatten_stack; `like` supplies the grid metadata.
GriddedStack unflatten(const DataTable& table, const GriddedStack& like);

/// out[t] = in[t] - in[t - lag]; drops the first `lag` steps.
GriddedStack difference_filter(const GriddedStack& stack, Eigen::Index lag);

/// Keeps latitude rows with lat_min <= lat <= lat_max (inclusive, 1e-9 deg slack).
GriddedStack crop_latitudes(const GriddedStack& stack, double lat_min, double lat_max);

/// T (1 + q / 0.622) / (1 + q), elementwise. T in kelvin, q in kg/kg.
template <typename DerivedT, typename DerivedQ>
auto virtual_temperature(const Eigen::ArrayBase<DerivedT>& temperature,
                         const Eigen::ArrayBase<DerivedQ>& specific_humidity) {
  using Scalar = typename DerivedT::Scalar;
  if (temperature.size() != specific_humidity.size()) {
    throw InputError("virtual_temperature: T and q sizes differ");
  }
  if (!(temperature > Scalar(0)).all()) {
    throw InputError("virtual_temperature: temperature must be positive kelvin");
  }
  if (!(specific_humidity >= Scalar(0)).all()) {
    throw InputError("virtual_temperature: specific humidity must be nonnegative");
  }
  return (temperature * (Scalar(1) + specific_humidity / Scalar(0.622)) /
          (Scalar(1) + specific_humidity))
      .eval();
}

/// Replaces the temperature and humidity fields of a stack with a single
/// virtual-temperature field (placed where the temperature field was).
GriddedStack with_virtual_temperature(const GriddedStack& stack, const std::string& temperature_field,
                                      const std::string& humidity_field,
                                      const std::string& output_field = "T_v");

/// Directory with meta.json and one headerless <field>.csv per field, each
/// n_time rows x (nlat * nlon) columns in lat-major, lon-fastest order.
void write_stack_dir(const GriddedStack& stack, const std::filesystem::path& dir);
GriddedStack read_stack_dir(const std::filesystem::path& dir);

}  // namespace lawpca
