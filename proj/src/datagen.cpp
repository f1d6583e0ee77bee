#include "lawpca/datagen.hpp"

#include <cmath>
#include <numbers>

#include "lawpca/error.hpp"
#include "lawpca/statistics.hpp"

namespace lawpca {

DataTable solar_dataset() {
  Eigen::MatrixXd v(8, 5);
  // clang-format off
  v << 5.852857, 5.727818, 0.3244425, kSolarMass, 7605382,
       10.81012, 10.80988, 4.861260,  kSolarMass, 19407924,
       14.95104, 14.94896, 5.975000,  kSolarMass, 31557600,
       22.82995, 22.73016, 0.6387275, kSolarMass, 59359846,
       77.82562, 77.73441, 1902.141,  kSolarMass, 374336251,
       142.7208, 142.4993, 569.4175,  kSolarMass, 929623781,
       287.0700, 286.7501, 87.11550,  kSolarMass, 2651311764,
       449.5683, 449.5517, 103.1285,  kSolarMass, 5200313789;
  // clang-format on
  return DataTable({"a", "b", "m", "M", "T"}, std::move(v), {1e10, 1e10, 1e24, 1.0, 1.0},
                   {"Mercury", "Venus", "Earth", "Mars", "Jupiter", "Saturn", "Uranus", "Neptune"});
}

namespace {

// Unit-variance spatially correlated field: box sum of iid normals divided by
// sqrt(cell count). Latitude is clamped at the edges, longitude wraps.
Eigen::VectorXd smoothed_field(NormalStream& rng, Eigen::Index nlat, Eigen::Index nlon, int radius) {
  Eigen::MatrixXd white(nlat, nlon);
  for (Eigen::Index i = 0; i < nlat; ++i) {
    for (Eigen::Index j = 0; j < nlon; ++j) white(i, j) = rng.normal();
  }
  Eigen::VectorXd out(nlat * nlon);
  for (Eigen::Index i = 0; i < nlat; ++i) {
    for (Eigen::Index j = 0; j < nlon; ++j) {
      double sum = 0.0;
      int count = 0;
      for (int di = -radius; di <= radius; ++di) {
        const Eigen::Index ii = i + di;
        if (ii < 0 || ii >= nlat) continue;
        for (int dj = -radius; dj <= radius; ++dj) {
          const Eigen::Index jj = ((j + dj) % nlon + nlon) % nlon;
          sum += white(ii, jj);
          ++count;
        }
      }
      out(i * nlon + j) = sum / std::sqrt(static_cast<double>(count));
    }
  }
  return out;
}

}  // namespace

GriddedStack synth_hypsometric(const SynthSpec& spec) {
  if (spec.nlat < 1 || spec.nlon < 1) throw InputError("synthetic grid must be at least 1 x 1");
  if (spec.n_time < 1) throw InputError("synthetic stack needs at least one time step");
  if (!(spec.noise_sd_fraction >= 0.0 && spec.noise_sd_fraction <= 1.0)) {
    throw InputError("noise_sd_fraction must lie in [0, 1]");
  }
  if (spec.smoothing_radius < 0) throw InputError("smoothing radius must be nonnegative");

  GriddedStack stack;
  stack.fields = {{"T_v", "K"}, {"H", "m"}, {"V", "m/s"}};
  stack.nlat = spec.nlat;
  stack.nlon = spec.nlon;
  stack.lat0 = spec.lat0;
  stack.dlat = spec.dlat;
  stack.lon0 = spec.lon0;
  stack.dlon = spec.dlon;
  const Eigen::Index pts = stack.points();
  stack.values.resize(spec.n_time, 3 * pts);

  // separate streams keep each field reproducible when another one changes
  NormalStream t_rng(spec.seed);
  NormalStream h_rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  NormalStream v_rng(spec.seed ^ 0xbf58476d1ce4e5b9ULL);
  const double noise_sd = spec.noise_sd_fraction * spec.beta_true;
  for (Eigen::Index t = 0; t < spec.n_time; ++t) {
    const double season =
        spec.seasonal_amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(t % 12) / 12.0);
    Eigen::VectorXd tv = smoothed_field(t_rng, spec.nlat, spec.nlon, spec.smoothing_radius);
    tv.array() += spec.base_temperature + season;
    stack.values.row(t).segment(0, pts) = tv.transpose();
    for (Eigen::Index g = 0; g < pts; ++g) {
      const double eps = noise_sd > 0.0 ? noise_sd * h_rng.normal() : 0.0;
      stack.values(t, pts + g) = spec.beta_true * tv(g) + eps;
    }
    stack.values.row(t).segment(2 * pts, pts) =
        smoothed_field(v_rng, spec.nlat, spec.nlon, spec.smoothing_radius).transpose();
  }
  return stack;
}

DataTable synth_bivariate_demo(std::uint64_t seed, Eigen::Index n) {
  return sample_gaussian_pairs(n, {0.0, 10.0, 2.0, 3.0, 0.8}, seed);
}

}  // namespace lawpca
