#pragma once

#include <cstdint>

#include "lawpca/data_table.hpp"
#include "lawpca/gridded.hpp"

namespace lawpca {

/// Planetary orbits of the eight planets: a, b (1e10 m), m (1e24 kg),
/// M (kg, the solar mass on every row), T (s). Case labels are planet names.
DataTable solar_dataset();

inline constexpr double kSolarMass = 1.986616e30;        // kg
inline constexpr double kGravitationalConstant = 6.674e-11;  // m^3 kg^-1 s^-2
inline constexpr double kDryAirGasConstant = 287.0;      // m^2 s^-2 K^-1
inline constexpr double kGravity = 9.8;                  // m s^-2
inline constexpr double kHypsometricBeta = 15.5397;      // (R/g) ln(850/500), m/K

struct SynthSpec {
  Eigen::Index nlat = 8;
  Eigen::Index nlon = 24;
  Eigen::Index n_time = 120;
  double beta_true = kHypsometricBeta;
  double noise_sd_fraction = 0.05;
  int smoothing_radius = 1;  // grid cells
  std::uint64_t seed = 1;
  double seasonal_amplitude = 0.0;  // K; additive 12-periodic component, 0 disables
  double lat0 = 77.5;
  double dlat = -5.0;
  double lon0 = 0.0;
  double dlon = 15.0;
  double base_temperature = 255.0;  // K, mean T_v
};

/// Fields T_v (K), H (m), V (m/s) on an nlat x nlon grid. T_v and V are
/// unit-variance box-smoothed noise (latitude clamped, longitude periodic);
/// H = beta_true * T_v + white noise of SD noise_sd_fraction * beta_true.
GriddedStack synth_hypsometric(const SynthSpec& spec);

/// 200 draws with mu = (0, 10), variances (2, 3), rho = 0.8.
DataTable synth_bivariate_demo(std::uint64_t seed, Eigen::Index n = 200);

}  // namespace lawpca
