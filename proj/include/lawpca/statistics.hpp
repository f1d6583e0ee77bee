#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "lawpca/data_table.hpp"

namespace lawpca {

/// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

/// Student t CDF with `df` degrees of freedom. F(0) is exactly 0.5.
double student_t_cdf(double t, double df);

/// Inverse of student_t_cdf by bisection; `p` in (0, 1).
double student_t_quantile(double p, double df);

struct ConfidenceInterval {
  double low = 0.0;
  double high = 0.0;
};

struct TTestResult {
  double t_statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value_two_sided = 1.0;
  ConfidenceInterval ci95;
  double sample_mean = 0.0;
  double sample_sd = 0.0;
};

/// Two-sided one-sample t-test of mean == mu0. Throws InputError for fewer
/// than two samples or zero sample SD.
TTestResult t_test_one_sample(std::span<const double> samples, double mu0);

/// mt19937_64 plus Box-Muller. Uniforms take the top 53 bits of each draw,
/// so the stream is identical on every standard library.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // (0, 1)
  double normal();   // N(0, 1)

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

struct BivariateNormalParams {
  double mu_x = 0.0;
  double mu_y = 0.0;
  double var_x = 1.0;
  double var_y = 1.0;
  double rho = 0.0;
};

/// n draws (x, y) via unit normals and the 2x2 Cholesky factor of the
/// covariance. Deterministic per seed.
DataTable sample_gaussian_pairs(Eigen::Index n, const BivariateNormalParams& params,
                                std::uint64_t seed);

/// Type-7 (linear interpolation) sample quantile; `sorted` ascending.
double quantile_sorted(std::span<const double> sorted, double q);

}  // namespace lawpca
