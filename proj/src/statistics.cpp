#include "lawpca/statistics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lawpca/error.hpp"

namespace lawpca {

namespace {

// Continued fraction for I_x(a, b), valid for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw NumericalError("incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw InputError("incomplete beta: a and b must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw InputError("incomplete beta: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) throw InputError("t distribution: degrees of freedom must be positive");
  if (std::isnan(t)) throw InputError("t distribution: t is NaN");
  if (t == 0.0) return 0.5;
  if (std::isinf(t)) return t > 0.0 ? 1.0 : 0.0;
  const double x = df / (df + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, x);
  return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, double df) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("t quantile: p must lie in (0, 1)");
  if (p == 0.5) return 0.0;
  if (p < 0.5) return -student_t_quantile(1.0 - p, df);
  double lo = 0.0;
  double hi = 1.0;
  while (student_t_cdf(hi, df) < p) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw NumericalError("t quantile: bracket search overflowed");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_cdf(mid, df) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

TTestResult t_test_one_sample(std::span<const double> samples, double mu0) {
  const std::size_t n = samples.size();
  if (n < 2) throw InputError("t-test needs at least 2 samples");
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sd > 0.0)) throw InputError("t-test: degenerate sample (zero standard deviation)");

  TTestResult r;
  r.sample_mean = mean;
  r.sample_sd = sd;
  r.degrees_of_freedom = static_cast<int>(n - 1);
  const double se = sd / std::sqrt(static_cast<double>(n));
  r.t_statistic = (mean - mu0) / se;
  const double df = static_cast<double>(r.degrees_of_freedom);
  if (r.t_statistic == 0.0) {
    r.p_value_two_sided = 1.0;
  } else {
    r.p_value_two_sided = std::min(1.0, 2.0 * student_t_cdf(-std::abs(r.t_statistic), df));
  }
  const double q = student_t_quantile(0.975, df);
  r.ci95 = {mean - q * se, mean + q * se};
  return r;
}

double NormalStream::uniform() {
  // (k + 0.5) / 2^53 never hits 0 or 1
  const std::uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double NormalStream::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

DataTable sample_gaussian_pairs(Eigen::Index n, const BivariateNormalParams& params,
                                std::uint64_t seed) {
  if (n < 1) throw InputError("sample_gaussian_pairs: n must be positive");
  if (!(params.var_x > 0.0) || !(params.var_y > 0.0)) {
    throw InputError("sample_gaussian_pairs: variances must be positive");
  }
  if (!(std::abs(params.rho) < 1.0)) {
    throw InputError("sample_gaussian_pairs: |rho| must be below 1");
  }
  const double sx = std::sqrt(params.var_x);
  const double sy = std::sqrt(params.var_y);
  const double tail = std::sqrt(1.0 - params.rho * params.rho);
  NormalStream rng(seed);
  Eigen::MatrixXd values(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    values(i, 0) = params.mu_x + sx * z1;
    values(i, 1) = params.mu_y + sy * (params.rho * z1 + tail * z2);
  }
  return DataTable({"x", "y"}, std::move(values));
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw InputError("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw InputError("quantile level must lie in [0, 1]");
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace lawpca
