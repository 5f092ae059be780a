#include "subgauss/special_fn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "subgauss/errors.hpp"

namespace subgauss {
namespace {

// ln((n-1)!) for n = 1..20, computed from exactly representable factorials.
const std::array<double, 21>& integer_log_gamma_table() {
  static const std::array<double, 21> table = [] {
    std::array<double, 21> t{};
    double factorial = 1.0;
    t[0] = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= 20; ++n) {
      t[n] = std::log(factorial);
      factorial *= n;
    }
    return t;
  }();
  return table;
}

// Stirling series ln Γ(x) - [(x - 1/2) ln x - x + ln(2π)/2] with Bernoulli
// coefficients B_{2m}/(2m(2m-1)); truncation error < 1e-17 for x >= 10.
double stirling_correction(double x) {
  static constexpr std::array<double, 8> kCoeff = {
      1.0 / 12.0,         -1.0 / 360.0,          1.0 / 1260.0,
      -1.0 / 1680.0,      1.0 / 1188.0,          -691.0 / 360360.0,
      1.0 / 156.0,        -3617.0 / 122400.0};
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double sum = 0.0;
  double power = inv;
  for (double c : kCoeff) {
    sum += c * power;
    power *= inv2;
  }
  return sum;
}

}  // namespace

double log_gamma(double x) {
  require(x > 0.0 && std::isfinite(x), ErrorCode::kDomain,
          "log_gamma: argument must be a finite positive number");
  if (x <= 20.0 && x == std::floor(x)) {
    return integer_log_gamma_table()[static_cast<int>(x)];
  }
  constexpr double kHalfLog2Pi = 0.91893853320467274178;
  if (x >= 10.0) {
    return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + stirling_correction(x);
  }
  // Shift up to z >= 10: ln Γ(x) = ln Γ(z) - ln(x (x+1) ... (z-1)).
  double z = x;
  double product = 1.0;
  double log_product = 0.0;
  while (z < 10.0) {
    product *= z;
    if (product > 1e280 || product < 1e-280) {
      log_product += std::log(product);
      product = 1.0;
    }
    z += 1.0;
  }
  log_product += std::log(product);
  return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + stirling_correction(z) -
         log_product;
}

double log_beta_fn(double a, double b) {
  require(a > 0.0 && b > 0.0, ErrorCode::kDomain,
          "beta_fn: arguments must be positive");
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double beta_fn(double a, double b) { return std::exp(log_beta_fn(a, b)); }

double normal_upper_tail(double x) {
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double log_sum_exp(std::span<const double> values) {
  require(!values.empty(), ErrorCode::kEmptyInput,
          "log_sum_exp: empty list");
  const double peak = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(peak)) return peak;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - peak);
  return peak + std::log(sum);
}

}  // namespace subgauss
