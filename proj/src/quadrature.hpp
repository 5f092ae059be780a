#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "subgauss/errors.hpp"

namespace subgauss::detail {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

// Gauss-Kronrod 7/15 nodes on [-1, 1]; x[7] is the centre.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
QuadratureResult gauss_kronrod_15(F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_centre = f(centre);
  double kronrod = f_centre * kKronrodWeights[7];
  double gauss = f_centre * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

/// Globally adaptive G7K15 over [a, b] with the given initial breakpoints.
/// Converges when the summed error estimate is below
/// max(abs_tol, rel_tol * |value|).
template <class F>
QuadratureResult integrate_adaptive(F&& f, std::vector<double> breakpoints,
                                    double abs_tol, double rel_tol,
                                    int max_panels = 20000) {
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                    breakpoints.end());
  require(breakpoints.size() >= 2, ErrorCode::kDomain,
          "integrate_adaptive: need at least one panel");

  struct Panel {
    double a, b;
    QuadratureResult r;
    bool operator<(const Panel& other) const { return r.error < other.r.error; }
  };
  std::priority_queue<Panel> panels;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const auto r = gauss_kronrod_15(f, breakpoints[i], breakpoints[i + 1]);
    panels.push({breakpoints[i], breakpoints[i + 1], r});
    value += r.value;
    error += r.error;
  }
  int count = static_cast<int>(panels.size());
  while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (count >= max_panels) {
      fail(ErrorCode::kNumericFailure, "integrate_adaptive: panel budget exhausted");
    }
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = gauss_kronrod_15(f, worst.a, mid);
    const auto right = gauss_kronrod_15(f, mid, worst.b);
    value += left.value + right.value - worst.r.value;
    error += left.error + right.error - worst.r.error;
    panels.push({worst.a, mid, left});
    panels.push({mid, worst.b, right});
    ++count;
    if (!std::isfinite(value)) {
      fail(ErrorCode::kNumericFailure, "integrate_adaptive: non-finite integrand");
    }
  }
  // Re-sum to shed accumulated cancellation in the running totals.
  value = 0.0;
  error = 0.0;
  while (!panels.empty()) {
    value += panels.top().r.value;
    error += panels.top().r.error;
    panels.pop();
  }
  return {value, error};
}

}  // namespace subgauss::detail
