#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "subgauss/errors.hpp"

namespace subgauss {

struct ScalarOptimum {
  double arg = 0.0;
  double value = 0.0;
};

/// `count` points spaced geometrically on [lo, hi], endpoints included.
inline std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = lo * std::exp(step * static_cast<double>(i));
  }
  grid.back() = hi;
  return grid;
}

/// Golden-section search for a maximum of a unimodal `f` on [lo, hi].
/// Stops when the bracket is narrower than x_tol * (1 + |x|).
template <class F>
ScalarOptimum golden_section_max(F&& f, double lo, double hi, double x_tol,
                                 int max_iter = 200) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < max_iter; ++iter) {
    if (std::abs(b - a) <= x_tol * (1.0 + std::abs(c))) break;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? ScalarOptimum{c, fc} : ScalarOptimum{d, fd};
}

/// Maximize `f` over the sampled points `grid`, then refine between the
/// neighbours of the best sample by golden-section search.
template <class F>
ScalarOptimum grid_refine_max(F&& f, const std::vector<double>& grid,
                              double x_tol) {
  require(!grid.empty(), ErrorCode::kEmptyInput, "grid_refine_max: empty grid");
  std::size_t best = 0;
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = f(grid[i]);
    if (values[i] > values[best]) best = i;
  }
  ScalarOptimum result{grid[best], values[best]};
  if (grid.size() < 3) return result;
  const std::size_t lo = best == 0 ? 0 : best - 1;
  const std::size_t hi = best + 1 >= grid.size() ? grid.size() - 1 : best + 1;
  const ScalarOptimum refined = golden_section_max(f, grid[lo], grid[hi], x_tol);
  if (refined.value > result.value) result = refined;
  return result;
}

/// Bisection for a sign change of `f` on [lo, hi]; requires f(lo), f(hi)
/// of opposite sign.
template <class F>
double bisect_root(F&& f, double lo, double hi, double x_tol,
                   int max_iter = 400) {
  double f_lo = f(lo);
  const double f_hi = f(hi);
  require(f_lo == 0.0 || f_hi == 0.0 || (f_lo < 0.0) != (f_hi < 0.0),
          ErrorCode::kDomain, "bisect_root: interval does not bracket a root");
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  for (int iter = 0; iter < max_iter && hi - lo > x_tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace subgauss
