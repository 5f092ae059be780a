#pragma once

#include <span>

namespace subgauss {

/// ln Γ(x) for x > 0. Stirling series for x >= 10, upward recurrence below.
/// Exact (to rounding) at positive integers up to 20. Thread-safe, unlike
/// std::lgamma which may write the global signgam.
double log_gamma(double x);

/// B(a, b) = Γ(a)Γ(b)/Γ(a+b).
double beta_fn(double a, double b);

/// ln B(a, b).
double log_beta_fn(double a, double b);

/// Standard normal upper tail P(Z > x).
double normal_upper_tail(double x);

/// ln Σ exp(v_i), stable for large |v_i|. Throws on an empty list.
double log_sum_exp(std::span<const double> values);

/// ln((2k)!) = ln Γ(2k + 1).
inline double log_factorial(double n) { return log_gamma(n + 1.0); }

}  // namespace subgauss
