#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string_view>

#include "subgauss/distribution.hpp"

namespace subgauss {

enum class NormMethod { kClosedForm, kLambdaSup, kMomentSup };

std::string_view to_string(NormMethod method);

/// A computed norm together with how it was obtained.
struct NormEstimate {
  double value = 0.0;
  NormMethod method = NormMethod::kClosedForm;
  /// λ (or moment order s / p) attaining the supremum; 0 denotes the λ → 0
  /// limit.
  std::optional<double> argmax;
  double tol = 0.0;
  /// Upper end of the scanned range when the supremum was taken over an
  /// unbounded set. The value is then a lower bound on the true supremum.
  std::optional<double> scan_cap;
};

/// Generating function ψ of a Grand Lebesgue Space on [1, B).
struct PsiFunction {
  std::function<double(double)> evaluator;
  double support_B = std::numeric_limits<double>::infinity();

  double operator()(double p) const { return evaluator(p); }
};

/// Validates inf ψ > 0 on a grid over [1, B) and B > 1.
PsiFunction make_psi(std::function<double(double)> evaluator, double support_B);

inline constexpr double kScanTol = 1e-6;
inline constexpr double kClosedFormTol = 1e-9;

/// 50/σ, the default upper end of λ scans.
double default_lambda_cap(const DistributionModel& model);

/// sup over λ ≠ 0 of sqrt(2 ln E e^{λξ})/|λ| by log-grid scan on
/// ±[1e-3, lambda_cap], golden-section refinement, and the λ → 0 limit σ.
NormEstimate sub_norm_numeric(const DistributionModel& model, double tol = kScanTol,
                              std::optional<double> lambda_cap = std::nullopt);

/// Closed form where the family has one (Gaussian, Rademacher, centered
/// Bernoulli, uniform), numeric scan otherwise.
NormEstimate sub_norm(const DistributionModel& model, double tol = kScanTol);

/// sqrt((1 - 2p) / (2 ln((1-p)/p))); 1/2 at p = 1/2.
double bernoulli_sub_norm(double p);

/// exp(-x²/(2τ²)), the one-sided tail bound for a variable of norm τ.
double tail_bound(double tau, double x);

/// A tail exp(-x²/K²) certifies a norm below 4K.
double converse_norm_from_tail(double K);

/// (E|ξ|^p)^{1/p} for p >= 1.
double lp_norm(const DistributionModel& model, double p, double tol = kClosedFormTol);

/// sup over s in [1, s_max] of |ξ|_s / sqrt(s).
NormEstimate gls_equiv_norm(const DistributionModel& model, double s_max = 200.0,
                            double tol = kScanTol);

/// sqrt(τ² + m²) for a variable with centered norm τ and mean m.
double noncentered_sub_norm(double centered_norm, double mean);

/// ψ(p) = |ξ|_p on [1, B).
PsiFunction natural_psi(const DistributionModel& model,
                        double support_B = std::numeric_limits<double>::infinity());

/// sup over p in [1, B) of |ξ|_p / ψ(p). For B = ∞ the scan stops at p_cap,
/// reported in scan_cap.
NormEstimate gls_norm(const DistributionModel& model, const PsiFunction& psi,
                      double tol = kScanTol, double p_cap = 400.0);

/// min(1, inf over p in [1, p_cap] of (norm p^m / x)^p), the Markov bound
/// for P(|ξ| > x) given |ξ|_p <= norm p^m.
double gls_tail_bound(double norm, double m, double x, double p_cap = 1e6);

}  // namespace subgauss
