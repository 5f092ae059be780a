#include "subgauss/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "subgauss/errors.hpp"
#include "subgauss/optimize.hpp"

namespace subgauss {
namespace {

constexpr std::size_t kGridPoints = 200;
// Log-MGF accuracy requested by λ scans.
constexpr double kMgfTol = 1e-13;

void require_centered(const DistributionModel& model, const char* op) {
  require(model.is_centered(), ErrorCode::kNonCenteredModel,
          std::string(op) + ": model mean is " + std::to_string(model.mean()) +
              ", expected 0");
}

}  // namespace

std::string_view to_string(NormMethod method) {
  switch (method) {
    case NormMethod::kClosedForm: return "closed-form";
    case NormMethod::kLambdaSup: return "lambda-sup";
    case NormMethod::kMomentSup: return "moment-sup";
  }
  return "unknown";
}

PsiFunction make_psi(std::function<double(double)> evaluator, double support_B) {
  require(support_B > 1.0, ErrorCode::kDomain, "psi: support B must exceed 1");
  require(static_cast<bool>(evaluator), ErrorCode::kDomain, "psi: empty evaluator");
  const double hi = std::isfinite(support_B) ? support_B - 1e-9 * (support_B - 1.0) : 1e3;
  double lowest = std::numeric_limits<double>::infinity();
  for (double p : log_grid(1.0, hi, 64)) {
    const double v = evaluator(p);
    require(std::isfinite(v), ErrorCode::kDomain, "psi: non-finite value");
    lowest = std::min(lowest, v);
  }
  require(lowest > 0.0, ErrorCode::kDomain, "psi: inf psi(p) must be positive");
  return PsiFunction{std::move(evaluator), support_B};
}

double default_lambda_cap(const DistributionModel& model) {
  const double var = variance(model);
  require(var > 0.0, ErrorCode::kDomain, "default_lambda_cap: degenerate model");
  return 50.0 / std::sqrt(var);
}

NormEstimate sub_norm_numeric(const DistributionModel& model, double tol,
                              std::optional<double> lambda_cap) {
  require(tol > 0.0, ErrorCode::kDomain, "sub_norm_numeric: tol must be positive");
  require_centered(model, "sub_norm_numeric");
  const double var = variance(model);
  if (var == 0.0) return {0.0, NormMethod::kClosedForm, 0.0, tol, std::nullopt};
  const double sigma = std::sqrt(var);
  const double cap = lambda_cap.value_or(default_lambda_cap(model));
  require(cap > 0.0, ErrorCode::kDomain, "sub_norm_numeric: lambda_cap must be positive");
  const double lo = std::min(1e-3, cap * 1e-4);
  const auto grid = log_grid(lo, cap, kGridPoints);

  ScalarOptimum best{0.0, sigma};
  for (double sign : {1.0, -1.0}) {
    auto ratio = [&](double t) {
      const double l = log_mgf(model, sign * t, kMgfTol);
      return std::sqrt(2.0 * std::max(l, 0.0)) / t;
    };
    const ScalarOptimum found = grid_refine_max(ratio, grid, 1e-10);
    // The λ → 0 limit wins ties.
    if (found.value > best.value * (1.0 + 1e-12)) best = {sign * found.arg, found.value};
  }
  return {best.value, NormMethod::kLambdaSup, best.arg, tol, cap};
}

NormEstimate sub_norm(const DistributionModel& model, double tol) {
  require_centered(model, "sub_norm");
  if (const auto* g = model.as<Gaussian>()) {
    return {g->sigma, NormMethod::kClosedForm, 0.0, kClosedFormTol, std::nullopt};
  }
  if (model.as<Rademacher>()) {
    return {1.0, NormMethod::kClosedForm, 0.0, kClosedFormTol, std::nullopt};
  }
  if (const auto* b = model.as<CenteredBernoulli>()) {
    return {bernoulli_sub_norm(b->p), NormMethod::kClosedForm, std::nullopt, kClosedFormTol,
            std::nullopt};
  }
  // Strictly subgaussian families: the norm equals the standard deviation.
  if (model.as<Uniform>()) {
    return {std::sqrt(variance(model)), NormMethod::kClosedForm, 0.0, kClosedFormTol,
            std::nullopt};
  }
  return sub_norm_numeric(model, tol);
}

double bernoulli_sub_norm(double p) {
  require(p > 0.0 && p < 1.0, ErrorCode::kDomain, "bernoulli_sub_norm: p must lie in (0, 1)");
  // With t = 1 - 2p, ln((1-p)/p) = 2 atanh(t).
  const double t = 1.0 - 2.0 * p;
  if (t == 0.0) return 0.5;
  return std::sqrt(t / (4.0 * std::atanh(t)));
}

double tail_bound(double tau, double x) {
  require(tau > 0.0, ErrorCode::kDomain, "tail_bound: tau must be positive");
  require(x >= 0.0, ErrorCode::kDomain, "tail_bound: x must be >= 0");
  return std::exp(-x * x / (2.0 * tau * tau));
}

double converse_norm_from_tail(double K) {
  require(K > 0.0, ErrorCode::kDomain, "converse_norm_from_tail: K must be positive");
  return 4.0 * K;
}

double lp_norm(const DistributionModel& model, double p, double tol) {
  require(p >= 1.0 && std::isfinite(p), ErrorCode::kDomain, "lp_norm: p must be >= 1");
  require(tol > 0.0, ErrorCode::kDomain, "lp_norm: tol must be positive");
  const double log_m = log_abs_moment(model, p);
  require(!std::isnan(log_m), ErrorCode::kMomentDivergence, "lp_norm: moment is undefined");
  return std::exp(log_m / p);
}

NormEstimate gls_equiv_norm(const DistributionModel& model, double s_max, double tol) {
  require(s_max >= 1.0, ErrorCode::kDomain, "gls_equiv_norm: s_max must be >= 1");
  auto ratio = [&](double s) { return lp_norm(model, s) / std::sqrt(s); };
  if (s_max == 1.0) return {ratio(1.0), NormMethod::kMomentSup, 1.0, tol, 1.0};
  const ScalarOptimum best = grid_refine_max(ratio, log_grid(1.0, s_max, kGridPoints), 1e-10);
  return {best.value, NormMethod::kMomentSup, best.arg, tol, s_max};
}

double noncentered_sub_norm(double centered_norm, double mean) {
  require(centered_norm >= 0.0, ErrorCode::kDomain,
          "noncentered_sub_norm: centered norm must be >= 0");
  return std::hypot(centered_norm, mean);
}

PsiFunction natural_psi(const DistributionModel& model, double support_B) {
  return make_psi([model](double p) { return lp_norm(model, p); }, support_B);
}

NormEstimate gls_norm(const DistributionModel& model, const PsiFunction& psi, double tol,
                      double p_cap) {
  const bool unbounded = !std::isfinite(psi.support_B);
  require(!unbounded || p_cap > 1.0, ErrorCode::kDomain, "gls_norm: p_cap must exceed 1");
  const double hi = unbounded ? p_cap : psi.support_B - 1e-9 * (psi.support_B - 1.0);
  auto ratio = [&](double p) { return lp_norm(model, p) / psi(p); };
  const ScalarOptimum best = grid_refine_max(ratio, log_grid(1.0, hi, kGridPoints), 1e-10);
  return {best.value, NormMethod::kMomentSup, best.arg, tol,
          unbounded ? std::optional<double>(hi) : std::nullopt};
}

double gls_tail_bound(double norm, double m, double x, double p_cap) {
  require(norm > 0.0 && m > 0.0, ErrorCode::kDomain,
          "gls_tail_bound: norm and m must be positive");
  require(x > 0.0, ErrorCode::kDomain, "gls_tail_bound: x must be positive");
  require(p_cap >= 1.0, ErrorCode::kDomain, "gls_tail_bound: p_cap must be >= 1");
  // ln of the bound, p (ln(norm/x) + m ln p), is convex in p with stationary
  // point p* = (x/norm)^{1/m} / e.
  const double p_star = std::exp(std::log(x / norm) / m - 1.0);
  const double p = std::clamp(p_star, 1.0, p_cap);
  const double log_bound = p * (std::log(norm / x) + m * std::log(p));
  return std::min(1.0, std::exp(log_bound));
}

}  // namespace subgauss
