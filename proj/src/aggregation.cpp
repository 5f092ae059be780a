#include "subgauss/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "subgauss/errors.hpp"
#include "subgauss/optimize.hpp"
#include "subgauss/special_fn.hpp"

namespace subgauss {
namespace {

constexpr std::size_t kGnGridPoints = 400;

void check_gn_input(std::span<const double> ys) {
  require(!ys.empty(), ErrorCode::kEmptyInput, "g_n: empty input");
  for (double y : ys) {
    require(std::isfinite(y) && y > 0.0, ErrorCode::kDomain, "g_n: entries must be positive");
  }
}

std::vector<double> gn_grid(std::span<const double> ys) {
  const double y_max = *std::max_element(ys.begin(), ys.end());
  return log_grid(1e-8 / y_max, 1e4 / y_max, kGnGridPoints);
}

}  // namespace

double independent_sum_norm(std::span<const double> norms) {
  require(!norms.empty(), ErrorCode::kEmptyInput, "independent_sum_norm: empty list");
  const double scale = *std::max_element(norms.begin(), norms.end());
  for (double t : norms) {
    require(std::isfinite(t) && t >= 0.0, ErrorCode::kDomain,
            "independent_sum_norm: norms must be >= 0");
  }
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double t : norms) sum += (t / scale) * (t / scale);
  return scale * std::sqrt(sum);
}

double sum_tail_bound(double sigma_n, double x) {
  require(sigma_n > 0.0, ErrorCode::kDomain, "sum_tail_bound: sigma_n must be positive");
  require(x >= 0.0, ErrorCode::kDomain, "sum_tail_bound: x must be >= 0");
  return std::exp(-0.5 * x * x);
}

CltLowerBound clt_lower_bound(double x) {
  require(x >= 1.0, ErrorCode::kDomain, "clt_lower_bound: x must be >= 1");
  const double c = 1.0 / (2.0 * std::sqrt(2.0 * std::numbers::pi));
  return {normal_upper_tail(x), c * std::exp(-0.5 * x * x) / x};
}

std::string_view to_string(GnMode mode) { return mode == GnMode::kSup ? "sup" : "inf"; }

GnMode parse_gn_mode(std::string_view text) {
  if (text == "sup") return GnMode::kSup;
  if (text == "inf") return GnMode::kInf;
  fail(ErrorCode::kInvalidParameter, "g_n mode must be 'sup' or 'inf'");
}

double gn_profile(std::span<const double> ys, double mu) {
  check_gn_input(ys);
  require(mu > 0.0 && std::isfinite(mu), ErrorCode::kDomain, "gn_profile: mu must be positive");
  const auto max_it = std::max_element(ys.begin(), ys.end());
  const double y_max = *max_it;
  double log_value;
  if (mu * y_max < 1.0) {
    // Σ e^{μ y} - (n - 1) = 1 + Σ expm1(μ y)
    double sum = 0.0;
    for (double y : ys) sum += std::expm1(mu * y);
    log_value = std::log1p(sum);
  } else {
    // e^{μ y_max} (1 + Σ_{j != max} (e^{μ(y_j - y_max)} - e^{-μ y_max}))
    double sum = 0.0;
    const double floor_term = std::exp(-mu * y_max);
    for (auto it = ys.begin(); it != ys.end(); ++it) {
      if (it == max_it) continue;
      sum += std::exp(mu * (*it - y_max)) - floor_term;
    }
    log_value = mu * y_max + std::log1p(sum);
  }
  return std::sqrt(log_value / mu);
}

double g_n(std::span<const double> ys, GnMode mode, double tol) {
  check_gn_input(ys);
  require(tol > 0.0, ErrorCode::kDomain, "g_n: tol must be positive");
  const double sum = std::accumulate(ys.begin(), ys.end(), 0.0);
  const double y_max = *std::max_element(ys.begin(), ys.end());
  if (ys.size() == 1) return std::sqrt(ys[0]);
  const auto grid = gn_grid(ys);
  const double sign = mode == GnMode::kSup ? 1.0 : -1.0;
  auto objective = [&](double mu) { return sign * gn_profile(ys, mu); };
  const ScalarOptimum found = grid_refine_max(objective, grid, 1e-12);
  const double limit_zero = std::sqrt(sum);
  const double limit_inf = std::sqrt(y_max);
  if (mode == GnMode::kSup) return std::max({found.value, limit_zero, limit_inf});
  return std::min({-found.value, limit_zero, limit_inf});
}

std::vector<double> gn_monotonicity_violations(std::span<const double> ys) {
  check_gn_input(ys);
  std::vector<double> violations;
  const auto grid = gn_grid(ys);
  double previous = gn_profile(ys, grid.front());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double current = gn_profile(ys, grid[i]);
    if (current > previous * (1.0 + 1e-12)) violations.push_back(grid[i - 1]);
    previous = current;
  }
  return violations;
}

CellValues centered_cell(double hi, double lo) {
  require(hi > 0.0 && lo < 0.0 && std::isfinite(hi) && std::isfinite(lo), ErrorCode::kDomain,
          "centered_cell: requires hi > 0 > lo");
  return {hi, lo, -lo / (hi - lo)};
}

DisjointFamilySpec make_disjoint_family(std::vector<double> cell_probs,
                                        std::vector<CellValues> cell_values,
                                        std::vector<double> betas) {
  require(!cell_probs.empty(), ErrorCode::kEmptyInput, "disjoint family: no cells");
  require(cell_probs.size() == cell_values.size(), ErrorCode::kInvalidParameter,
          "disjoint family: cell_probs and cell_values differ in length");
  double total = 0.0;
  for (double p : cell_probs) {
    require(std::isfinite(p) && p > 0.0 && p <= 1.0, ErrorCode::kInvalidParameter,
            "disjoint family: cell probabilities must lie in (0, 1]");
    total += p;
  }
  require(total <= 1.0 + 1e-12, ErrorCode::kInvalidParameter,
          "disjoint family: cell probabilities sum above 1");
  for (const auto& c : cell_values) {
    require(std::isfinite(c.hi) && std::isfinite(c.lo) && c.prob_hi >= 0.0 && c.prob_hi <= 1.0,
            ErrorCode::kInvalidParameter, "disjoint family: invalid cell values");
    const double scale = std::max({1.0, std::abs(c.hi), std::abs(c.lo)});
    require(std::abs(c.prob_hi * c.hi + (1.0 - c.prob_hi) * c.lo) <= 1e-12 * scale,
            ErrorCode::kInvalidParameter, "disjoint family: cell values must have mean 0");
  }
  DisjointFamilySpec spec{std::move(cell_probs), std::move(cell_values), {}};
  if (betas.empty()) {
    for (std::size_t j = 0; j < spec.cell_probs.size(); ++j) {
      betas.push_back(sub_norm_numeric(disjoint_member(spec, j)).value);
    }
  }
  require(betas.size() == spec.cell_probs.size(), ErrorCode::kInvalidParameter,
          "disjoint family: betas must match the number of cells");
  for (double b : betas) {
    require(std::isfinite(b) && b > 0.0, ErrorCode::kInvalidParameter,
            "disjoint family: betas must be positive");
  }
  spec.betas = std::move(betas);
  return spec;
}

DistributionModel disjoint_member(const DisjointFamilySpec& spec, std::size_t j) {
  require(j < spec.cell_probs.size(), ErrorCode::kDomain, "disjoint_member: index out of range");
  const double p = spec.cell_probs[j];
  const auto& c = spec.cell_values[j];
  return DistributionModel::simple({c.hi, c.lo, 0.0},
                                   {p * c.prob_hi, p * (1.0 - c.prob_hi), 1.0 - p});
}

DistributionModel disjoint_sum_model(const DisjointFamilySpec& spec) {
  std::vector<double> values;
  std::vector<double> probs;
  double covered = 0.0;
  for (std::size_t j = 0; j < spec.cell_probs.size(); ++j) {
    const double p = spec.cell_probs[j];
    const auto& c = spec.cell_values[j];
    values.push_back(c.hi);
    probs.push_back(p * c.prob_hi);
    values.push_back(c.lo);
    probs.push_back(p * (1.0 - c.prob_hi));
    covered += p;
  }
  values.push_back(0.0);
  probs.push_back(std::max(0.0, 1.0 - covered));
  return DistributionModel::simple(std::move(values), std::move(probs));
}

double disjoint_sum_norm(const DisjointFamilySpec& spec, GnMode mode) {
  std::vector<double> squared;
  squared.reserve(spec.betas.size());
  for (double b : spec.betas) squared.push_back(b * b);
  return g_n(squared, mode);
}

double gls_disjoint_combine(std::span<const double> norms, double B) {
  require(!norms.empty(), ErrorCode::kEmptyInput, "gls_disjoint_combine: empty list");
  require(B > 1.0, ErrorCode::kDomain, "gls_disjoint_combine: B must exceed 1");
  for (double a : norms) {
    require(std::isfinite(a) && a >= 0.0, ErrorCode::kDomain,
            "gls_disjoint_combine: norms must be >= 0");
  }
  const double scale = *std::max_element(norms.begin(), norms.end());
  if (!std::isfinite(B) || scale == 0.0) return scale;
  double sum = 0.0;
  for (double a : norms) sum += std::pow(a / scale, B);
  return scale * std::pow(sum, 1.0 / B);
}

DisjointGlsCheck check_disjoint_gls(const DisjointFamilySpec& spec, const PsiFunction& psi,
                                    double p_cap) {
  DisjointGlsCheck check;
  for (std::size_t j = 0; j < spec.cell_probs.size(); ++j) {
    check.member_norms.push_back(gls_norm(disjoint_member(spec, j), psi, kScanTol, p_cap).value);
  }
  check.sum_norm = gls_norm(disjoint_sum_model(spec), psi, kScanTol, p_cap).value;
  check.combined_bound = gls_disjoint_combine(check.member_norms, psi.support_B);
  check.bound_holds = check.sum_norm <= check.combined_bound * (1.0 + 1e-9);
  return check;
}

MartingaleSpec scaled_rademacher_martingale(
    std::vector<double> thetas,
    std::function<double(std::size_t j, std::span<const double> history)> coefficient) {
  require(!thetas.empty(), ErrorCode::kEmptyInput, "martingale: no steps");
  for (double t : thetas) {
    require(std::isfinite(t) && t >= 0.0, ErrorCode::kInvalidParameter,
            "martingale: step norms must be >= 0");
  }
  MartingaleSpec spec;
  spec.envelopes = thetas;
  spec.step_norms = std::move(thetas);
  spec.step = [coefficient = std::move(coefficient)](std::span<const double> history,
                                                     Xoshiro256& fresh) {
    const double c = coefficient(history.size(), history);
    return c * fresh.sign();
  };
  return spec;
}

double martingale_norm_bound(const MartingaleSpec& spec) {
  return independent_sum_norm(spec.step_norms);
}

double martingale_tail_bound(double delta_n, double x) {
  require(delta_n > 0.0, ErrorCode::kDomain, "martingale_tail_bound: delta_n must be positive");
  require(x >= 0.0, ErrorCode::kDomain, "martingale_tail_bound: x must be >= 0");
  return std::exp(-0.5 * x * x);
}

MixtureBound mixture_norm_bound(std::span<const double> component_norms,
                                std::span<const double> weights,
                                const std::vector<bool>& component_strict) {
  require(!component_norms.empty(), ErrorCode::kEmptyInput, "mixture_norm_bound: no components");
  require(component_norms.size() == weights.size(), ErrorCode::kInvalidParameter,
          "mixture_norm_bound: norms and weights differ in length");
  require(component_strict.empty() || component_strict.size() == weights.size(),
          ErrorCode::kInvalidParameter, "mixture_norm_bound: strict flags differ in length");
  double total = 0.0;
  for (double w : weights) {
    require(std::isfinite(w) && w >= 0.0, ErrorCode::kInvalidParameter,
            "mixture_norm_bound: weights must be >= 0");
    total += w;
  }
  require(std::abs(total - 1.0) <= 1e-12, ErrorCode::kInvalidParameter,
          "mixture_norm_bound: weights must sum to 1");

  MixtureBound bound;
  double lowest = std::numeric_limits<double>::infinity();
  bool all_strict = !component_strict.empty();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    require(std::isfinite(component_norms[i]) && component_norms[i] >= 0.0,
            ErrorCode::kInvalidParameter, "mixture_norm_bound: norms must be >= 0");
    if (weights[i] == 0.0) continue;
    bound.value = std::max(bound.value, component_norms[i]);
    lowest = std::min(lowest, component_norms[i]);
    if (!component_strict.empty() && !component_strict[i]) all_strict = false;
  }
  bound.strict = all_strict && bound.value - lowest <= 1e-12 * bound.value;
  return bound;
}

}  // namespace subgauss
