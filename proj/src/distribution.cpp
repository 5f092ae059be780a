#include "subgauss/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "parallel.hpp"
#include "quadrature.hpp"
#include "subgauss/errors.hpp"
#include "subgauss/special_fn.hpp"

namespace subgauss {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kLn2 = std::numbers::ln2;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_finite(double v, const char* what) {
  require(std::isfinite(v), ErrorCode::kInvalidParameter,
          std::string(what) + " must be finite");
}

void check_probability_vector(const std::vector<double>& probs, const char* what) {
  require(!probs.empty(), ErrorCode::kEmptyInput, std::string(what) + " is empty");
  double total = 0.0;
  for (double p : probs) {
    require(std::isfinite(p) && p >= 0.0 && p <= 1.0, ErrorCode::kInvalidParameter,
            std::string(what) + " entries must lie in [0, 1]");
    total += p;
  }
  require(std::abs(total - 1.0) <= 1e-12, ErrorCode::kInvalidParameter,
          std::string(what) + " must sum to 1");
}

// ln cosh(t), stable for large |t|.
double log_cosh(double t) {
  t = std::abs(t);
  return t + std::log1p(std::exp(-2.0 * t)) - kLn2;
}

// ln(sinh(t)/t) for t >= 0.
double log_sinhc(double t) {
  t = std::abs(t);
  if (t < 1e-3) {
    const double t2 = t * t;
    // sinh(t)/t - 1 = t²/6 + t⁴/120 + t⁶/5040 + t⁸/362880
    return std::log1p(t2 * (1.0 / 6.0 + t2 * (1.0 / 120.0 +
                                              t2 * (1.0 / 5040.0 + t2 / 362880.0))));
  }
  if (t < 20.0) return std::log(std::sinh(t) / t);
  return t - kLn2 - std::log(t) + std::log1p(-std::exp(-2.0 * t));
}

// Σ m_{2k} a^{2k}/(2k)! for a symmetric law on [-1, 1], with m_0 = 1 and
// ln(m_{2k+2}/m_{2k}) supplied by `log_ratio`. The remainder after term k is
// at most t_k r/(1-r), r = a²/((2k+1)(2k+2)), since m_{2k+2} <= m_{2k}.
template <class LogRatio>
double series_log_mgf(LogRatio&& log_ratio, double a, double tol) {
  a = std::abs(a);
  if (a == 0.0) return 0.0;
  const double log_a2 = 2.0 * std::log(a);
  const double log_target = std::log(tol / 10.0);
  double log_term = 0.0;
  double peak = 0.0;
  double scaled_sum = 1.0;  // Σ exp(log_t - peak)
  for (int k = 0; k < 10'000'000; ++k) {
    const double two_k = 2.0 * k;
    const double r = a * a / ((two_k + 1.0) * (two_k + 2.0));
    if (r < 0.5) {
      const double log_rem = log_term + std::log(r / (1.0 - r));
      const double log_sum = peak + std::log(scaled_sum);
      if (log_rem - log_sum < log_target) return log_sum;
    }
    log_term += log_a2 + log_ratio(k) - std::log((two_k + 1.0) * (two_k + 2.0));
    if (log_term > peak) {
      scaled_sum = scaled_sum * std::exp(peak - log_term) + 1.0;
      peak = log_term;
    } else {
      scaled_sum += std::exp(log_term - peak);
    }
  }
  fail(ErrorCode::kNumericFailure, "series_log_mgf: series did not converge");
}

// ln E exp(λγ) for the symmetrized gamma law by certified quadrature.
double sym_gamma_log_mgf(const SymGamma& g, double lambda, double tol) {
  const double a = std::abs(lambda);
  if (a == 0.0) return 0.0;
  const double alpha = g.alpha;
  const double beta = g.beta;
  if (beta < 1.0 || (beta == 1.0 && a >= 1.0)) {
    fail(ErrorCode::kMgfDivergence,
         "log_mgf: sym_gamma MGF is infinite at lambda = " + std::to_string(lambda));
  }
  const double s = (alpha + 1.0) / beta;

  // phi(x) = ln cosh(a x) - x^beta is bounded by a x - x^beta, whose maximum
  // (beta - 1)(a/beta)^{beta/(beta-1)} is attained at x0.
  const double x0 = std::pow(a / beta, 1.0 / (beta - 1.0));
  const double shift = (beta - 1.0) * std::pow(a / beta, beta / (beta - 1.0));
  const double inv_exp = 1.0 / (alpha + 1.0);
  auto integrand = [&](double u) {
    if (u <= 0.0) return std::exp(-shift);
    const double x = std::pow(u, inv_exp);
    return std::exp(log_cosh(a * x) - std::pow(x, beta) - shift);
  };

  // Log-integrand in x of the tail majorant (α+1) x^α exp(a x - x^β - shift).
  auto tail_log = [&](double x) { return a * x + alpha * std::log(x) - std::pow(x, beta); };
  auto tail_slope = [&](double x) {
    return a + alpha / x - beta * std::pow(x, beta - 1.0);
  };
  double x_cut = std::max({1.0, 2.0 * x0});
  if (alpha < 0.0) {
    x_cut = std::max(x_cut, std::pow(-alpha / (beta * (beta - 1.0)), 1.0 / beta));
  }
  // Width of the peak of a x - x^beta around x0.
  const double width =
      x0 > 0.0 ? 1.0 / std::sqrt(beta * (beta - 1.0) * std::pow(x0, beta - 2.0)) : 1.0;

  // The exponent a x - x^beta - shift cancels terms of size ~a x0, so the
  // integrand carries relative rounding noise of order eps * a x0.
  const double noise = std::numeric_limits<double>::epsilon() * (1.0 + a * x0 + shift);
  const double rel_target = std::max(tol / 20.0, 16.0 * noise);

  for (int attempt = 0; attempt < 200; ++attempt) {
    while (tail_slope(x_cut) >= 0.0) x_cut *= 1.5;
    std::vector<double> breaks = {0.0, std::pow(x_cut, alpha + 1.0)};
    for (double k : {-4.0, -1.0, 0.0, 1.0, 4.0}) {
      const double x = x0 + k * width;
      if (x > 0.0 && x < x_cut) breaks.push_back(std::pow(x, alpha + 1.0));
    }
    const auto result = detail::integrate_adaptive(integrand, breaks, 0.0, rel_target);
    const double log_tail = std::log(alpha + 1.0) + tail_log(x_cut) - shift -
                            std::log(-tail_slope(x_cut));
    if (result.value > 0.0 && log_tail - std::log(result.value) < std::log(tol / 20.0)) {
      return shift + std::log(result.value) - log_gamma(s + 1.0);
    }
    x_cut *= 1.5;
  }
  fail(ErrorCode::kNumericFailure, "log_mgf: sym_gamma truncation did not converge");
}

std::size_t pick_index(const std::vector<double>& probs, double u) {
  double cumulative = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cumulative += probs[i];
    if (u < cumulative) return i;
  }
  // Rounding left u above the running total; fall back to the last atom
  // with positive mass.
  for (std::size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0.0) return i;
  }
  return probs.size() - 1;
}

}  // namespace

bool Mixture::operator==(const Mixture& other) const {
  return components == other.components && weights == other.weights;
}

DistributionModel::DistributionModel(Family family) : family_(std::move(family)) {
  mean_ = std::visit(
      Overloaded{
          [](const Simple& s) {
            double m = 0.0;
            for (std::size_t i = 0; i < s.values.size(); ++i) m += s.probs[i] * s.values[i];
            return m;
          },
          [](const Mixture& mix) {
            double m = 0.0;
            for (std::size_t i = 0; i < mix.components.size(); ++i) {
              m += mix.weights[i] * mix.components[i].mean();
            }
            return m;
          },
          [](const auto&) { return 0.0; }},
      family_);
}

DistributionModel DistributionModel::gaussian(double sigma) {
  require_finite(sigma, "gaussian sigma");
  require(sigma > 0.0, ErrorCode::kInvalidParameter, "gaussian sigma must be positive");
  return DistributionModel(Gaussian{sigma});
}

DistributionModel DistributionModel::rademacher() { return DistributionModel(Rademacher{}); }

DistributionModel DistributionModel::centered_bernoulli(double p) {
  require_finite(p, "centered_bernoulli p");
  require(p > 0.0 && p < 1.0, ErrorCode::kInvalidParameter,
          "centered_bernoulli p must lie in (0, 1)");
  return DistributionModel(CenteredBernoulli{p});
}

DistributionModel DistributionModel::uniform(double b) {
  require_finite(b, "uniform b");
  require(b > 0.0, ErrorCode::kInvalidParameter, "uniform b must be positive");
  return DistributionModel(Uniform{b});
}

DistributionModel DistributionModel::poly_density(double alpha) {
  require_finite(alpha, "poly_density alpha");
  require(alpha >= 0.0, ErrorCode::kInvalidParameter, "poly_density alpha must be >= 0");
  return DistributionModel(PolyDensity{alpha});
}

DistributionModel DistributionModel::sym_beta(double alpha, double beta) {
  require_finite(alpha, "sym_beta alpha");
  require_finite(beta, "sym_beta beta");
  require(alpha > 0.0 && beta > 0.0, ErrorCode::kInvalidParameter,
          "sym_beta alpha and beta must be positive");
  return DistributionModel(SymBeta{alpha, beta});
}

DistributionModel DistributionModel::sym_gamma(double alpha, double beta) {
  require_finite(alpha, "sym_gamma alpha");
  require_finite(beta, "sym_gamma beta");
  require(alpha > -1.0, ErrorCode::kInvalidParameter, "sym_gamma alpha must be > -1");
  require(beta > 0.0, ErrorCode::kInvalidParameter, "sym_gamma beta must be positive");
  return DistributionModel(SymGamma{alpha, beta});
}

DistributionModel DistributionModel::simple(std::vector<double> values,
                                            std::vector<double> probs) {
  require(!values.empty(), ErrorCode::kEmptyInput, "simple: no atoms");
  require(values.size() == probs.size(), ErrorCode::kInvalidParameter,
          "simple: values and probs differ in length");
  for (double v : values) require_finite(v, "simple value");
  check_probability_vector(probs, "simple probs");
  return DistributionModel(Simple{std::move(values), std::move(probs)});
}

DistributionModel DistributionModel::mixture(std::vector<DistributionModel> components,
                                             std::vector<double> weights) {
  require(!components.empty(), ErrorCode::kEmptyInput, "mixture: no components");
  require(components.size() == weights.size(), ErrorCode::kInvalidParameter,
          "mixture: components and weights differ in length");
  check_probability_vector(weights, "mixture weights");
  return DistributionModel(Mixture{std::move(components), std::move(weights)});
}

std::string_view DistributionModel::family_name() const noexcept {
  return std::visit(Overloaded{[](const Gaussian&) { return "gaussian"; },
                               [](const Rademacher&) { return "rademacher"; },
                               [](const CenteredBernoulli&) { return "centered_bernoulli"; },
                               [](const Uniform&) { return "uniform"; },
                               [](const PolyDensity&) { return "poly_density"; },
                               [](const SymBeta&) { return "sym_beta"; },
                               [](const SymGamma&) { return "sym_gamma"; },
                               [](const Simple&) { return "simple"; },
                               [](const Mixture&) { return "mixture"; }},
                    family_);
}

bool DistributionModel::is_centered(double tol) const noexcept {
  return std::abs(mean_) <= tol;
}

bool DistributionModel::is_symmetric() const noexcept {
  return std::visit(
      Overloaded{
          [](const CenteredBernoulli& b) { return b.p == 0.5; },
          [](const Simple& s) {
            // Every atom must be matched by its mirror image with equal mass.
            for (std::size_t i = 0; i < s.values.size(); ++i) {
              if (s.values[i] == 0.0) continue;
              double mirrored = 0.0;
              double own = 0.0;
              for (std::size_t j = 0; j < s.values.size(); ++j) {
                if (s.values[j] == -s.values[i]) mirrored += s.probs[j];
                if (s.values[j] == s.values[i]) own += s.probs[j];
              }
              if (std::abs(mirrored - own) > 1e-15) return false;
            }
            return true;
          },
          [](const Mixture& mix) {
            return std::all_of(mix.components.begin(), mix.components.end(),
                               [](const DistributionModel& c) { return c.is_symmetric(); });
          },
          [](const auto&) { return true; }},
      family_);
}

double variance(const DistributionModel& model) {
  return std::visit(
      Overloaded{
          [](const Gaussian& g) { return g.sigma * g.sigma; },
          [](const Rademacher&) { return 1.0; },
          [](const CenteredBernoulli& b) { return b.p * (1.0 - b.p); },
          [](const Uniform& u) { return u.b * u.b / 3.0; },
          [](const PolyDensity& d) { return (d.alpha + 1.0) / (3.0 * (d.alpha + 3.0)); },
          [](const SymBeta& d) {
            return d.alpha * (d.alpha + 1.0) /
                   ((d.alpha + d.beta) * (d.alpha + d.beta + 1.0));
          },
          [](const SymGamma& d) {
            return std::exp(log_gamma((d.alpha + 3.0) / d.beta) -
                            log_gamma((d.alpha + 1.0) / d.beta));
          },
          [&model](const Simple& s) {
            double v = 0.0;
            for (std::size_t i = 0; i < s.values.size(); ++i) {
              const double c = s.values[i] - model.mean();
              v += s.probs[i] * c * c;
            }
            return v;
          },
          [&model](const Mixture& mix) {
            double second = 0.0;
            for (std::size_t i = 0; i < mix.components.size(); ++i) {
              const double m = mix.components[i].mean();
              second += mix.weights[i] * (variance(mix.components[i]) + m * m);
            }
            return second - model.mean() * model.mean();
          }},
      model.family());
}

double log_abs_moment(const DistributionModel& model, double p) {
  require(p >= 0.0 && std::isfinite(p), ErrorCode::kDomain,
          "log_abs_moment: order must be finite and >= 0");
  if (p == 0.0) return 0.0;
  return std::visit(
      Overloaded{
          [p](const Gaussian& g) {
            return p * std::log(g.sigma) + 0.5 * p * kLn2 + log_gamma(0.5 * (p + 1.0)) -
                   0.5 * std::log(std::numbers::pi);
          },
          [](const Rademacher&) { return 0.0; },
          [p](const CenteredBernoulli& b) {
            const double terms[] = {std::log(b.p) + p * std::log1p(-b.p),
                                    std::log1p(-b.p) + p * std::log(b.p)};
            return log_sum_exp(terms);
          },
          [p](const Uniform& u) { return p * std::log(u.b) - std::log1p(p); },
          [p](const PolyDensity& d) {
            return std::log1p(d.alpha) - std::log1p(p) - std::log(p + 1.0 + d.alpha);
          },
          [p](const SymBeta& d) {
            return log_beta_fn(p + d.alpha, d.beta) - log_beta_fn(d.alpha, d.beta);
          },
          [p](const SymGamma& d) {
            return log_gamma((d.alpha + p + 1.0) / d.beta) -
                   log_gamma((d.alpha + 1.0) / d.beta);
          },
          [p](const Simple& s) {
            std::vector<double> terms;
            for (std::size_t i = 0; i < s.values.size(); ++i) {
              if (s.values[i] != 0.0 && s.probs[i] > 0.0) {
                terms.push_back(std::log(s.probs[i]) + p * std::log(std::abs(s.values[i])));
              }
            }
            return terms.empty() ? kNegInf : log_sum_exp(terms);
          },
          [p](const Mixture& mix) {
            std::vector<double> terms;
            for (std::size_t i = 0; i < mix.components.size(); ++i) {
              if (mix.weights[i] > 0.0) {
                terms.push_back(std::log(mix.weights[i]) +
                                log_abs_moment(mix.components[i], p));
              }
            }
            return log_sum_exp(terms);
          }},
      model.family());
}

double even_moment(const DistributionModel& model, int k) {
  require(k >= 0, ErrorCode::kDomain, "even_moment: k must be >= 0");
  if (k == 0) return 1.0;
  if (const auto* r = model.as<Rademacher>()) {
    (void)r;
    return 1.0;
  }
  if (const auto* s = model.as<Simple>()) {
    double m = 0.0;
    for (std::size_t i = 0; i < s->values.size(); ++i) {
      m += s->probs[i] * std::pow(s->values[i], 2 * k);
    }
    require(std::isfinite(m), ErrorCode::kOverflow,
            "even_moment: overflow at k = " + std::to_string(k));
    return m;
  }
  if (const auto* g = model.as<Gaussian>()) {
    // σ^{2k} (2k-1)!! = σ^{2k} (2k)! / (2^k k!)
    const double log_m = 2.0 * k * std::log(g->sigma) + log_factorial(2.0 * k) -
                         k * kLn2 - log_factorial(k);
    require(log_m < 709.0, ErrorCode::kOverflow,
            "even_moment: overflow at k = " + std::to_string(k));
    return std::exp(log_m);
  }
  const double log_m = log_abs_moment(model, 2.0 * k);
  require(log_m < 709.0, ErrorCode::kOverflow,
          "even_moment: overflow at k = " + std::to_string(k));
  return std::exp(log_m);
}

double odd_moment(const DistributionModel& model, int k) {
  require(k >= 0, ErrorCode::kDomain, "odd_moment: k must be >= 0");
  return std::visit(
      Overloaded{
          [k](const CenteredBernoulli& b) {
            return b.p * std::pow(1.0 - b.p, 2 * k + 1) +
                   (1.0 - b.p) * std::pow(-b.p, 2 * k + 1);
          },
          [k](const Simple& s) {
            double m = 0.0;
            for (std::size_t i = 0; i < s.values.size(); ++i) {
              m += s.probs[i] * std::pow(s.values[i], 2 * k + 1);
            }
            return m;
          },
          [k](const Mixture& mix) {
            double m = 0.0;
            for (std::size_t i = 0; i < mix.components.size(); ++i) {
              m += mix.weights[i] * odd_moment(mix.components[i], k);
            }
            return m;
          },
          [](const auto&) { return 0.0; }},
      model.family());
}

double log_mgf(const DistributionModel& model, double lambda, double tol) {
  require(std::isfinite(lambda), ErrorCode::kDomain, "log_mgf: lambda must be finite");
  require(tol > 0.0, ErrorCode::kDomain, "log_mgf: tol must be positive");
  return std::visit(
      Overloaded{
          [lambda](const Gaussian& g) { return 0.5 * lambda * lambda * (g.sigma * g.sigma); },
          [lambda](const Rademacher&) { return log_cosh(lambda); },
          [lambda](const CenteredBernoulli& b) {
            const double terms[] = {std::log(b.p) + lambda * (1.0 - b.p),
                                    std::log1p(-b.p) - lambda * b.p};
            return log_sum_exp(terms);
          },
          [lambda](const Uniform& u) { return log_sinhc(u.b * lambda); },
          [lambda, tol](const PolyDensity& d) {
            return series_log_mgf(
                [&d](int k) {
                  const double two_k = 2.0 * k;
                  return std::log((two_k + 1.0) * (two_k + 1.0 + d.alpha) /
                                  ((two_k + 3.0) * (two_k + 3.0 + d.alpha)));
                },
                lambda, tol);
          },
          [lambda, tol](const SymBeta& d) {
            return series_log_mgf(
                [&d](int k) {
                  const double x = 2.0 * k + d.alpha;
                  return std::log(x * (x + 1.0) / ((x + d.beta) * (x + d.beta + 1.0)));
                },
                lambda, tol);
          },
          [lambda, tol](const SymGamma& g) { return sym_gamma_log_mgf(g, lambda, tol); },
          [lambda](const Simple& s) {
            std::vector<double> terms;
            for (std::size_t i = 0; i < s.values.size(); ++i) {
              if (s.probs[i] > 0.0) terms.push_back(std::log(s.probs[i]) + lambda * s.values[i]);
            }
            return log_sum_exp(terms);
          },
          [lambda, tol](const Mixture& mix) {
            std::vector<double> terms;
            const double component_tol = tol;
            for (std::size_t i = 0; i < mix.components.size(); ++i) {
              if (mix.weights[i] > 0.0) {
                terms.push_back(std::log(mix.weights[i]) +
                                log_mgf(mix.components[i], lambda, component_tol));
              }
            }
            return log_sum_exp(terms);
          }},
      model.family());
}

double draw(const DistributionModel& model, Xoshiro256& rng) {
  return std::visit(
      Overloaded{
          [&rng](const Gaussian& g) { return g.sigma * rng.normal(); },
          [&rng](const Rademacher&) { return rng.sign(); },
          [&rng](const CenteredBernoulli& b) {
            return rng.uniform() < b.p ? 1.0 - b.p : -b.p;
          },
          [&rng](const Uniform& u) { return u.b * (2.0 * rng.uniform() - 1.0); },
          [&rng](const PolyDensity& d) {
            // |ξ| = U · W^{1/(α+1)}: the density of |ξ| is ∫_x^1 (α+1) t^{α-1} dt.
            const double sign = rng.sign();
            const double u = rng.uniform();
            const double w = rng.uniform();
            return sign * u * std::pow(w, 1.0 / (d.alpha + 1.0));
          },
          [&rng](const SymBeta& d) {
            const double sign = rng.sign();
            return sign * rng.beta(d.alpha, d.beta);
          },
          [&rng](const SymGamma& d) {
            const double sign = rng.sign();
            return sign * std::pow(rng.gamma((d.alpha + 1.0) / d.beta), 1.0 / d.beta);
          },
          [&rng](const Simple& s) { return s.values[pick_index(s.probs, rng.uniform())]; },
          [&rng](const Mixture& mix) {
            return draw(mix.components[pick_index(mix.weights, rng.uniform())], rng);
          }},
      model.family());
}

std::vector<double> sample(const DistributionModel& model, std::uint64_t seed,
                           std::size_t n, unsigned threads) {
  require(n >= 1, ErrorCode::kDomain, "sample: n must be >= 1");
  std::vector<double> out(n);
  detail::for_each_chunk((n + kSampleChunk - 1) / kSampleChunk, threads, [&](std::size_t chunk) {
    Xoshiro256 rng(derive_stream_seed(seed, chunk));
    const std::size_t begin = chunk * kSampleChunk;
    const std::size_t end = std::min(n, begin + kSampleChunk);
    for (std::size_t i = begin; i < end; ++i) out[i] = draw(model, rng);
  });
  return out;
}

std::optional<double> support_bound(const DistributionModel& model) {
  return std::visit(
      Overloaded{
          [](const Gaussian&) -> std::optional<double> { return std::nullopt; },
          [](const SymGamma&) -> std::optional<double> { return std::nullopt; },
          [](const Rademacher&) -> std::optional<double> { return 1.0; },
          [](const CenteredBernoulli& b) -> std::optional<double> {
            return std::max(b.p, 1.0 - b.p);
          },
          [](const Uniform& u) -> std::optional<double> { return u.b; },
          [](const PolyDensity&) -> std::optional<double> { return 1.0; },
          [](const SymBeta&) -> std::optional<double> { return 1.0; },
          [](const Simple& s) -> std::optional<double> {
            double bound = 0.0;
            for (std::size_t i = 0; i < s.values.size(); ++i) {
              if (s.probs[i] > 0.0) bound = std::max(bound, std::abs(s.values[i]));
            }
            return bound;
          },
          [](const Mixture& mix) -> std::optional<double> {
            double bound = 0.0;
            for (std::size_t i = 0; i < mix.components.size(); ++i) {
              if (mix.weights[i] == 0.0) continue;
              const auto b = support_bound(mix.components[i]);
              if (!b) return std::nullopt;
              bound = std::max(bound, *b);
            }
            return bound;
          }},
      model.family());
}

std::optional<double> density(const DistributionModel& model, double x) {
  const double ax = std::abs(x);
  return std::visit(
      Overloaded{
          [x](const Gaussian& g) -> std::optional<double> {
            const double z = x / g.sigma;
            return std::exp(-0.5 * z * z) / (g.sigma * std::sqrt(2.0 * std::numbers::pi));
          },
          [ax](const Uniform& u) -> std::optional<double> {
            return ax < u.b ? 0.5 / u.b : 0.0;
          },
          [ax](const PolyDensity& d) -> std::optional<double> {
            if (ax > 1.0) return 0.0;
            if (ax == 0.0) {
              return d.alpha == 0.0 ? std::numeric_limits<double>::infinity()
                                    : (d.alpha + 1.0) / (2.0 * d.alpha);
            }
            // (1 - |x|^α)/α → -ln|x| as α → 0.
            const double log_x = std::log(ax);
            const double ratio = d.alpha == 0.0 ? -log_x : -std::expm1(d.alpha * log_x) / d.alpha;
            return 0.5 * (d.alpha + 1.0) * ratio;
          },
          [ax](const SymBeta& d) -> std::optional<double> {
            if (ax >= 1.0) return 0.0;
            if (ax == 0.0) {
              if (d.alpha < 1.0) return std::numeric_limits<double>::infinity();
              if (d.alpha > 1.0) return 0.0;
              return 0.5 / beta_fn(d.alpha, d.beta);
            }
            return 0.5 * std::exp((d.alpha - 1.0) * std::log(ax) +
                                  (d.beta - 1.0) * std::log1p(-ax) -
                                  log_beta_fn(d.alpha, d.beta));
          },
          [ax](const SymGamma& d) -> std::optional<double> {
            if (ax == 0.0) {
              if (d.alpha < 0.0) return std::numeric_limits<double>::infinity();
              if (d.alpha > 0.0) return 0.0;
            }
            const double log_x = ax == 0.0 ? 0.0 : std::log(ax);
            return 0.5 * d.beta *
                   std::exp((ax == 0.0 ? 0.0 : d.alpha * log_x) - std::pow(ax, d.beta) -
                            log_gamma((d.alpha + 1.0) / d.beta));
          },
          [x](const Mixture& mix) -> std::optional<double> {
            double total = 0.0;
            for (std::size_t i = 0; i < mix.components.size(); ++i) {
              if (mix.weights[i] == 0.0) continue;
              const auto f = density(mix.components[i], x);
              if (!f) return std::nullopt;
              total += mix.weights[i] * *f;
            }
            return total;
          },
          [](const auto&) -> std::optional<double> { return std::nullopt; }},
      model.family());
}

}  // namespace subgauss
