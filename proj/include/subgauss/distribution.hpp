#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "subgauss/rng.hpp"

namespace subgauss {

class DistributionModel;

/// Mean-zero normal with standard deviation sigma.
struct Gaussian {
  double sigma = 1.0;
  bool operator==(const Gaussian&) const = default;
};

/// P(+1) = P(-1) = 1/2.
struct Rademacher {
  bool operator==(const Rademacher&) const = default;
};

/// Centered indicator: 1 - p with probability p, -p with probability 1 - p.
struct CenteredBernoulli {
  double p = 0.5;
  bool operator==(const CenteredBernoulli&) const = default;
};

/// Uniform on (-b, b).
struct Uniform {
  double b = 1.0;
  bool operator==(const Uniform&) const = default;
};

/// Density (alpha + 1)/(2 alpha) (1 - |x|^alpha) on [-1, 1]; alpha = 0 is
/// the limit -ln|x| / 2.
struct PolyDensity {
  double alpha = 0.0;
  bool operator==(const PolyDensity&) const = default;
};

/// Symmetrized beta: density |x|^(alpha-1) (1-|x|)^(beta-1) / (2 B(alpha, beta)).
struct SymBeta {
  double alpha = 1.0;
  double beta = 1.0;
  bool operator==(const SymBeta&) const = default;
};

/// Symmetrized gamma: density beta |x|^alpha exp(-|x|^beta) / (2 Γ((alpha+1)/beta)).
struct SymGamma {
  double alpha = 0.0;
  double beta = 2.0;
  bool operator==(const SymGamma&) const = default;
};

/// Finite atom distribution; need not be centered.
struct Simple {
  std::vector<double> values;
  std::vector<double> probs;
  bool operator==(const Simple&) const = default;
};

/// Finite mixture: draw component i with probability weights[i].
struct Mixture {
  std::vector<DistributionModel> components;
  std::vector<double> weights;
  bool operator==(const Mixture& other) const;
};

/// Immutable, validated distribution value. Construct through the named
/// factories; each checks the family's parameter ranges.
class DistributionModel {
 public:
  using Family = std::variant<Gaussian, Rademacher, CenteredBernoulli, Uniform,
                              PolyDensity, SymBeta, SymGamma, Simple, Mixture>;

  static DistributionModel gaussian(double sigma);
  static DistributionModel rademacher();
  static DistributionModel centered_bernoulli(double p);
  static DistributionModel uniform(double b);
  static DistributionModel poly_density(double alpha);
  static DistributionModel sym_beta(double alpha, double beta);
  static DistributionModel sym_gamma(double alpha, double beta);
  static DistributionModel simple(std::vector<double> values,
                                  std::vector<double> probs);
  static DistributionModel mixture(std::vector<DistributionModel> components,
                                   std::vector<double> weights);

  const Family& family() const noexcept { return family_; }
  std::string_view family_name() const noexcept;

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&family_);
  }

  double mean() const noexcept { return mean_; }
  bool is_centered(double tol = 1e-12) const noexcept;
  /// Symmetric about zero (odd moments vanish).
  bool is_symmetric() const noexcept;

  bool operator==(const DistributionModel& other) const {
    return family_ == other.family_;
  }

 private:
  explicit DistributionModel(Family family);

  Family family_;
  double mean_ = 0.0;
};

double variance(const DistributionModel& model);

/// E ξ^(2k). Throws kOverflow (naming k) when the value is not representable.
double even_moment(const DistributionModel& model, int k);

/// E ξ^(2k+1); zero for symmetric families.
double odd_moment(const DistributionModel& model, int k);

/// ln E|ξ|^p for real p >= 0, closed form for every family.
double log_abs_moment(const DistributionModel& model, double p);

/// ln E exp(λ ξ) with absolute error <= tol. For the symmetrized gamma law
/// at large |λ| the error is instead bounded by a small multiple of the
/// rounding floor eps * |λ| x*, x* being the peak of the integrand. Throws
/// kMgfDivergence when the MGF is infinite at λ.
double log_mgf(const DistributionModel& model, double lambda, double tol = 1e-12);

/// n independent draws, bit-reproducible from `seed`. Draws are produced in
/// fixed-size sub-streams so the result does not depend on scheduling.
std::vector<double> sample(const DistributionModel& model, std::uint64_t seed,
                           std::size_t n, unsigned threads = 1);

/// Single draw from an already-seeded generator.
double draw(const DistributionModel& model, Xoshiro256& rng);

/// ess sup |ξ| when finite.
std::optional<double> support_bound(const DistributionModel& model);

/// Lebesgue density at x for absolutely continuous models; empty for
/// models with atoms.
std::optional<double> density(const DistributionModel& model, double x);

/// Size of the sub-streams used by `sample`.
inline constexpr std::size_t kSampleChunk = 8192;

}  // namespace subgauss
