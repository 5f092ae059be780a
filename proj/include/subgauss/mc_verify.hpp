#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subgauss/aggregation.hpp"
#include "subgauss/distribution.hpp"

namespace subgauss {

struct McConfig {
  std::uint64_t seed = 20240501;
  std::size_t n_samples = 200000;
  double delta = 0.01;
  /// Worker threads; results do not depend on this value.
  unsigned threads = 1;
};

/// Throws kInvalidParameter unless n_samples >= 1e4 and delta lies in (0, 0.5).
void validate(const McConfig& cfg);

enum class Verdict { kPass, kFail, kIndeterminate };

std::string_view to_string(Verdict v);

/// Standardized abscissae beyond this are never reported as a pass.
inline constexpr double kDeepTailCutoff = 4.0;

/// The same samples tested against a second bound (the other g_n mode).
struct CompanionCheck {
  std::string label;
  double norm = 0.0;
  std::vector<double> analytic_bound;
  std::vector<Verdict> verdicts;
};

struct BoundCheckReport {
  std::string label;
  std::string rng;
  std::uint64_t seed = 0;
  std::size_t n_samples = 0;
  double delta = 0.0;
  /// Scale entering the bound: τ, Σ(n), Δ(n) or G_n.
  double norm = 0.0;
  std::optional<std::string> gn_mode;
  std::vector<double> abscissae;
  /// max of the upper and lower empirical tails at each abscissa.
  std::vector<double> empirical;
  std::vector<double> empirical_upper;
  std::vector<double> empirical_lower;
  double band_halfwidth = 0.0;
  std::vector<double> analytic_bound;
  std::vector<Verdict> verdicts;
  /// Gaussian-limit lower envelope (NaN where not evaluated).
  std::vector<double> clt_envelope;
  std::optional<CompanionCheck> companion;
  std::vector<std::string> notes;

  std::size_t count(Verdict v) const;
};

/// Fraction of samples strictly above x.
double empirical_tail(std::span<const double> samples, double x);

/// sqrt(ln(2/δ) / (2n)).
double hoeffding_band(std::size_t n, double delta);

/// pass if emp + band <= bound, fail if emp - band > bound, otherwise
/// indeterminate. Passes beyond the deep-tail cutoff become indeterminate.
Verdict classify(double empirical, double band, double bound, double standardized_x);

BoundCheckReport verify_single_tail(const DistributionModel& model, double norm,
                                    std::span<const double> xs, const McConfig& cfg);

/// Tests S(n)/Σ(n) against exp(-x²/2) with Σ(n) built from sub_norm of each
/// model. Variable j is drawn from stream derive_stream_seed(seed, j).
BoundCheckReport verify_independent_sum(std::span<const DistributionModel> models,
                                        std::span<const double> xs, const McConfig& cfg);

/// Tests the disjoint sum against the g_n bound in `mode`; the other mode is
/// reported as the companion check.
BoundCheckReport verify_disjoint_sum(const DisjointFamilySpec& spec, GnMode mode,
                                     std::span<const double> xs, const McConfig& cfg);

/// n_samples realizations of X(n). Throws kGeneratorContract when a step
/// exceeds its declared envelope.
std::vector<double> simulate_martingale(const MartingaleSpec& spec, const McConfig& cfg);

BoundCheckReport verify_martingale(const MartingaleSpec& spec, std::span<const double> xs,
                                   const McConfig& cfg);

/// Rows "x,empirical,band,bound,verdict".
std::string to_csv(const BoundCheckReport& report);

}  // namespace subgauss
