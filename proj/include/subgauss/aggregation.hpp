#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "subgauss/distribution.hpp"
#include "subgauss/norms.hpp"
#include "subgauss/rng.hpp"

namespace subgauss {

/// sqrt(Σ τ_j²), the norm bound for a sum of independent centered terms.
double independent_sum_norm(std::span<const double> norms);

/// exp(-x²/2) bounding P(S(n)/Σ(n) > x).
double sum_tail_bound(double sigma_n, double x);

struct CltLowerBound {
  double gaussian_tail = 0.0;  ///< P(Z > x)
  double envelope = 0.0;       ///< exp(-x²/2) / (2 sqrt(2π) x)
};

/// Limiting Gaussian tail and its elementary lower envelope, x >= 1.
CltLowerBound clt_lower_bound(double x);

enum class GnMode { kSup, kInf };

std::string_view to_string(GnMode mode);
GnMode parse_gn_mode(std::string_view text);

/// h(μ) = [μ^{-1} ln(Σ e^{μ y_j} - (n - 1))]^{1/2}.
double gn_profile(std::span<const double> ys, double mu);

/// Infimum or supremum of h over μ > 0, including the limits sqrt(Σ y_j)
/// (μ → 0+) and sqrt(max y_j) (μ → ∞).
double g_n(std::span<const double> ys, GnMode mode = GnMode::kSup, double tol = 1e-9);

/// Grid points μ_i (ascending) where h(μ_{i+1}) > h(μ_i); empty when h is
/// non-increasing on the scan.
std::vector<double> gn_monotonicity_violations(std::span<const double> ys);

/// Two-point conditional law of η_j on its cell: `hi` with probability
/// `prob_hi`, `lo` otherwise, with zero conditional mean.
struct CellValues {
  double hi = 1.0;
  double lo = -1.0;
  double prob_hi = 0.5;
};

/// Disjoint family η_j = η_j 1(A_j) with pairwise disjoint cells A_j.
struct DisjointFamilySpec {
  std::vector<double> cell_probs;
  std::vector<CellValues> cell_values;
  /// Upper bounds on ||η_j||Sub.
  std::vector<double> betas;
};

/// Validates the spec; when `betas` is empty each β_j is computed as the
/// numeric subgaussian norm of η_j.
DisjointFamilySpec make_disjoint_family(std::vector<double> cell_probs,
                                        std::vector<CellValues> cell_values,
                                        std::vector<double> betas = {});

/// Two-point centered cell law with values hi and lo (hi > 0 > lo).
CellValues centered_cell(double hi, double lo);

/// Law of η_j (zero outside its cell).
DistributionModel disjoint_member(const DisjointFamilySpec& spec, std::size_t j);

/// Exact law of S(n) = Σ η_j.
DistributionModel disjoint_sum_model(const DisjointFamilySpec& spec);

/// g_n applied to the squared betas. Independent of the cell probabilities.
double disjoint_sum_norm(const DisjointFamilySpec& spec, GnMode mode = GnMode::kSup);

/// (Σ a_j^B)^{1/B}, or max a_j for B = ∞.
double gls_disjoint_combine(std::span<const double> norms,
                            double B = std::numeric_limits<double>::infinity());

/// Compares the true G(ψ) norm of η_1 + η_2 with the combined bound for a
/// two-cell disjoint family.
struct DisjointGlsCheck {
  double sum_norm = 0.0;
  double combined_bound = 0.0;
  std::vector<double> member_norms;
  bool bound_holds = false;
};

DisjointGlsCheck check_disjoint_gls(const DisjointFamilySpec& spec, const PsiFunction& psi,
                                    double p_cap = 400.0);

/// Rule producing ξ(j) from the past increments ξ(1..j-1) and fresh
/// randomness. Must respect |ξ(j)|'s conditional norm θ(j) for every history.
using StepRule = std::function<double(std::span<const double> history, Xoshiro256& fresh)>;

struct MartingaleSpec {
  std::vector<double> step_norms;  ///< θ(j), j = 1..n
  StepRule step;
  /// Optional a.s. bounds |ξ(j)| <= envelopes[j], checked during simulation.
  std::vector<double> envelopes;

  std::size_t n() const { return step_norms.size(); }
};

/// ξ(j) = c_j(history) ρ_j with ρ_j Rademacher and |c_j| <= θ(j); the
/// conditional norm of each step is |c_j| <= θ(j).
MartingaleSpec scaled_rademacher_martingale(
    std::vector<double> thetas,
    std::function<double(std::size_t j, std::span<const double> history)> coefficient);

/// Δ(n) = sqrt(Σ θ(j)²).
double martingale_norm_bound(const MartingaleSpec& spec);

/// exp(-x²/2) bounding P(X(n)/Δ(n) > x).
double martingale_tail_bound(double delta_n, double x);

struct MixtureBound {
  double value = 0.0;
  /// Equal component norms and every component strictly subgaussian.
  bool strict = false;
};

/// max_i τ_i over components with positive weight.
MixtureBound mixture_norm_bound(std::span<const double> component_norms,
                                std::span<const double> weights,
                                const std::vector<bool>& component_strict = {});

}  // namespace subgauss
