#include "subgauss/mc_verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "parallel.hpp"
#include "subgauss/errors.hpp"
#include "subgauss/norms.hpp"
#include "subgauss/rng.hpp"

namespace subgauss {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

BoundCheckReport make_report(std::string label, double norm, std::span<const double> xs,
                             const McConfig& cfg) {
  BoundCheckReport r;
  r.label = std::move(label);
  r.rng = std::string(kRngAlgorithm);
  r.seed = cfg.seed;
  r.n_samples = cfg.n_samples;
  r.delta = cfg.delta;
  r.norm = norm;
  r.abscissae.assign(xs.begin(), xs.end());
  r.band_halfwidth = hoeffding_band(cfg.n_samples, cfg.delta);
  return r;
}

double empirical_lower_tail(std::span<const double> samples, double x) {
  const auto below = std::count_if(samples.begin(), samples.end(), [x](double s) { return s < -x; });
  return static_cast<double>(below) / static_cast<double>(samples.size());
}

// Fills the empirical columns and verdicts; `bound(x)` is the analytic tail
// and `scale` standardizes x for the deep-tail rule.
template <class Bound>
void evaluate(BoundCheckReport& r, std::span<const double> samples, Bound bound, double scale) {
  for (double x : r.abscissae) {
    const double up = empirical_tail(samples, x);
    const double down = empirical_lower_tail(samples, x);
    const double emp = std::max(up, down);
    const double b = bound(x);
    r.empirical_upper.push_back(up);
    r.empirical_lower.push_back(down);
    r.empirical.push_back(emp);
    r.analytic_bound.push_back(b);
    r.verdicts.push_back(classify(emp, r.band_halfwidth, b, scale > 0.0 ? x / scale : x));
    r.clt_envelope.push_back(kNaN);
  }
  if (std::any_of(r.abscissae.begin(), r.abscissae.end(),
                  [scale](double x) { return (scale > 0.0 ? x / scale : x) > kDeepTailCutoff; })) {
    r.notes.push_back("abscissae beyond the deep-tail cutoff are reported indeterminate");
  }
}

void check_xs(std::span<const double> xs) {
  require(!xs.empty(), ErrorCode::kEmptyInput, "no abscissae given");
  for (double x : xs) {
    require(std::isfinite(x) && x >= 0.0, ErrorCode::kDomain, "abscissae must be finite and >= 0");
  }
}

}  // namespace

void validate(const McConfig& cfg) {
  require(cfg.n_samples >= 10000, ErrorCode::kInvalidParameter, "n_samples must be >= 10000");
  require(cfg.delta > 0.0 && cfg.delta < 0.5, ErrorCode::kInvalidParameter,
          "delta must lie in (0, 0.5)");
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kIndeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

std::size_t BoundCheckReport::count(Verdict v) const {
  return static_cast<std::size_t>(std::count(verdicts.begin(), verdicts.end(), v));
}

double empirical_tail(std::span<const double> samples, double x) {
  require(!samples.empty(), ErrorCode::kEmptyInput, "empirical_tail: no samples");
  const auto above = std::count_if(samples.begin(), samples.end(), [x](double s) { return s > x; });
  return static_cast<double>(above) / static_cast<double>(samples.size());
}

double hoeffding_band(std::size_t n, double delta) {
  require(n >= 1, ErrorCode::kDomain, "hoeffding_band: n must be >= 1");
  require(delta > 0.0 && delta < 1.0, ErrorCode::kDomain, "hoeffding_band: delta must lie in (0, 1)");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

Verdict classify(double empirical, double band, double bound, double standardized_x) {
  if (empirical - band > bound) return Verdict::kFail;
  if (standardized_x > kDeepTailCutoff) return Verdict::kIndeterminate;
  if (empirical + band <= bound) return Verdict::kPass;
  return Verdict::kIndeterminate;
}

BoundCheckReport verify_single_tail(const DistributionModel& model, double norm,
                                    std::span<const double> xs, const McConfig& cfg) {
  validate(cfg);
  check_xs(xs);
  require(std::isfinite(norm) && norm > 0.0, ErrorCode::kDomain, "norm must be positive");
  auto r = make_report("single_tail:" + std::string(model.family_name()), norm, xs, cfg);
  const auto samples = sample(model, cfg.seed, cfg.n_samples, cfg.threads);
  evaluate(r, samples, [norm](double x) { return tail_bound(norm, x); }, norm);
  return r;
}

BoundCheckReport verify_independent_sum(std::span<const DistributionModel> models,
                                        std::span<const double> xs, const McConfig& cfg) {
  validate(cfg);
  check_xs(xs);
  require(!models.empty(), ErrorCode::kEmptyInput, "verify_independent_sum: no models");
  std::vector<double> taus;
  for (const auto& m : models) {
    require(m.is_centered(), ErrorCode::kNonCenteredModel, "independent sum: models must be centered");
    taus.push_back(sub_norm(m).value);
  }
  const double sigma_n = independent_sum_norm(taus);
  require(sigma_n > 0.0, ErrorCode::kDomain, "independent sum: all norms are zero");

  std::vector<double> sums(cfg.n_samples, 0.0);
  for (std::size_t j = 0; j < models.size(); ++j) {
    const auto draws = sample(models[j], derive_stream_seed(cfg.seed, j), cfg.n_samples, cfg.threads);
    for (std::size_t i = 0; i < sums.size(); ++i) sums[i] += draws[i];
  }
  for (double& s : sums) s /= sigma_n;

  auto r = make_report("independent_sum:n=" + std::to_string(models.size()), sigma_n, xs, cfg);
  evaluate(r, sums, [](double x) { return std::exp(-0.5 * x * x); }, 1.0);

  const bool iid = std::all_of(models.begin(), models.end(),
                               [&](const DistributionModel& m) { return m == models.front(); });
  if (!iid) return r;
  r.notes.push_back("i.i.d. input: Sigma(n) equals beta*sqrt(n)");
  const double sd = std::sqrt(variance(models.front()));
  const bool strict = std::abs(taus.front() - sd) <= 1e-9 * std::max(sd, 1e-300);
  if (!strict) return r;
  for (std::size_t i = 0; i < r.abscissae.size(); ++i) {
    const double x = r.abscissae[i];
    if (x < 1.0 || x > kDeepTailCutoff) continue;
    r.clt_envelope[i] = clt_lower_bound(x).envelope;
    if (r.empirical_upper[i] < r.clt_envelope[i] - r.band_halfwidth) {
      r.notes.push_back("empirical tail below the CLT envelope at x = " + std::to_string(x));
    }
  }
  return r;
}

BoundCheckReport verify_disjoint_sum(const DisjointFamilySpec& spec, GnMode mode,
                                     std::span<const double> xs, const McConfig& cfg) {
  validate(cfg);
  check_xs(xs);
  const double g = disjoint_sum_norm(spec, mode);
  const GnMode other = mode == GnMode::kSup ? GnMode::kInf : GnMode::kSup;
  const double g_other = disjoint_sum_norm(spec, other);

  const auto samples = sample(disjoint_sum_model(spec), cfg.seed, cfg.n_samples, cfg.threads);
  auto r = make_report("disjoint_sum:n=" + std::to_string(spec.cell_probs.size()), g, xs, cfg);
  r.gn_mode = std::string(to_string(mode));
  evaluate(r, samples, [g](double x) { return tail_bound(g, x); }, g);

  CompanionCheck c;
  c.label = "gn_mode=" + std::string(to_string(other));
  c.norm = g_other;
  for (std::size_t i = 0; i < r.abscissae.size(); ++i) {
    const double b = tail_bound(g_other, r.abscissae[i]);
    c.analytic_bound.push_back(b);
    c.verdicts.push_back(classify(r.empirical[i], r.band_halfwidth, b, r.abscissae[i] / g_other));
  }
  r.companion = std::move(c);
  r.notes.push_back("the inf-mode bound is an experiment; its verdicts are recorded, not presumed");
  return r;
}

std::vector<double> simulate_martingale(const MartingaleSpec& spec, const McConfig& cfg) {
  validate(cfg);
  require(spec.n() >= 1, ErrorCode::kEmptyInput, "martingale: no steps");
  require(static_cast<bool>(spec.step), ErrorCode::kInvalidParameter, "martingale: missing step rule");
  require(spec.envelopes.empty() || spec.envelopes.size() == spec.n(), ErrorCode::kInvalidParameter,
          "martingale: envelopes must match the number of steps");
  const std::size_t n = cfg.n_samples;
  std::vector<double> out(n);
  const std::size_t chunks = (n + kSampleChunk - 1) / kSampleChunk;
  detail::for_each_chunk(chunks, cfg.threads, [&](std::size_t chunk) {
    Xoshiro256 rng(derive_stream_seed(cfg.seed, chunk));
    std::vector<double> history;
    history.reserve(spec.n());
    const std::size_t end = std::min(n, (chunk + 1) * kSampleChunk);
    for (std::size_t i = chunk * kSampleChunk; i < end; ++i) {
      history.clear();
      double total = 0.0;
      for (std::size_t j = 0; j < spec.n(); ++j) {
        const double xi = spec.step(history, rng);
        require(std::isfinite(xi), ErrorCode::kGeneratorContract, "martingale: non-finite step");
        if (!spec.envelopes.empty() && std::abs(xi) > spec.envelopes[j] * (1.0 + 1e-12)) {
          fail(ErrorCode::kGeneratorContract,
               "martingale: step " + std::to_string(j + 1) + " exceeds its envelope");
        }
        history.push_back(xi);
        total += xi;
      }
      out[i] = total;
    }
  });
  return out;
}

BoundCheckReport verify_martingale(const MartingaleSpec& spec, std::span<const double> xs,
                                   const McConfig& cfg) {
  check_xs(xs);
  const double delta_n = martingale_norm_bound(spec);
  require(delta_n > 0.0, ErrorCode::kDomain, "martingale: Delta(n) is zero");
  auto samples = simulate_martingale(spec, cfg);
  for (double& s : samples) s /= delta_n;
  auto r = make_report("martingale:n=" + std::to_string(spec.n()), delta_n, xs, cfg);
  evaluate(r, samples, [](double x) { return std::exp(-0.5 * x * x); }, 1.0);
  return r;
}

std::string to_csv(const BoundCheckReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "x,empirical,band,bound,verdict\n";
  for (std::size_t i = 0; i < report.abscissae.size(); ++i) {
    out << report.abscissae[i] << ',' << report.empirical[i] << ',' << report.band_halfwidth << ','
        << report.analytic_bound[i] << ',' << to_string(report.verdicts[i]) << '\n';
  }
  return out.str();
}

}  // namespace subgauss
