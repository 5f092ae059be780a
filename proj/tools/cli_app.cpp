#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "subgauss/aggregation.hpp"
#include "subgauss/json_io.hpp"
#include "subgauss/mc_verify.hpp"
#include "subgauss/norms.hpp"
#include "subgauss/ssub.hpp"

namespace subgauss::cli {
namespace {

using nlohmann::json;

struct Options {
  std::string output = "json";
  std::optional<std::uint64_t> seed;

  std::string dist;
  std::optional<double> lambda_cap;
  double tol = kScanTol;
  int k_max = 50;

  std::vector<double> ys;
  std::string mode = "sup";

  std::vector<double> norms;
  std::vector<std::string> dists;
  std::vector<double> thetas;
  std::vector<double> xs;

  std::string kind = "single";
  std::optional<double> norm;
  std::size_t count = 30;
  std::vector<double> cell_probs;
  std::size_t n_samples = 200000;
  double delta = 0.01;
  unsigned threads = 1;

  double alpha = 0.0;
  double beta = 3.0;
};

// Inline JSON when the argument starts with '{', otherwise a file path.
DistributionModel load_dist(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  require(first != std::string::npos, ErrorCode::kMalformedJson, "empty distribution spec");
  if (arg[first] == '{') return parse_distribution_text(arg);
  std::ifstream in(arg);
  require(in.good(), ErrorCode::kInvalidParameter, "cannot read distribution spec file '" + arg + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_distribution_text(buffer.str());
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t value = 0;
  std::size_t used = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == text.size() && !text.empty() && text.front() != '-', ErrorCode::kInvalidParameter,
          "SUBGAUSS_SEED must be a non-negative integer");
  return value;
}

json envelope(const std::string& command, std::uint64_t seed, json tolerances, json result) {
  return {{"tool", "subgauss"},
          {"version", std::string(kToolVersion)},
          {"schema_version", std::string(kSchemaVersion)},
          {"command", command},
          {"seed", seed},
          {"tolerances", std::move(tolerances)},
          {"gn_mode", nullptr},
          {"notes", json::array()},
          {"result", std::move(result)}};
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ';';
      out += scalar_text(v[i]);
    }
    return out;
  }
  if (v.is_object()) return v.dump();
  return v.dump();
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

std::string render_rows(const json& report, bool csv) {
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("seed", scalar_text(report["seed"]));
  if (!report["gn_mode"].is_null()) rows.emplace_back("gn_mode", scalar_text(report["gn_mode"]));
  for (const auto& [key, value] : report["result"].items()) rows.emplace_back(key, scalar_text(value));
  std::ostringstream out;
  if (csv) {
    out << "key,value\n";
    for (const auto& [key, value] : rows) out << key << ',' << csv_field(value) << '\n';
    return out.str();
  }
  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.first.size());
  for (const auto& [key, value] : rows) {
    out << std::left << std::setw(static_cast<int>(width + 2)) << key << value << '\n';
  }
  return out.str();
}

std::string render(const json& report, const std::string& format,
                   const std::optional<BoundCheckReport>& check) {
  if (format == "json") return report.dump(2) + "\n";
  if (format == "csv" && check) return to_csv(*check);
  return render_rows(report, format == "csv");
}

std::vector<double> default_xs() { return {0.5, 1.0, 1.5, 2.0, 2.5}; }

McConfig mc_config(const Options& o, std::uint64_t seed) {
  return {seed, o.n_samples, o.delta, o.threads};
}

json run_norm(const Options& o, std::uint64_t seed) {
  const auto model = load_dist(o.dist);
  const auto est = o.lambda_cap ? sub_norm_numeric(model, o.tol, o.lambda_cap) : sub_norm(model, o.tol);
  json result = to_json(est);
  result["distribution"] = to_json(model);
  result["sigma"] = std::sqrt(variance(model));
  return envelope("norm", seed, {{"scan_tol", o.tol}, {"closed_form_tol", kClosedFormTol}},
                  std::move(result));
}

json run_ssub(const Options& o, std::uint64_t seed) {
  const auto model = load_dist(o.dist);
  const auto report = analyze_ssub(model, o.lambda_cap, o.tol, o.k_max);
  json result = to_json(report);
  result["distribution"] = to_json(model);
  json out = envelope("ssub", seed, {{"dominance_tol", o.tol}, {"k_max", o.k_max}}, std::move(result));
  out["notes"] = report.notes;
  return out;
}

json run_gn(const Options& o, std::uint64_t seed) {
  const GnMode mode = parse_gn_mode(o.mode);
  const double value = g_n(o.ys, mode);
  double sum = 0.0;
  for (double y : o.ys) sum += y;
  json result = {{"value", value},
                 {"ys", o.ys},
                 {"sqrt_sum", std::sqrt(sum)},
                 {"sqrt_max", std::sqrt(*std::max_element(o.ys.begin(), o.ys.end()))}};
  json out = envelope("gn", seed, {{"gn_tol", 1e-9}}, std::move(result));
  out["gn_mode"] = std::string(to_string(mode));
  if (mode == GnMode::kInf) {
    out["notes"].push_back("inf mode is experimental: it is not a proven upper bound on the norm");
  }
  return out;
}

json tail_rows(double (*bound)(double, double), double scale, const std::vector<double>& xs) {
  json rows = json::array();
  for (double x : xs) rows.push_back({{"x", x}, {"bound", bound(scale, x)}});
  return rows;
}

json run_sum_bound(const Options& o, std::uint64_t seed) {
  std::vector<double> norms = o.norms;
  json sources = json::array();
  for (const auto& d : o.dists) {
    const auto model = load_dist(d);
    require(model.is_centered(), ErrorCode::kNonCenteredModel, "sum-bound: models must be centered");
    norms.push_back(sub_norm(model).value);
    sources.push_back(to_json(model));
  }
  const double sigma_n = independent_sum_norm(norms);
  json result = {{"sigma_n", sigma_n},
                 {"norms", norms},
                 {"distributions", std::move(sources)},
                 {"tail", tail_rows(sum_tail_bound, sigma_n, o.xs.empty() ? default_xs() : o.xs)}};
  return envelope("sum-bound", seed, {{"scan_tol", kScanTol}}, std::move(result));
}

json run_martingale_bound(const Options& o, std::uint64_t seed) {
  const auto spec = scaled_rademacher_martingale(o.thetas, [](std::size_t, std::span<const double>) {
    return 1.0;
  });
  const double delta_n = martingale_norm_bound(spec);
  json result = {{"delta_n", delta_n},
                 {"thetas", o.thetas},
                 {"tail", tail_rows(martingale_tail_bound, delta_n,
                                    o.xs.empty() ? default_xs() : o.xs)}};
  return envelope("martingale-bound", seed, json::object(), std::move(result));
}

json run_mixture(const Options& o, std::uint64_t seed) {
  const auto model = load_dist(o.dist);
  const auto* mix = model.as<Mixture>();
  require(mix != nullptr, ErrorCode::kInvalidParameter, "mixture: spec must have family 'mixture'");
  std::vector<double> norms;
  std::vector<bool> flags;
  for (const auto& c : mix->components) {
    norms.push_back(sub_norm(c, o.tol).value);
    flags.push_back(analyze_ssub(c, std::nullopt, 1e-6, o.k_max).verdict ==
                    SsubVerdict::kStrictlySubgaussian);
  }
  const auto bound = mixture_norm_bound(norms, mix->weights, flags);
  const auto numeric = sub_norm_numeric(model, o.tol, o.lambda_cap);
  json result = {{"bound", bound.value},
                 {"strict", bound.strict},
                 {"component_norms", norms},
                 {"component_strict", flags},
                 {"numeric_norm", to_json(numeric)},
                 {"distribution", to_json(model)}};
  return envelope("mixture", seed, {{"scan_tol", o.tol}}, std::move(result));
}

json run_verify(const Options& o, std::uint64_t seed, std::optional<BoundCheckReport>& check) {
  const McConfig cfg = mc_config(o, seed);
  const auto xs = o.xs.empty() ? default_xs() : o.xs;
  std::optional<std::string> mode;
  if (o.kind == "single") {
    const auto model = load_dist(o.dist);
    const double norm = o.norm ? *o.norm : sub_norm(model).value;
    check = verify_single_tail(model, norm, xs, cfg);
  } else if (o.kind == "sum") {
    const auto model = load_dist(o.dist);
    require(o.count >= 1, ErrorCode::kInvalidParameter, "verify: --count must be >= 1");
    const std::vector<DistributionModel> models(o.count, model);
    check = verify_independent_sum(models, xs, cfg);
  } else if (o.kind == "martingale") {
    const auto spec = scaled_rademacher_martingale(
        o.thetas, [thetas = o.thetas](std::size_t j, std::span<const double>) { return thetas[j]; });
    check = verify_martingale(spec, xs, cfg);
  } else if (o.kind == "disjoint") {
    std::vector<CellValues> cells(o.cell_probs.size(), centered_cell(1.0, -1.0));
    const auto spec = make_disjoint_family(o.cell_probs, std::move(cells));
    const GnMode gn = parse_gn_mode(o.mode);
    check = verify_disjoint_sum(spec, gn, xs, cfg);
    mode = std::string(to_string(gn));
  } else {
    fail(ErrorCode::kInvalidParameter, "verify: unknown kind '" + o.kind + "'");
  }
  json out = envelope("verify", seed, {{"delta", cfg.delta}, {"band_halfwidth", check->band_halfwidth}},
                      to_json(*check));
  out["notes"] = check->notes;
  if (mode) out["gn_mode"] = *mode;
  return out;
}

json run_constants(const Options& o, std::uint64_t seed) {
  json result = {{"alpha", o.alpha}, {"beta", o.beta}, {"gamma_constants", nullptr}};
  json notes = json::array();
  if (o.beta > 2.0) {
    result["gamma_constants"] = to_json(gamma_ssub_constants(o.alpha, o.beta));
  } else {
    notes.push_back("gamma constants require beta > 2");
  }
  if (o.beta >= 2.0) result["necessary_condition"] = gamma_necessary_condition(o.alpha, o.beta);
  const auto limit = necessary_limit_root_report();
  result["limit_root"] = to_json(limit);
  notes.push_back(limit.note);
  json out = envelope("constants", seed, {{"root_tol", 1e-12}}, std::move(result));
  out["notes"] = std::move(notes);
  return out;
}

CliResult error_result(const Error& e) {
  return {e.is_internal() ? 2 : 1, error_json(e).dump(2) + "\n"};
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args, const std::optional<std::string>& env_seed) {
  Options o;
  CLI::App app{"Subgaussian norms, strict-subgaussianity tests and Monte Carlo bound checks",
               "subgauss"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--output", o.output, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--seed", o.seed, "Monte Carlo seed (overrides SUBGAUSS_SEED)");

  auto* norm = app.add_subcommand("norm", "Subgaussian norm of a distribution");
  norm->add_option("--dist", o.dist, "Distribution spec: inline JSON or file path")->required();
  norm->add_option("--lambda-cap", o.lambda_cap, "Force a numeric scan up to this |lambda|");
  norm->add_option("--tol", o.tol, "Scan tolerance");

  auto* ssub = app.add_subcommand("ssub", "Strict-subgaussianity verdict");
  ssub->add_option("--dist", o.dist, "Distribution spec")->required();
  ssub->add_option("--lambda-cap", o.lambda_cap, "Upper end of the lambda scan");
  ssub->add_option("--tol", o.tol, "Dominance tolerance");
  ssub->add_option("--k-max", o.k_max, "Highest moment order checked");

  auto* gn = app.add_subcommand("gn", "G_n of positive numbers");
  gn->add_option("--ys", o.ys, "Comma-separated positive values")->required()->delimiter(',');
  gn->add_option("--mode", o.mode, "sup or inf")->check(CLI::IsMember({"sup", "inf"}));

  auto* sum = app.add_subcommand("sum-bound", "Norm and tail bound of an independent sum");
  sum->add_option("--norms", o.norms, "Comma-separated component norms")->delimiter(',');
  sum->add_option("--dist", o.dists, "Component distribution spec (repeatable)");
  sum->add_option("--x", o.xs, "Abscissae")->delimiter(',');

  auto* mart = app.add_subcommand("martingale-bound", "Azuma-type bound from step norms");
  mart->add_option("--thetas", o.thetas, "Comma-separated conditional step norms")
      ->required()
      ->delimiter(',');
  mart->add_option("--x", o.xs, "Abscissae")->delimiter(',');

  auto* mix = app.add_subcommand("mixture", "Norm bound for a mixture");
  mix->add_option("--dist", o.dist, "Mixture spec")->required();
  mix->add_option("--lambda-cap", o.lambda_cap, "Upper end of the lambda scan");
  mix->add_option("--tol", o.tol, "Scan tolerance");

  auto* verify = app.add_subcommand("verify", "Monte Carlo check of a tail bound");
  verify->add_option("--kind", o.kind, "single, sum, martingale or disjoint")
      ->check(CLI::IsMember({"single", "sum", "martingale", "disjoint"}));
  verify->add_option("--dist", o.dist, "Distribution spec (single, sum)");
  verify->add_option("--norm", o.norm, "Norm used in the bound (single)");
  verify->add_option("--count", o.count, "Number of i.i.d. terms (sum)");
  verify->add_option("--thetas", o.thetas, "Step norms (martingale)")->delimiter(',');
  verify->add_option("--cell-probs", o.cell_probs, "Cell probabilities (disjoint)")->delimiter(',');
  verify->add_option("--mode", o.mode, "g_n mode (disjoint)")->check(CLI::IsMember({"sup", "inf"}));
  verify->add_option("--x", o.xs, "Abscissae")->delimiter(',');
  verify->add_option("--n-samples", o.n_samples, "Monte Carlo sample size");
  verify->add_option("--delta", o.delta, "Band confidence parameter");
  verify->add_option("--threads", o.threads, "Worker threads");

  auto* constants = app.add_subcommand("constants", "Constants of the symmetrized-gamma criterion");
  constants->add_option("--alpha", o.alpha, "alpha > -1");
  constants->add_option("--beta", o.beta, "beta");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {0, app.help()};
  } catch (const CLI::ParseError& e) {
    return error_result(Error(ErrorCode::kUsage, e.what()));
  }

  try {
    std::uint64_t seed = kDefaultSeed;
    if (env_seed) seed = parse_seed(*env_seed);
    if (o.seed) seed = *o.seed;

    std::optional<BoundCheckReport> check;
    json report;
    if (norm->parsed()) report = run_norm(o, seed);
    if (ssub->parsed()) report = run_ssub(o, seed);
    if (gn->parsed()) report = run_gn(o, seed);
    if (sum->parsed()) report = run_sum_bound(o, seed);
    if (mart->parsed()) report = run_martingale_bound(o, seed);
    if (mix->parsed()) report = run_mixture(o, seed);
    if (verify->parsed()) report = run_verify(o, seed, check);
    if (constants->parsed()) report = run_constants(o, seed);
    return {0, render(report, o.output, check)};
  } catch (const Error& e) {
    return error_result(e);
  } catch (const std::exception& e) {
    return error_result(Error(ErrorCode::kNumericFailure, e.what()));
  }
}

}  // namespace subgauss::cli
