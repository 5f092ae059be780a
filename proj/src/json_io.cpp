#include "subgauss/json_io.hpp"

#include <cmath>
#include <set>
#include <string>

namespace subgauss {
namespace {

using nlohmann::json;

void check_fields(const json& spec, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : spec.items()) {
    if (key == "family") continue;
    require(allowed.count(key) > 0, ErrorCode::kUnknownField,
            "unknown field '" + key + "' for family " + spec["family"].get<std::string>());
  }
}

double number_field(const json& spec, const char* name) {
  require(spec.contains(name), ErrorCode::kInvalidParameter,
          std::string("missing field '") + name + "'");
  const json& v = spec[name];
  require(v.is_number(), ErrorCode::kInvalidParameter,
          std::string("field '") + name + "' must be a number");
  return v.get<double>();
}

std::vector<double> number_list(const json& spec, const char* name) {
  require(spec.contains(name), ErrorCode::kInvalidParameter,
          std::string("missing field '") + name + "'");
  const json& v = spec[name];
  require(v.is_array(), ErrorCode::kInvalidParameter,
          std::string("field '") + name + "' must be an array");
  std::vector<double> out;
  for (const auto& item : v) {
    require(item.is_number(), ErrorCode::kInvalidParameter,
            std::string("field '") + name + "' must contain numbers");
    out.push_back(item.get<double>());
  }
  return out;
}

DistributionModel parse_at_depth(const json& spec, int depth) {
  require(depth <= kMaxSpecDepth, ErrorCode::kInvalidParameter, "mixture nesting too deep");
  require(spec.is_object(), ErrorCode::kMalformedJson, "distribution spec must be a JSON object");
  require(spec.contains("family") && spec["family"].is_string(), ErrorCode::kMalformedJson,
          "distribution spec needs a string field 'family'");
  const std::string family = spec["family"].get<std::string>();

  if (family == "gaussian") {
    check_fields(spec, {"sigma"});
    return DistributionModel::gaussian(number_field(spec, "sigma"));
  }
  if (family == "rademacher") {
    check_fields(spec, {});
    return DistributionModel::rademacher();
  }
  if (family == "centered_bernoulli") {
    check_fields(spec, {"p"});
    return DistributionModel::centered_bernoulli(number_field(spec, "p"));
  }
  if (family == "uniform") {
    check_fields(spec, {"b"});
    return DistributionModel::uniform(number_field(spec, "b"));
  }
  if (family == "poly_density") {
    check_fields(spec, {"alpha"});
    return DistributionModel::poly_density(number_field(spec, "alpha"));
  }
  if (family == "sym_beta" || family == "sym_gamma") {
    check_fields(spec, {"alpha", "beta"});
    const double a = number_field(spec, "alpha");
    const double b = number_field(spec, "beta");
    return family == "sym_beta" ? DistributionModel::sym_beta(a, b)
                                : DistributionModel::sym_gamma(a, b);
  }
  if (family == "simple") {
    check_fields(spec, {"values", "probs"});
    return DistributionModel::simple(number_list(spec, "values"), number_list(spec, "probs"));
  }
  if (family == "mixture") {
    check_fields(spec, {"components", "weights"});
    require(spec.contains("components") && spec["components"].is_array(),
            ErrorCode::kInvalidParameter, "field 'components' must be an array");
    std::vector<DistributionModel> components;
    for (const auto& c : spec["components"]) components.push_back(parse_at_depth(c, depth + 1));
    return DistributionModel::mixture(std::move(components), number_list(spec, "weights"));
  }
  fail(ErrorCode::kUnknownFamily, "unknown family '" + family + "'");
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

DistributionModel parse_distribution(const json& spec) { return parse_at_depth(spec, 0); }

DistributionModel parse_distribution_text(std::string_view text) {
  json spec = json::parse(text.begin(), text.end(), nullptr, false);
  require(!spec.is_discarded(), ErrorCode::kMalformedJson, "distribution spec is not valid JSON");
  return parse_distribution(spec);
}

json to_json(const DistributionModel& model) {
  json out = {{"family", std::string(model.family_name())}};
  if (const auto* g = model.as<Gaussian>()) out["sigma"] = g->sigma;
  if (const auto* b = model.as<CenteredBernoulli>()) out["p"] = b->p;
  if (const auto* u = model.as<Uniform>()) out["b"] = u->b;
  if (const auto* p = model.as<PolyDensity>()) out["alpha"] = p->alpha;
  if (const auto* s = model.as<SymBeta>()) {
    out["alpha"] = s->alpha;
    out["beta"] = s->beta;
  }
  if (const auto* s = model.as<SymGamma>()) {
    out["alpha"] = s->alpha;
    out["beta"] = s->beta;
  }
  if (const auto* s = model.as<Simple>()) {
    out["values"] = s->values;
    out["probs"] = s->probs;
  }
  if (const auto* m = model.as<Mixture>()) {
    json components = json::array();
    for (const auto& c : m->components) components.push_back(to_json(c));
    out["components"] = std::move(components);
    out["weights"] = m->weights;
  }
  return out;
}

json to_json(const NormEstimate& e) {
  return {{"value", e.value},
          {"method", std::string(to_string(e.method))},
          {"argmax", optional_number(e.argmax)},
          {"tol", e.tol},
          {"scan_cap", optional_number(e.scan_cap)}};
}

json to_json(const SsubReport& r) {
  return {{"verdict", std::string(to_string(r.verdict))},
          {"criterion", r.criterion},
          {"witness_lambda", optional_number(r.witness_lambda)},
          {"witness_k", r.witness_k ? json(*r.witness_k) : json(nullptr)},
          {"sigma2", r.sigma2},
          {"notes", r.notes}};
}

json to_json(const GammaConstants& c) {
  return {{"theta", c.theta_const}, {"k0", c.k0}, {"G1", c.G1}, {"G2", c.G2}, {"G", c.G}};
}

json to_json(const LimitRootReport& r) {
  return {{"root", r.root}, {"published_value", r.published_value}, {"note", r.note}};
}

json to_json(const BoundCheckReport& r) {
  auto verdicts = [](const std::vector<Verdict>& vs) {
    json out = json::array();
    for (Verdict v : vs) out.push_back(std::string(to_string(v)));
    return out;
  };
  json envelope = json::array();
  for (double v : r.clt_envelope) envelope.push_back(finite_or_null(v));
  json out = {{"label", r.label},
              {"rng", r.rng},
              {"seed", r.seed},
              {"n_samples", r.n_samples},
              {"delta", r.delta},
              {"norm", r.norm},
              {"gn_mode", r.gn_mode ? json(*r.gn_mode) : json(nullptr)},
              {"abscissae", r.abscissae},
              {"empirical", r.empirical},
              {"empirical_upper", r.empirical_upper},
              {"empirical_lower", r.empirical_lower},
              {"band_halfwidth", r.band_halfwidth},
              {"analytic_bound", r.analytic_bound},
              {"verdicts", verdicts(r.verdicts)},
              {"clt_envelope", std::move(envelope)},
              {"companion", nullptr},
              {"notes", r.notes}};
  if (r.companion) {
    out["companion"] = {{"label", r.companion->label},
                        {"norm", r.companion->norm},
                        {"analytic_bound", r.companion->analytic_bound},
                        {"verdicts", verdicts(r.companion->verdicts)}};
  }
  return out;
}

json error_json(const Error& error) {
  return {{"error", {{"code", std::string(to_string(error.code()))}, {"message", error.what()}}}};
}

}  // namespace subgauss
