#pragma once

#include <string_view>

#include <json.hpp>

#include "subgauss/distribution.hpp"
#include "subgauss/errors.hpp"
#include "subgauss/mc_verify.hpp"
#include "subgauss/norms.hpp"
#include "subgauss/ssub.hpp"

namespace subgauss {

/// Version of the distribution-spec and report formats.
inline constexpr std::string_view kSchemaVersion = "1.0.0";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Maximum nesting of mixture specs.
inline constexpr int kMaxSpecDepth = 16;

/// Builds a model from {"family": ..., <fields>}. Unknown families and
/// fields are rejected with kUnknownFamily / kUnknownField.
DistributionModel parse_distribution(const nlohmann::json& spec);

/// Parses JSON text first; syntax errors raise kMalformedJson.
DistributionModel parse_distribution_text(std::string_view text);

nlohmann::json to_json(const DistributionModel& model);
nlohmann::json to_json(const NormEstimate& estimate);
nlohmann::json to_json(const SsubReport& report);
nlohmann::json to_json(const GammaConstants& constants);
nlohmann::json to_json(const LimitRootReport& report);
nlohmann::json to_json(const BoundCheckReport& report);

/// {"error": {"code": ..., "message": ...}}
nlohmann::json error_json(const Error& error);

}  // namespace subgauss
