#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace subgauss::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240501;

struct CliResult {
  int exit_code = 0;
  std::string output;
};

/// Runs one invocation. `args` excludes the program name; `env_seed` is the
/// value of SUBGAUSS_SEED when set.
CliResult run_cli(const std::vector<std::string>& args,
                  const std::optional<std::string>& env_seed = std::nullopt);

}  // namespace subgauss::cli
