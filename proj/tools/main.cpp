#include <cstdlib>
#include <iostream>

#include "cli_app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env_seed;
  if (const char* s = std::getenv("SUBGAUSS_SEED")) env_seed = s;
  const auto result = subgauss::cli::run_cli(args, env_seed);
  std::cout << result.output;
  return result.exit_code;
}
