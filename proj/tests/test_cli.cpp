#include <doctest.h>

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <string>
#include <vector>

#include "cli_app.hpp"

using nlohmann::json;
using subgauss::cli::run_cli;

namespace {

json run_json(const std::vector<std::string>& args, int expected_exit = 0,
              const std::optional<std::string>& env = std::nullopt) {
  const auto r = run_cli(args, env);
  INFO(r.output);
  CHECK(r.exit_code == expected_exit);
  return json::parse(r.output);
}

std::string error_code(const std::vector<std::string>& args) { return run_json(args, 1)["error"]["code"]; }

}  // namespace

TEST_CASE("norm of a centered Bernoulli") {
  const auto j = run_json({"norm", "--dist", R"({"family":"centered_bernoulli","p":0.25})"});
  CHECK(j["command"] == "norm");
  CHECK(j["tool"] == "subgauss");
  CHECK(j["schema_version"] == "1.0.0");
  CHECK(j["seed"] == 20240501);
  CHECK(j.contains("tolerances"));
  CHECK(std::abs(j["result"]["value"].get<double>() - 0.4770323) <= 5e-6);
  CHECK(j["result"]["method"] == "closed-form");
}

TEST_CASE("gn records the mode") {
  const auto j = run_json({"gn", "--ys", "1,1", "--mode", "sup"});
  CHECK(std::abs(j["result"]["value"].get<double>() - std::sqrt(2.0)) <= 1e-9);
  CHECK(j["gn_mode"] == "sup");
  CHECK(run_json({"gn", "--ys", "1,1"})["gn_mode"] == "sup");
  const auto inf = run_json({"gn", "--ys", "1,1", "--mode", "inf"});
  CHECK(std::abs(inf["result"]["value"].get<double>() - 1.0) <= 1e-9);
  CHECK_FALSE(inf["notes"].empty());
}

TEST_CASE("ssub of the uniform symmetrized beta") {
  const auto j = run_json({"ssub", "--dist", R"({"family":"sym_beta","alpha":1,"beta":1})"});
  CHECK(j["result"]["verdict"] == "strictly-subgaussian");
  CHECK(j["result"]["criterion"] == "beta_ssub");
  const auto mix = run_json(
      {"ssub", "--dist",
       R"({"family":"mixture","components":[{"family":"gaussian","sigma":1},{"family":"gaussian","sigma":2}],"weights":[0.5,0.5]})"});
  CHECK(mix["result"]["verdict"] == "subgaussian-not-strict");
  CHECK(mix["result"]["witness_lambda"].is_number());
}

TEST_CASE("remaining subcommands") {
  const auto s = run_json({"sum-bound", "--norms", "3,4", "--x", "0,2"});
  CHECK(s["result"]["sigma_n"] == 5.0);
  const auto m = run_json({"martingale-bound", "--thetas", "1,1,1,1", "--x", "1"});
  CHECK(m["result"]["delta_n"] == 2.0);
  const auto mix = run_json(
      {"mixture", "--dist",
       R"({"family":"mixture","components":[{"family":"gaussian","sigma":1},{"family":"gaussian","sigma":2}],"weights":[0.5,0.5]})"});
  CHECK(mix["result"]["bound"] == doctest::Approx(2.0).epsilon(1e-9));
  const auto c = run_json({"constants", "--alpha", "10", "--beta", "3"});
  CHECK(c["result"]["gamma_constants"]["theta"] == 8.0);
  const auto root = run_json({"constants", "--alpha", "0", "--beta", "2"});
  CHECK(root["result"]["gamma_constants"].is_null());
  CHECK(std::abs(root["result"]["limit_root"]["root"].get<double>() - (std::sqrt(6.0) - 3.0)) <= 1e-10);
  CHECK(root["result"]["limit_root"]["note"].get<std::string>().find("3(sqrt(3) - 1)") != std::string::npos);
}

TEST_CASE("verify subcommand") {
  const auto j = run_json({"verify", "--kind", "single", "--dist", R"({"family":"gaussian","sigma":1})", "--norm",
                           "1", "--n-samples", "20000"});
  CHECK(j["result"]["abscissae"].size() == 5);
  for (const auto& v : j["result"]["verdicts"]) CHECK(v != "fail");
  const auto d = run_json({"verify", "--kind", "disjoint", "--cell-probs", "0.5,0.5", "--mode", "inf", "--x", "1,2",
                           "--n-samples", "20000"});
  CHECK(d["gn_mode"] == "inf");
  CHECK(d["result"]["companion"].is_object());
  const auto mart = run_json({"verify", "--kind", "martingale", "--thetas", "1,1,1,1", "--n-samples", "10000"});
  CHECK(mart["result"]["norm"] == 2.0);
  const auto sum = run_json({"verify", "--kind", "sum", "--dist", R"({"family":"rademacher"})", "--count", "30",
                             "--n-samples", "10000", "--x", "2"});
  CHECK(sum["result"]["verdicts"][0] == "pass");
  CHECK(error_code({"verify", "--kind", "single", "--dist", R"({"family":"gaussian","sigma":1})", "--norm", "1",
                    "--n-samples", "10"}) == "invalid_parameter");
}

TEST_CASE("seed resolution: default, environment, flag") {
  const std::vector<std::string> args{"verify", "--kind", "single", "--dist", R"({"family":"uniform","b":1})",
                                      "--norm", "1", "--n-samples", "10000"};
  CHECK(run_json(args)["seed"] == 20240501);
  CHECK(run_json(args, 0, std::string("77"))["seed"] == 77);
  auto with_flag = args;
  with_flag.insert(with_flag.begin(), {"--seed", "5"});
  CHECK(run_json(with_flag, 0, std::string("77"))["seed"] == 5);
  // identical seeds give identical reports
  CHECK(run_cli(args, std::string("77")).output == run_cli(args, std::string("77")).output);
  CHECK(run_cli(args, std::string("77")).output != run_cli(args, std::string("78")).output);
  CHECK(run_json(args, 1, std::string("not-a-number"))["error"]["code"] == "invalid_parameter");
}

TEST_CASE("output formats") {
  const auto csv = run_cli({"gn", "--ys", "1,4", "--output", "csv"});
  CHECK(csv.exit_code == 0);
  CHECK(csv.output.rfind("key,value\n", 0) == 0);
  CHECK(csv.output.find("gn_mode,sup") != std::string::npos);
  const auto table = run_cli({"--output", "table", "gn", "--ys", "1,4"});
  CHECK(table.exit_code == 0);
  CHECK(table.output.find("value") != std::string::npos);
  const auto quoted = run_cli({"norm", "--dist", R"({"family":"uniform","b":1})", "--output", "csv"});
  CHECK(quoted.output.find(R"("{""b"":1.0,""family"":""uniform""}")") != std::string::npos);
  const auto vcsv = run_cli({"verify", "--kind", "single", "--dist", R"({"family":"rademacher"})", "--norm", "1",
                             "--n-samples", "10000", "--output", "csv"});
  CHECK(vcsv.output.rfind("x,empirical,band,bound,verdict\n", 0) == 0);
  CHECK(error_code({"gn", "--ys", "1", "--output", "xml"}) == "usage");
}

TEST_CASE("exit codes and error objects") {
  CHECK(error_code({}) == "usage");
  CHECK(error_code({"frobnicate"}) == "usage");
  CHECK(error_code({"norm"}) == "usage");
  CHECK(error_code({"norm", "--dist", R"({"family":"cauchy"})"}) == "unknown_family");
  CHECK(error_code({"norm", "--dist", R"({"family":"gaussian","sigma":1,"mu":0})"}) == "unknown_field");
  CHECK(error_code({"norm", "--dist", R"({"family":"gaussian","sigma":)"}) == "malformed_json");
  CHECK(error_code({"norm", "--dist", R"({"family":"gaussian","sigma":-1})"}) == "invalid_parameter");
  CHECK(error_code({"norm", "--dist", "/nonexistent/spec.json"}) != "");
  CHECK(error_code({"gn", "--ys", "1,-1"}) == "domain_error");
  CHECK(error_code({"constants", "--alpha", "-2", "--beta", "3"}) == "domain_error");
  const auto help = run_cli({"--help"});
  CHECK(help.exit_code == 0);
  CHECK(help.output.find("norm") != std::string::npos);
}

TEST_CASE("dist spec from a file") {
  const std::string path = "cli_test_spec.json";
  {
    std::ofstream out(path);
    out << R"({"family":"rademacher"})";
  }
  const auto j = run_json({"norm", "--dist", path});
  CHECK(j["result"]["value"] == 1.0);
  std::remove(path.c_str());
}

TEST_CASE("mutated dist specs never crash and only fail with exit 1") {
  const std::vector<std::string> seeds{
      R"({"family":"gaussian","sigma":1.5})",
      R"({"family":"centered_bernoulli","p":0.3})",
      R"({"family":"uniform","b":2})",
      R"({"family":"poly_density","alpha":2})",
      R"({"family":"sym_beta","alpha":2,"beta":3})",
      R"({"family":"sym_gamma","alpha":1,"beta":3})",
      R"({"family":"simple","values":[-1,2],"probs":[0.6666666666666666,0.3333333333333333]})",
      R"({"family":"mixture","components":[{"family":"rademacher"},{"family":"gaussian","sigma":1}],"weights":[0.5,0.5]})",
  };
  const std::string alphabet = R"({}[]:,"-.0123456789eE abcfgilmnoprstuy)";
  std::mt19937_64 gen(424242);
  int ok = 0;
  for (int i = 0; i < 1000; ++i) {
    std::string s = seeds[i % seeds.size()];
    const int edits = 1 + static_cast<int>(gen() % 3);
    for (int e = 0; e < edits && !s.empty(); ++e) {
      const std::size_t pos = gen() % s.size();
      const char c = alphabet[gen() % alphabet.size()];
      switch (gen() % 3) {
        case 0: s[pos] = c; break;
        case 1: s.erase(pos, 1); break;
        default: s.insert(pos, 1, c); break;
      }
    }
    if (s.empty() || s.front() != '{') s.insert(0, "{");
    const auto r = run_cli({"norm", "--dist", s});
    INFO("spec: ", s);
    INFO("output: ", r.output);
    REQUIRE((r.exit_code == 0 || r.exit_code == 1));
    const auto j = json::parse(r.output);
    if (r.exit_code == 1) {
      CHECK(j["error"]["code"].is_string());
    } else {
      ++ok;
      CHECK(j["result"]["value"].is_number());
    }
  }
  CHECK(ok < 1000);
}
