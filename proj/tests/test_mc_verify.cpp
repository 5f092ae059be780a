#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "subgauss/aggregation.hpp"
#include "subgauss/errors.hpp"
#include "subgauss/json_io.hpp"
#include "subgauss/mc_verify.hpp"
#include "subgauss/norms.hpp"

using namespace subgauss;
using Model = DistributionModel;

namespace {

McConfig config(std::size_t n = 200000, std::uint64_t seed = 20240501, unsigned threads = 1) {
  McConfig cfg;
  cfg.n_samples = n;
  cfg.seed = seed;
  cfg.threads = threads;
  return cfg;
}

std::vector<double> xs_of(std::initializer_list<double> xs) { return xs; }

}  // namespace

TEST_CASE("McConfig validation") {
  CHECK_NOTHROW(validate(config()));
  CHECK_THROWS_AS(validate(config(9999)), Error);
  McConfig bad = config();
  bad.delta = 0.5;
  CHECK_THROWS_AS(validate(bad), Error);
  bad.delta = 0.0;
  CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("empirical_tail") {
  CHECK(empirical_tail(std::vector<double>(10, 0.0), 1.0) == 0.0);
  CHECK(empirical_tail(std::vector<double>(10, 2.0), 1.0) == 1.0);
  CHECK(empirical_tail(std::vector<double>{1.0, 1.0}, 1.0) == 0.0);
  CHECK_THROWS_AS(empirical_tail(std::vector<double>{}, 1.0), Error);
  const auto r = sample(Model::rademacher(), 1, 1000000);
  CHECK(std::abs(empirical_tail(r, 0.5) - 0.5) <= hoeffding_band(r.size(), 0.01));
}

TEST_CASE("hoeffding_band") {
  CHECK(hoeffding_band(20000, 0.01) == doctest::Approx(std::sqrt(std::log(200.0) / 40000.0)).epsilon(1e-14));
  CHECK(hoeffding_band(20000, 0.01) == doctest::Approx(0.01151).epsilon(1e-3));
  CHECK(hoeffding_band(80000, 0.01) == doctest::Approx(hoeffding_band(20000, 0.01) / 2).epsilon(1e-14));
  CHECK_THROWS_AS(hoeffding_band(100, 2.0), Error);
  CHECK_THROWS_AS(hoeffding_band(0, 0.1), Error);
}

TEST_CASE("classify") {
  CHECK(classify(0.1, 0.01, 0.2, 1.0) == Verdict::kPass);
  CHECK(classify(0.3, 0.01, 0.2, 1.0) == Verdict::kFail);
  CHECK(classify(0.2, 0.01, 0.2, 1.0) == Verdict::kIndeterminate);
  // beyond the deep-tail cutoff only a failure is decisive
  CHECK(classify(0.0, 0.001, 0.2, 4.5) == Verdict::kIndeterminate);
  CHECK(classify(0.5, 0.001, 0.2, 4.5) == Verdict::kFail);
  CHECK(to_string(Verdict::kIndeterminate) == "indeterminate");
}

TEST_CASE("verify_single_tail examples") {
  const auto g = verify_single_tail(Model::gaussian(1), 1.0, xs_of({1, 2, 3}), config(1000000));
  CHECK(g.count(Verdict::kPass) == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const double x = g.abscissae[i];
    CHECK(g.analytic_bound[i] == doctest::Approx(std::exp(-x * x / 2)).epsilon(1e-14));
    CHECK(std::abs(g.empirical_upper[i] - oracle::normal_tail(x)) <= g.band_halfwidth);
    CHECK(g.empirical[i] == std::max(g.empirical_upper[i], g.empirical_lower[i]));
  }

  const auto r = verify_single_tail(Model::rademacher(), 1.0, xs_of({0.5}), config());
  CHECK(r.verdicts[0] == Verdict::kPass);
  CHECK(r.analytic_bound[0] == doctest::Approx(std::exp(-0.125)).epsilon(1e-14));

  const auto wrong = verify_single_tail(Model::gaussian(1), 0.3, xs_of({2}), config());
  CHECK(wrong.verdicts[0] == Verdict::kFail);

  // deep abscissae are never passed
  const auto deep = verify_single_tail(Model::gaussian(1), 1.0, xs_of({4.5, 6}), config());
  CHECK(deep.count(Verdict::kPass) == 0);
  CHECK(deep.count(Verdict::kFail) == 0);
}

TEST_CASE("no provable bound fails across the family battery") {
  const std::vector<Model> battery{
      Model::gaussian(1.3),        Model::rademacher(),         Model::centered_bernoulli(0.2),
      Model::uniform(2.0),         Model::poly_density(0.0),    Model::poly_density(2.0),
      Model::sym_beta(2, 3),       Model::sym_beta(0.5, 0.5),   Model::sym_gamma(0, 2),
      Model::sym_gamma(1, 3),      Model::sym_gamma(-0.5, 4),   Model::simple({-2, 1}, {1.0 / 3, 2.0 / 3}),
      Model::mixture({Model::gaussian(1), Model::gaussian(2)}, {0.5, 0.5})};
  for (const auto& m : battery) {
    INFO(to_json(m).dump());
    const double tau = sub_norm(m).value;
    const auto r = verify_single_tail(m, tau, xs_of({0.5, 1, 1.5, 2, 2.5, 3}), config());
    CHECK(r.count(Verdict::kFail) == 0);
  }
}

TEST_CASE("verify_independent_sum") {
  const std::vector<Model> rad(30, Model::rademacher());
  const auto a = verify_independent_sum(rad, xs_of({2}), config());
  CHECK(a.empirical[0] <= std::exp(-2.0) + a.band_halfwidth);
  CHECK(a.count(Verdict::kFail) == 0);
  CHECK(a.norm == doctest::Approx(std::sqrt(30.0)).epsilon(1e-12));

  const std::vector<Model> uni(30, Model::uniform(1.0));
  const auto b = verify_independent_sum(uni, xs_of({1, 2}), config());
  CHECK(b.count(Verdict::kPass) == 2);
  CHECK(b.norm == doctest::Approx(std::sqrt(10.0)).epsilon(1e-9));
  // i.i.d. strictly subgaussian input carries the CLT envelope
  REQUIRE(b.clt_envelope.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) CHECK(b.empirical_upper[i] >= b.clt_envelope[i] - b.band_halfwidth);

  // n = 1 reduces to the single-variable check
  const std::vector<Model> one{Model::uniform(1.0)};
  const auto s = verify_independent_sum(one, xs_of({0.5, 1}), config());
  CHECK(s.norm == doctest::Approx(sub_norm(Model::uniform(1.0)).value).epsilon(1e-14));
  CHECK(s.count(Verdict::kFail) == 0);

  const std::vector<Model> mixed{Model::gaussian(1), Model::centered_bernoulli(0.1), Model::sym_gamma(0, 4)};
  CHECK(verify_independent_sum(mixed, xs_of({1, 2, 3}), config()).count(Verdict::kFail) == 0);
  CHECK_THROWS_AS(verify_independent_sum(std::vector<Model>{Model::simple({1, 2}, {0.5, 0.5})}, xs_of({1}), config()), Error);
}

TEST_CASE("verify_disjoint_sum") {
  const auto cell = centered_cell(1.0, -1.0);
  const auto two = make_disjoint_family({0.5, 0.5}, {cell, cell}, {1.0, 1.0});
  const auto sup = verify_disjoint_sum(two, GnMode::kSup, xs_of({1, 2}), config());
  CHECK(sup.count(Verdict::kPass) == 2);
  CHECK(sup.norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  REQUIRE(sup.gn_mode.has_value());
  CHECK(*sup.gn_mode == "sup");
  REQUIRE(sup.companion.has_value());
  CHECK(sup.companion->norm == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sup.companion->verdicts.size() == 2);

  // inf mode: the report is produced; its verdicts are not presumed
  const auto inf = verify_disjoint_sum(two, GnMode::kInf, xs_of({1, 2}), config());
  CHECK(inf.verdicts.size() == 2);
  CHECK_FALSE(inf.notes.empty());

  // one cell matches the single-variable check on the same stream
  const auto single_spec = make_disjoint_family({0.4}, {centered_cell(2.0, -0.5)});
  const auto d = verify_disjoint_sum(single_spec, GnMode::kSup, xs_of({0.5, 1}), config());
  const auto s = verify_single_tail(disjoint_member(single_spec, 0), single_spec.betas[0], xs_of({0.5, 1}), config());
  CHECK(d.norm == doctest::Approx(s.norm).epsilon(1e-12));
  for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(d.empirical[i] - s.empirical[i]) <= 2 * s.band_halfwidth);
}

TEST_CASE("simulate_martingale") {
  auto unit = [](std::size_t, std::span<const double>) { return 1.0; };
  const auto spec = scaled_rademacher_martingale({1, 1, 1, 1}, unit);
  CHECK(martingale_norm_bound(spec) == 2.0);
  const auto xs = simulate_martingale(spec, config(20000));
  REQUIRE(xs.size() == 20000);
  for (double x : xs) {
    CHECK(std::abs(x) <= 4.0);
    CHECK(std::fmod(x, 2.0) == 0.0);
  }
  CHECK(xs == simulate_martingale(spec, config(20000)));
  CHECK(xs == simulate_martingale(spec, config(20000, 20240501, 4)));
  CHECK(xs != simulate_martingale(spec, config(20000, 7)));

  // history-dependent coefficients keep the mean at zero
  const auto hist = scaled_rademacher_martingale(std::vector<double>(10, 1.0), [](std::size_t, std::span<const double> h) {
    double s = 0.0;
    for (double v : h) s += v;
    return std::min(1.0, std::abs(s));
  });
  const auto ys = simulate_martingale(hist, config(200000));
  double mean = 0.0;
  double sq = 0.0;
  for (double y : ys) {
    mean += y;
    sq += y * y;
  }
  mean /= ys.size();
  const double sd = std::sqrt(sq / ys.size() - mean * mean);
  CHECK(std::abs(mean) <= 4.0 * sd / std::sqrt(static_cast<double>(ys.size())));
}

TEST_CASE("martingale contract violations are detected") {
  const auto liar = scaled_rademacher_martingale({1.0, 1.0}, [](std::size_t j, std::span<const double>) {
    return j == 1 ? 1.5 : 1.0;
  });
  try {
    simulate_martingale(liar, config(10000));
    FAIL("expected contract violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kGeneratorContract);
  }
  auto nan_spec = scaled_rademacher_martingale({1.0}, [](std::size_t, std::span<const double>) { return std::nan(""); });
  CHECK_THROWS_AS(simulate_martingale(nan_spec, config(10000, 1, 3)), Error);
}

TEST_CASE("verify_martingale") {
  auto unit = [](std::size_t, std::span<const double>) { return 1.0; };
  const auto iid = verify_martingale(scaled_rademacher_martingale(std::vector<double>(16, 1.0), unit), xs_of({2}), config());
  CHECK(iid.verdicts[0] == Verdict::kPass);
  CHECK(iid.norm == 4.0);

  std::vector<double> thetas{1.0, 0.5, 2.0, 1.0, 0.25, 1.5};
  const auto dep = scaled_rademacher_martingale(thetas, [thetas](std::size_t j, std::span<const double> h) {
    return j == 0 ? thetas[0] : (h.back() > 0 ? thetas[j] : 0.5 * thetas[j]);
  });
  const auto r = verify_martingale(dep, xs_of({0, 1, 2, 3}), config());
  CHECK(r.analytic_bound[0] == 1.0);
  CHECK(r.verdicts[0] == Verdict::kPass);
  CHECK(r.count(Verdict::kFail) == 0);
  CHECK(r.count(Verdict::kPass) >= 3);
}

TEST_CASE("reports are deterministic and independent of thread count") {
  const auto m = Model::sym_gamma(1, 3);
  const double tau = sub_norm(m).value;
  const auto a = verify_single_tail(m, tau, xs_of({1, 2}), config(50000));
  const auto b = verify_single_tail(m, tau, xs_of({1, 2}), config(50000));
  const auto c = verify_single_tail(m, tau, xs_of({1, 2}), config(50000, 20240501, 5));
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(to_json(a).dump() == to_json(c).dump());
  const std::vector<Model> models(5, Model::uniform(1.0));
  CHECK(to_json(verify_independent_sum(models, xs_of({1}), config(30000, 9, 1))).dump() ==
        to_json(verify_independent_sum(models, xs_of({1}), config(30000, 9, 8))).dump());
}

TEST_CASE("Hoeffding band calibration over 100 seeds") {
  const std::size_t n = 20000;
  const double band = hoeffding_band(n, 0.01);
  int outside = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto r = sample(Model::rademacher(), seed, n);
    if (std::abs(empirical_tail(r, 0.5) - 0.5) > band) ++outside;
  }
  CHECK(outside <= 1);
}

TEST_CASE("CSV and JSON serialization") {
  const auto r = verify_single_tail(Model::gaussian(1), 1.0, xs_of({1, 2}), config(20000));
  const std::string csv = to_csv(r);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,empirical,band,bound,verdict");
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 4);
  }
  CHECK(rows == 2);

  const auto j = to_json(r);
  for (const char* key : {"abscissae", "empirical", "band_halfwidth", "analytic_bound", "verdicts", "seed", "n_samples"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["verdicts"][0] == "pass");
  CHECK(j["abscissae"].size() == 2);
  CHECK(nlohmann::json::parse(j.dump()) == j);
}
