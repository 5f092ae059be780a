#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "subgauss/distribution.hpp"
#include "subgauss/errors.hpp"
#include "subgauss/norms.hpp"

using namespace subgauss;
using Model = DistributionModel;

namespace {

double bernoulli_oracle(double p) {
  return std::sqrt((1.0 - 2.0 * p) / (2.0 * std::log((1.0 - p) / p)));
}

std::vector<Model> centered_families() {
  return {Model::gaussian(1.3),
          Model::rademacher(),
          Model::centered_bernoulli(0.2),
          Model::centered_bernoulli(0.9),
          Model::uniform(2.0),
          Model::poly_density(0.0),
          Model::poly_density(2.0),
          Model::sym_beta(0.5, 0.5),
          Model::sym_beta(2.0, 3.0),
          Model::sym_gamma(0.0, 2.0),
          Model::sym_gamma(1.0, 3.0),
          Model::sym_gamma(-0.5, 4.0),
          Model::simple({-1.0, 0.0, 2.0}, {0.4, 0.4, 0.2}),
          Model::mixture({Model::gaussian(1.0), Model::uniform(1.0)}, {0.3, 0.7})};
}

}  // namespace

TEST_CASE("sub_norm_numeric examples") {
  CHECK(std::abs(sub_norm_numeric(Model::gaussian(2.0)).value - 2.0) <= 1e-6);
  CHECK(std::abs(sub_norm_numeric(Model::rademacher()).value - 1.0) <= 1e-6);
  const auto bern = sub_norm_numeric(Model::centered_bernoulli(0.25));
  CHECK(std::abs(bern.value - bernoulli_sub_norm(0.25)) <= 1e-6);
  CHECK(bern.method == NormMethod::kLambdaSup);
  CHECK(bern.argmax.has_value());
  CHECK(*bern.argmax > 0.0);
}

TEST_CASE("sub_norm_numeric: Gaussian attains the sup only in the limit") {
  for (double s : {0.5, 1.0, 2.0}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto est = sub_norm_numeric(Model::gaussian(s));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(std::abs(est.value - s) <= 1e-6);
    CHECK(secs < 1.0);
    REQUIRE(est.argmax.has_value());
    CHECK(*est.argmax == 0.0);
  }
}

TEST_CASE("sub_norm_numeric errors") {
  try {
    sub_norm_numeric(Model::simple({1.0, 2.0}, {0.5, 0.5}));
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonCenteredModel);
  }
  try {
    sub_norm_numeric(Model::sym_gamma(0.0, 1.0));
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMgfDivergence);
  }
}

TEST_CASE("bernoulli_sub_norm") {
  CHECK(bernoulli_sub_norm(0.5) == 0.5);
  CHECK(std::abs(bernoulli_sub_norm(0.25) - std::sqrt(0.5 / (2.0 * std::log(3.0)))) <= 1e-14);
  // the quoted 0.477035 is a 5-digit rounding of 0.4770323
  CHECK(std::abs(bernoulli_sub_norm(0.25) - 0.477035) <= 5e-6);
  for (double p = 0.01; p < 0.5; p += 0.01) {
    CHECK(std::abs(bernoulli_sub_norm(p) - bernoulli_sub_norm(1.0 - p)) <= 1e-14);
    CHECK(std::abs(bernoulli_sub_norm(p) - bernoulli_oracle(p)) <= 1e-12);
  }
  CHECK(std::abs(bernoulli_sub_norm(0.5 + 1e-9) - 0.5) <= 1e-12);
  CHECK(std::abs(bernoulli_sub_norm(0.5 - 1e-6) - 0.5) <= 1e-11);
  CHECK_THROWS_AS(bernoulli_sub_norm(0.0), Error);
  CHECK_THROWS_AS(bernoulli_sub_norm(1.0), Error);
  CHECK_THROWS_AS(bernoulli_sub_norm(-0.2), Error);
}

TEST_CASE("Bernoulli closed form agrees with the numeric sup") {
  for (int i = 1; i <= 19; ++i) {
    const double p = 0.05 * i;
    const double numeric = sub_norm_numeric(Model::centered_bernoulli(p)).value;
    INFO("p = ", p);
    CHECK(std::abs(numeric - bernoulli_sub_norm(p)) <= 1e-6);
  }
}

TEST_CASE("sub_norm uses closed forms where available") {
  const auto g = sub_norm(Model::gaussian(3.0));
  CHECK(g.method == NormMethod::kClosedForm);
  CHECK(g.value == 3.0);
  CHECK(std::abs(sub_norm(Model::uniform(2.0)).value - 2.0 / std::sqrt(3.0)) <= 1e-15);
  CHECK(sub_norm(Model::sym_gamma(1.0, 3.0)).method == NormMethod::kLambdaSup);
  // closed forms agree with the scan
  for (const auto& m : {Model::uniform(2.0), Model::rademacher(), Model::centered_bernoulli(0.3)}) {
    CHECK(std::abs(sub_norm(m).value - sub_norm_numeric(m).value) <= 1e-6);
  }
}

TEST_CASE("polynomial density: norm equals sigma only when the kurtosis allows it") {
  // α = 2: E x² = 3/15, strictly subgaussian
  CHECK(std::abs(sub_norm(Model::poly_density(2.0)).value - std::sqrt(3.0 / 15.0)) <= 1e-6);
  // α = 0: E x⁴/σ⁴ = 81/25 > 3, so the norm must exceed σ = 1/3
  const double n0 = sub_norm(Model::poly_density(0.0)).value;
  CHECK(n0 > 1.0 / 3.0 + 1e-4);
}

TEST_CASE("norm dominates the standard deviation") {
  for (const auto& m : centered_families()) {
    INFO(m.family_name());
    const auto est = sub_norm_numeric(m);
    CHECK(est.value >= std::sqrt(variance(m)) - est.tol);
  }
}

TEST_CASE("homogeneity") {
  for (double c : {0.5, 3.0}) {
    CHECK(std::abs(sub_norm_numeric(Model::gaussian(c)).value - c * sub_norm_numeric(Model::gaussian(1)).value) <= 1e-6 * c);
    CHECK(std::abs(sub_norm_numeric(Model::uniform(c)).value - c * sub_norm_numeric(Model::uniform(1)).value) <= 1e-6 * c);
    const auto a = Model::simple({-1.0, 0.0, 2.0}, {0.4, 0.4, 0.2});
    const auto b = Model::simple({-c, 0.0, 2.0 * c}, {0.4, 0.4, 0.2});
    CHECK(std::abs(sub_norm_numeric(b).value - c * sub_norm_numeric(a).value) <= 1e-6 * c);
  }
}

TEST_CASE("tail_bound") {
  CHECK(tail_bound(1.0, 0.0) == 1.0);
  CHECK(std::abs(tail_bound(1.0, 2.0) - 0.1353352832366127) <= 1e-15);
  CHECK(std::abs(tail_bound(2.0, 2.0) - 0.6065306597126334) <= 1e-15);
  double prev = 1.0;
  for (double x = 0.1; x <= 6.0; x += 0.1) {
    const double b = tail_bound(1.3, x);
    CHECK(b < prev);
    prev = b;
  }
  CHECK_THROWS_AS(tail_bound(0.0, 1.0), Error);
  CHECK_THROWS_AS(tail_bound(1.0, -1.0), Error);
}

TEST_CASE("converse_norm_from_tail") {
  CHECK(converse_norm_from_tail(1.0) == 4.0);
  CHECK(converse_norm_from_tail(0.25) == 1.0);
  CHECK(converse_norm_from_tail(2.0) == 8.0);
  CHECK_THROWS_AS(converse_norm_from_tail(0.0), Error);
}

TEST_CASE("lp_norm") {
  for (double p : {1.0, 2.0, 3.7, 10.0}) CHECK(std::abs(lp_norm(Model::rademacher(), p) - 1.0) <= 1e-14);
  CHECK(std::abs(lp_norm(Model::uniform(1.0), 2.0) - 1.0 / std::sqrt(3.0)) <= 1e-14);
  CHECK(std::abs(lp_norm(Model::gaussian(1.0), 4.0) - std::pow(3.0, 0.25)) <= 1e-12);
  // uniform: E|ξ|^p = b^p/(p+1)
  for (double p : {1.0, 2.5, 7.0}) {
    CHECK(std::abs(lp_norm(Model::uniform(2.0), p) - 2.0 / std::pow(p + 1.0, 1.0 / p)) <= 1e-13);
  }
  CHECK_THROWS_AS(lp_norm(Model::uniform(1.0), 0.5), Error);
}

TEST_CASE("gls_equiv_norm") {
  const auto g = gls_equiv_norm(Model::gaussian(1.0), 200.0);
  CHECK(g.method == NormMethod::kMomentSup);
  CHECK(g.value >= 0.7);
  CHECK(g.value <= 1.0);
  // grid oracle: s ↦ |ξ|_s/√s from the Gaussian moment formula
  double grid_sup = 0.0;
  for (double s = 1.0; s <= 200.0; s += 0.001) {
    const double log_m = 0.5 * s * std::log(2.0) + std::lgamma(0.5 * (s + 1)) - 0.5 * std::log(std::numbers::pi);
    grid_sup = std::max(grid_sup, std::exp(log_m / s) / std::sqrt(s));
  }
  CHECK(std::abs(g.value - grid_sup) <= g.tol);

  const auto r = gls_equiv_norm(Model::rademacher(), 200.0);
  CHECK(std::abs(r.value - 1.0) <= 1e-12);
  REQUIRE(r.argmax.has_value());
  CHECK(*r.argmax == 1.0);

  const double base = gls_equiv_norm(Model::uniform(1.0)).value;
  CHECK(std::abs(gls_equiv_norm(Model::uniform(3.0)).value - 3.0 * base) <= 1e-6);
}

TEST_CASE("GLS-equivalent norm is within a factor 4 of the subgaussian norm") {
  for (const auto& m : centered_families()) {
    INFO(m.family_name());
    const double ratio = gls_equiv_norm(m).value / sub_norm(m).value;
    CHECK(ratio >= 0.25);
    CHECK(ratio <= 4.0);
  }
}

TEST_CASE("noncentered_sub_norm") {
  CHECK(noncentered_sub_norm(3.0, 4.0) == 5.0);
  CHECK(noncentered_sub_norm(1.7, 0.0) == 1.7);
  CHECK(noncentered_sub_norm(0.0, -2.5) == 2.5);
  CHECK_THROWS_AS(noncentered_sub_norm(-1.0, 0.0), Error);
}

TEST_CASE("natural_psi and make_psi") {
  const auto rad = natural_psi(Model::rademacher());
  for (double p : {1.0, 5.0, 300.0}) CHECK(std::abs(rad(p) - 1.0) <= 1e-14);
  CHECK(std::abs(natural_psi(Model::uniform(1.0))(2.0) - 1.0 / std::sqrt(3.0)) <= 1e-14);
  CHECK(std::abs(natural_psi(Model::gaussian(1.0))(4.0) - std::pow(3.0, 0.25)) <= 1e-12);
  CHECK_THROWS_AS(make_psi([](double) { return 1.0; }, 1.0), Error);
  CHECK_THROWS_AS(make_psi([](double p) { return 2.0 - p; }, 10.0), Error);
  CHECK_NOTHROW(make_psi([](double p) { return std::sqrt(p); }, 10.0));
}

TEST_CASE("gls_norm") {
  for (const auto& m : {Model::uniform(1.0), Model::sym_gamma(1.0, 3.0), Model::gaussian(2.0)}) {
    CHECK(std::abs(gls_norm(m, natural_psi(m)).value - 1.0) <= 1e-9);
    CHECK(std::abs(gls_norm(m, natural_psi(m, 6.0)).value - 1.0) <= 1e-9);
  }
  const auto psi = make_psi([](double p) { return std::sqrt(p); }, std::numeric_limits<double>::infinity());
  const auto one = gls_norm(Model::uniform(1.0), psi);
  const auto two = gls_norm(Model::uniform(2.0), psi);
  CHECK(std::abs(two.value - 2.0 * one.value) <= 1e-6);
  const auto r = gls_norm(Model::rademacher(), psi, kScanTol, 400.0);
  CHECK(std::abs(r.value - 1.0) <= 1e-12);
  CHECK(*r.argmax == 1.0);
  REQUIRE(r.scan_cap.has_value());
  CHECK(*r.scan_cap == 400.0);
  const auto bounded = gls_norm(Model::rademacher(), make_psi([](double p) { return std::sqrt(p); }, 5.0));
  CHECK_FALSE(bounded.scan_cap.has_value());
}

TEST_CASE("gls_tail_bound") {
  // m = 1/2: optimizer p* = x²/e, bound exp(-x²/(2e))
  for (double x : {4.0, 8.0, 16.0}) {
    const double b = gls_tail_bound(1.0, 0.5, x);
    CHECK(std::abs(std::log(b) + x * x / (2.0 * std::numbers::e)) <= 1e-9 * x * x);
    double brute = 1.0;
    for (double p = 1.0; p <= 200.0; p += 1e-3) brute = std::min(brute, std::pow(std::sqrt(p) / x, p));
    CHECK(b <= brute * (1.0 + 1e-9));
    CHECK(b >= brute * (1.0 - 1e-6));
  }
  // log-bound slope: ratio of -ln bound at 2x and x is 4
  const double l4 = -std::log(gls_tail_bound(1.0, 0.5, 4.0));
  const double l8 = -std::log(gls_tail_bound(1.0, 0.5, 8.0));
  const double l16 = -std::log(gls_tail_bound(1.0, 0.5, 16.0));
  CHECK(std::abs(l8 / l4 - 4.0) <= 1e-9);
  CHECK(std::abs(l16 / l8 - 4.0) <= 1e-9);
  CHECK(gls_tail_bound(1.0, 0.5, 0.5) == 1.0);
  CHECK(gls_tail_bound(2.0, 1.0, 2.0) == 1.0);
  for (double m : {0.5, 1.0, 2.0}) {
    for (double x = 3.0; x <= 24.0; x *= 2.0) CHECK(gls_tail_bound(1.0, m, 2.0 * x) < gls_tail_bound(1.0, m, x));
  }
  CHECK_THROWS_AS(gls_tail_bound(1.0, 0.5, 0.0), Error);
}
