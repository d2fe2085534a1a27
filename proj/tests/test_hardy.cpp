#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hardylab/chsh.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/hardy.hpp"

using namespace hardylab;
using std::numbers::pi;

namespace {

double tau_inv5() { return std::pow((1.0 + std::sqrt(5.0)) / 2.0, -5.0); }

Sign random_sign(std::mt19937_64& rng) { return rng() & 1u ? Sign::Plus : Sign::Minus; }

}  // namespace

TEST_CASE("vanishing condition is the double root -a") {
  CHECK(solve_vanishing_condition(1.0) == -1.0);
  const auto s = make_state(0.25);
  CHECK(solve_vanishing_condition(coefficient_ratio(s)) == doctest::Approx(-1.0 / std::sqrt(3.0)));
  CHECK_THROWS_AS(solve_vanishing_condition(INFINITY), DomainError);
  CHECK_THROWS_AS(coefficient_ratio(make_state(1.0)), DomainError);
}

TEST_CASE("any betas meeting the vanishing condition zero P(+,+)") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> c1sq(0.02, 0.98);
  std::uniform_real_distribution<double> beta(-1.5, 1.5);
  for (int n = 0; n < 1000; ++n) {
    const auto s = make_state(c1sq(rng), random_sign(rng), random_sign(rng));
    const double b1 = beta(rng);
    const double b2 = std::atan(solve_vanishing_condition(s.c1() / s.c2()) / std::tan(b1));
    REQUIRE(joint_distribution(s, {b1, 0.0}, {b2, 0.0}).p_pp() <= 1e-12);
    // Companion condition with the inverse ratio zeroes P(-,-).
    const double b2m = std::atan(solve_vanishing_condition(s.c2() / s.c1()) / std::tan(b1));
    REQUIRE(joint_distribution(s, {b1, 0.0}, {b2m, 0.0}).p_mm() <= 1e-12);
  }
}

TEST_CASE("vanishing P(+,+) is equivalent to tan(b1) tan(b2) = -c1/c2") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> c1sq(0.05, 0.95);
  std::uniform_real_distribution<double> beta(-1.45, 1.45);
  int zeros = 0, nonzeros = 0;
  for (int n = 0; n < 10000; ++n) {
    const auto s = make_state(c1sq(rng), random_sign(rng), random_sign(rng));
    const double a = s.c1() / s.c2();
    const double b1 = beta(rng);
    const double b2 = n % 2 == 0 ? std::atan(-a / std::tan(b1)) : beta(rng);
    if (std::abs(std::cos(b2)) < 0.05) continue;  // finite tangents only
    const bool zero_probability = joint_distribution(s, {b1, 0.0}, {b2, 0.0}).p_pp() <= 1e-12;
    const bool on_condition = std::abs(std::tan(b1) * std::tan(b2) + a) <= 1e-6;
    REQUIRE(zero_probability == on_condition);
    (zero_probability ? zeros : nonzeros)++;
  }
  CHECK(zeros > 1000);
  CHECK(nonzeros > 1000);
}

TEST_CASE("Hardy solver at the optimal point") {
  const auto sol = solve_hardy(make_state(0.177352), deg_to_rad(17.5566));
  const auto check = check_hardy(sol.config());
  CHECK(check.satisfied);
  CHECK(check.p_d == doctest::Approx(tau_inv5()).epsilon(1e-9));
  CHECK(std::abs(check.p_d - 0.0901699) < 1e-7);
  CHECK(sol.beta12 == deg_to_rad(17.5566));
  for (double d : sol.deltas) CHECK(d == 0.0);
}

TEST_CASE("Hardy solver rejects product, maximal and degenerate inputs") {
  CHECK_THROWS_AS(solve_hardy(make_state(0.5), 0.5), NotPartiallyEntangled);
  CHECK_THROWS_WITH(solve_hardy(make_state(0.5), 0.5), "maximally entangled state admits no Hardy solution");
  CHECK_THROWS_AS(solve_hardy(make_state(1.0), 0.5), NotPartiallyEntangled);
  CHECK_THROWS_AS(solve_hardy(make_state(0.0), 0.5), NotPartiallyEntangled);
  CHECK_THROWS_AS(solve_hardy(make_state(0.3), 0.0), DegenerateBeta0);
  CHECK_THROWS_AS(solve_hardy(make_state(0.3), pi / 2), DegenerateBeta0);
  CHECK_THROWS_AS(solve_hardy(make_state(0.3), -pi), DegenerateBeta0);
}

TEST_CASE("Hardy solver example at c1^2 = 0.3, beta0 = 40 deg") {
  const auto sol = solve_hardy(make_state(0.3), deg_to_rad(40.0));
  const auto check = check_hardy(sol.config());
  CHECK(check.p_a <= 1e-12);
  CHECK(check.p_b <= 1e-12);
  CHECK(check.p_c <= 1e-12);
  CHECK(check.p_d > 0.0);
  CHECK(check.satisfied);
}

TEST_CASE("Hardy chain relations hold for every solution") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> c1sq(0.05, 0.95);
  std::uniform_real_distribution<double> beta0(deg_to_rad(5.0), deg_to_rad(85.0));
  auto close = [](double x, double target) {
    return std::abs(x - target) <= 1e-9 * std::max(1.0, std::abs(target));
  };
  for (int n = 0; n < 10000; ++n) {
    const auto s = make_state(c1sq(rng), random_sign(rng), random_sign(rng));
    if (entanglement_class(s) != EntanglementClass::Partial) continue;
    const double b0 = (rng() & 1u ? 1.0 : -1.0) * beta0(rng);
    const auto sol = solve_hardy(s, b0);
    const double r = s.c1() / s.c2();
    const double t11 = std::tan(sol.beta11), t12 = std::tan(sol.beta12);
    const double t21 = std::tan(sol.beta21), t22 = std::tan(sol.beta22);
    REQUIRE(close(t11 * t21, -1.0 / r));
    REQUIRE(close(t11 * t22, -r));
    REQUIRE(close(t12 * t21, -r));
    REQUIRE(close(t12 * t22, -r * r * r));
    REQUIRE(check_hardy(sol.config()).satisfied);
  }
}

TEST_CASE("arctangent branch choice does not change any Hardy probability") {
  const auto sol = solve_hardy(make_state(0.3), deg_to_rad(40.0));
  auto shifted = sol.config();
  shifted.d1(Setting::One).beta += pi;
  shifted.d2(Setting::Two).beta -= 2 * pi;
  shifted.d1(Setting::Two).delta += 2 * pi;  // delta = n*pi handled through cos
  const auto a = check_hardy(sol.config());
  const auto b = check_hardy(shifted);
  CHECK(std::abs(a.p_d - b.p_d) <= 1e-12);
  CHECK(b.satisfied);
}

TEST_CASE("check_hardy on maximal and product states") {
  // Maximal state with tan(b1k) tan(b2l) = -1 for the three zero conditions.
  const double b11 = pi / 3;
  const double b21 = std::atan(-1.0 / std::tan(b11));
  ExperimentConfig maximal{make_state(0.5), {{{b11, 0.0}, {b11, 0.0}}}, {{{b21, 0.0}, {b21, 0.0}}}};
  const auto check = check_hardy(maximal);
  CHECK(check.p_d <= 1e-15);
  CHECK_FALSE(check.satisfied);

  // Product state: zero conditions can only be met by killing the Hardy probability.
  for (double x11 : {0.0, pi / 4, pi / 2, 3 * pi / 4})
    for (double x12 : {0.0, pi / 4, pi / 2, 3 * pi / 4})
      for (double x21 : {0.0, pi / 4, pi / 2, 3 * pi / 4})
        for (double x22 : {0.0, pi / 4, pi / 2, 3 * pi / 4}) {
          ExperimentConfig product{make_state(1.0), {{{x11, 0.0}, {x12, 0.0}}}, {{{x21, 0.0}, {x22, 0.0}}}};
          REQUIRE_FALSE(check_hardy(product).satisfied);
        }
}

TEST_CASE("maximal-entanglement forcing") {
  const auto s = make_state(0.5);
  const auto f = maximal_entanglement_forcing(s, {pi / 4, pi / 4, -pi / 4, -pi / 4});
  CHECK(f.tan_product == doctest::Approx(-1.0));
  CHECK(f.correlation == doctest::Approx(-1.0));

  const double b = std::atan(-1.0 / std::tan(pi / 3));
  CHECK(maximal_entanglement_forcing(s, {pi / 3, pi / 3, b, b}).tan_product == doctest::Approx(-1.0));

  CHECK_THROWS_AS(maximal_entanglement_forcing(make_state(0.3), {pi / 4, pi / 4, -pi / 4, -pi / 4}),
                  PreconditionViolation);
  CHECK_THROWS_AS(maximal_entanglement_forcing(make_state(0.5, Sign::Plus, Sign::Minus),
                                               {pi / 4, pi / 4, -pi / 4, -pi / 4}),
                  PreconditionViolation);
  CHECK_THROWS_AS(maximal_entanglement_forcing(s, {pi / 4, pi / 5, -pi / 4, -pi / 4}), PreconditionViolation);
}

TEST_CASE("forcing property over random maximal configurations") {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> beta(-1.4, 1.4);
  const auto s = make_state(0.5);
  for (int n = 0; n < 10000; ++n) {
    const double b11 = beta(rng);
    if (std::abs(std::tan(b11)) < 0.05) continue;
    const double b21 = std::atan(-1.0 / std::tan(b11));
    const double b22 = std::atan(-1.0 / std::tan(b11));
    const double b12 = std::atan(-1.0 / std::tan(b21));
    const auto f = maximal_entanglement_forcing(s, {b11, b12, b21, b22});
    REQUIRE(std::abs(f.tan_product + 1.0) <= 1e-10);
    REQUIRE(std::abs(f.correlation + 1.0) <= 1e-10);
    const ExperimentConfig cfg{s, {{{b11, 0.0}, {b12, 0.0}}}, {{{b21, 0.0}, {b22, 0.0}}}};
    REQUIRE(check_hardy(cfg).p_d <= 1e-10);
  }
}

TEST_CASE("a nonzero Hardy probability at maximal entanglement breaks the third zero condition") {
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> beta(-1.4, 1.4);
  const auto s = make_state(0.5);
  int tested = 0;
  for (int n = 0; n < 10000; ++n) {
    const double b11 = beta(rng);
    if (std::abs(std::tan(b11)) < 0.05) continue;
    const double b21 = std::atan(-1.0 / std::tan(b11));  // first two zero conditions
    const double b12 = beta(rng);
    const ExperimentConfig cfg{s, {{{b11, 0.0}, {b12, 0.0}}}, {{{b21, 0.0}, {b21, 0.0}}}};
    if (check_hardy(cfg).p_d > 1e-6) {
      ++tested;
      REQUIRE(std::abs(std::tan(b12) * std::tan(b21) + 1.0) >= 1e-6);
    }
  }
  CHECK(tested > 1000);
}

TEST_CASE("sign-variant Hardy systems") {
  const auto canonical = check_hardy(solve_hardy(make_state(0.3), deg_to_rad(40.0)).config());
  for (auto v : {HardyVariant::Canonical, HardyVariant::AllFlipped, HardyVariant::Particle1Flipped,
                 HardyVariant::Particle2Flipped}) {
    const auto sol = solve_hardy(make_state(0.3), deg_to_rad(40.0), v);
    const auto check = check_hardy(sol.config(), v);
    CHECK(check.satisfied);
    CHECK(std::abs(check.p_d - canonical.p_d) <= 1e-12);
    for (double b : {sol.beta11, sol.beta12, sol.beta21, sol.beta22}) {
      CHECK(b >= -pi / 2);
      CHECK(b <= pi / 2);
    }
  }

  // Flipping only particle 1's outcomes, written out explicitly.
  const auto cfg = solve_hardy(make_state(0.3), deg_to_rad(40.0), HardyVariant::Particle1Flipped).config();
  CHECK(joint_distribution(cfg, Setting::One, Setting::One).at(Outcome::Plus, Outcome::Minus) <= 1e-12);
  CHECK(joint_distribution(cfg, Setting::One, Setting::Two).at(Outcome::Minus, Outcome::Plus) <= 1e-12);
  CHECK(joint_distribution(cfg, Setting::Two, Setting::One).at(Outcome::Minus, Outcome::Plus) <= 1e-12);
  CHECK(joint_distribution(cfg, Setting::Two, Setting::Two).at(Outcome::Minus, Outcome::Plus) > 0.04);

  CHECK(parse_variant("particle2-flipped") == HardyVariant::Particle2Flipped);
  CHECK_THROWS_AS(parse_variant("sideways"), PreconditionViolation);
}

TEST_CASE("Hardy inequality") {
  const auto opt = hardy_inequality_lhs_rhs(solve_hardy(make_state(0.177352), deg_to_rad(17.5566)).config());
  CHECK(opt.lhs == doctest::Approx(tau_inv5()).epsilon(1e-9));
  CHECK(opt.rhs <= 1e-12);
  CHECK(opt.violated());

  const auto measured = hardy_inequality_lhs_rhs(0.0070, 0.0034, 0.0040, 0.099);
  CHECK(measured.lhs == 0.099);
  CHECK(measured.rhs == doctest::Approx(0.0144).epsilon(1e-14));
  CHECK(measured.violated());

  const ExperimentConfig aligned{make_state(1.0), {{{0.0, 0.0}, {pi / 2, 0.0}}}, {{{0.0, 0.0}, {0.0, 0.0}}}};
  const auto product = hardy_inequality_lhs_rhs(aligned);
  CHECK(product.lhs <= 1e-15);
  CHECK_FALSE(product.violated());
}
