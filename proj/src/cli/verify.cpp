#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hardylab/cli.hpp"
#include "hardylab/correlations.hpp"

namespace hardylab::cli {

std::vector<VerifyCheck> run_verify_suite(std::uint64_t seed) {
  std::vector<VerifyCheck> checks;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);

  {
    VerifyCheck c{"normalization", 0.0, 1e-12, false};
    for (int n = 0; n < 100000; ++n) {
      const auto state = make_state(unit(rng), unit(rng) < 0.5 ? Sign::Plus : Sign::Minus);
      const auto jd = joint_distribution(state, {angle(rng), angle(rng)}, {angle(rng), angle(rng)});
      c.worst = std::max(c.worst, std::abs(jd.sum() - 1.0));
    }
    c.passed = c.worst <= c.tolerance;
    checks.push_back(c);
  }
  {
    VerifyCheck c{"delta-identity-51x51", 0.0, 1e-10, false};
    c.worst = scan_surface(51, 51).max_identity_residual();
    c.passed = c.worst <= c.tolerance;
    checks.push_back(c);
  }
  {
    // tan(b1) tan(b2) = -c1/c2 must zero P(+,+); worst probability reported.
    VerifyCheck c{"vanishing-condition-round-trip", 0.0, 1e-12, false};
    std::uniform_real_distribution<double> c1sq(0.05, 0.95);
    std::uniform_real_distribution<double> beta(-1.4, 1.4);
    for (int n = 0; n < 10000; ++n) {
      const auto state = make_state(c1sq(rng));
      const double b1 = beta(rng);
      if (std::abs(std::tan(b1)) < 1e-3) continue;
      const double x = solve_vanishing_condition(state.c1() / state.c2());
      const double b2 = std::atan(x / std::tan(b1));
      c.worst = std::max(c.worst, joint_distribution(state, {b1, 0.0}, {b2, 0.0}).p_pp());
    }
    c.passed = c.worst <= c.tolerance;
    checks.push_back(c);
  }
  return checks;
}

}  // namespace hardylab::cli
