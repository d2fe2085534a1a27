#include <cmath>

#include "hardylab/cli.hpp"

namespace hardylab::cli {

FixtureReport evaluate_fixture(const MeasuredProbability& p_a, const MeasuredProbability& p_b,
                               const MeasuredProbability& p_c, const MeasuredProbability& p_d) {
  auto real = [](std::int64_t e4) { return static_cast<double>(e4) / 1e4; };
  FixtureReport r;
  r.inequality = hardy_inequality_lhs_rhs(real(p_a.value_e4), real(p_b.value_e4),
                                          real(p_c.value_e4), real(p_d.value_e4));
  r.margin_e4 = p_d.value_e4 - (p_a.value_e4 + p_b.value_e4 + p_c.value_e4);
  r.margin = real(r.margin_e4);
  double var = 0.0;
  for (const auto* p : {&p_a, &p_b, &p_c, &p_d}) var += std::pow(real(p->uncertainty_e4), 2);
  r.margin_uncertainty = std::sqrt(var);
  return r;
}

FixtureReport hardy_experiment_fixture() {
  return evaluate_fixture({70, 5}, {34, 4}, {40, 4}, {990, 20});
}

}  // namespace hardylab::cli
