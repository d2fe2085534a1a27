#include "hardylab/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hardylab/errors.hpp"

namespace hardylab {
namespace {

// Representative of x modulo pi in [-pi/2, pi/2].
double wrap_half_turn(double x) { return x - std::numbers::pi * std::round(x / std::numbers::pi); }

struct Condition {
  Setting k;
  Setting l;
  Outcome first;
  Outcome second;
};

// Canonical Hardy conditions a, b, c (must vanish) and d (must not).
constexpr std::array<Condition, 4> kConditions{{
    {Setting::One, Setting::One, Outcome::Minus, Outcome::Minus},
    {Setting::One, Setting::Two, Outcome::Plus, Outcome::Plus},
    {Setting::Two, Setting::One, Outcome::Plus, Outcome::Plus},
    {Setting::Two, Setting::Two, Outcome::Plus, Outcome::Plus},
}};

bool flips_particle1(HardyVariant v) {
  return v == HardyVariant::AllFlipped || v == HardyVariant::Particle1Flipped;
}
bool flips_particle2(HardyVariant v) {
  return v == HardyVariant::AllFlipped || v == HardyVariant::Particle2Flipped;
}

}  // namespace

const char* to_string(HardyVariant v) {
  switch (v) {
    case HardyVariant::Canonical: return "canonical";
    case HardyVariant::AllFlipped: return "all-flipped";
    case HardyVariant::Particle1Flipped: return "particle1-flipped";
    case HardyVariant::Particle2Flipped: return "particle2-flipped";
  }
  return "?";
}

HardyVariant parse_variant(const std::string& name) {
  for (auto v : {HardyVariant::Canonical, HardyVariant::AllFlipped, HardyVariant::Particle1Flipped,
                 HardyVariant::Particle2Flipped}) {
    if (name == to_string(v)) return v;
  }
  throw PreconditionViolation("unknown Hardy variant '" + name + "'");
}

std::pair<Outcome, Outcome> relabel(HardyVariant v, Outcome first, Outcome second) {
  return {flips_particle1(v) ? flip(first) : first, flips_particle2(v) ? flip(second) : second};
}

ExperimentConfig HardySolution::config() const {
  return ExperimentConfig{state,
                          {MeasurementSetting{beta11, deltas[0]}, MeasurementSetting{beta12, deltas[1]}},
                          {MeasurementSetting{beta21, deltas[2]}, MeasurementSetting{beta22, deltas[3]}}};
}

double solve_vanishing_condition(double ratio_a) {
  if (!std::isfinite(ratio_a)) {
    throw DomainError("coefficient ratio is undefined (c2 = 0)");
  }
  // x^2 + 2ax + a^2 = (x + a)^2 has the double root x = -a.
  return -ratio_a;
}

double coefficient_ratio(const SchmidtState& state) {
  if (state.c2() == 0.0) throw DomainError("coefficient ratio is undefined (c2 = 0)");
  return state.c1() / state.c2();
}

HardySolution solve_hardy(const SchmidtState& state, double beta0, HardyVariant variant) {
  if (!std::isfinite(beta0)) throw DomainError("beta0 must be finite");
  switch (entanglement_class(state)) {
    case EntanglementClass::Product:
      throw NotPartiallyEntangled("product state admits no Hardy solution");
    case EntanglementClass::Maximal:
      throw NotPartiallyEntangled("maximally entangled state admits no Hardy solution");
    case EntanglementClass::Partial:
      break;
  }
  if (std::abs(std::sin(2.0 * beta0)) < kDegenerateSin2Beta0) {
    throw DegenerateBeta0("beta0 is a multiple of 90 degrees; the Hardy chain degenerates");
  }

  const double r = coefficient_ratio(state);  // c1/c2
  const double tan0 = std::tan(beta0);
  const double cot0 = 1.0 / tan0;

  HardySolution sol{.state = state, .variant = variant, .beta0 = beta0};
  sol.beta12 = beta0;
  sol.beta11 = std::atan(tan0 / (r * r));
  sol.beta21 = std::atan(-r * cot0);
  sol.beta22 = std::atan(-r * r * r * cot0);

  // Relabeling a particle's outcomes is a quarter turn of its betas.
  if (flips_particle1(variant)) {
    sol.beta11 = wrap_half_turn(sol.beta11 + std::numbers::pi / 2);
    sol.beta12 = wrap_half_turn(sol.beta12 + std::numbers::pi / 2);
  }
  if (flips_particle2(variant)) {
    sol.beta21 = wrap_half_turn(sol.beta21 + std::numbers::pi / 2);
    sol.beta22 = wrap_half_turn(sol.beta22 + std::numbers::pi / 2);
  }
  return sol;
}

HardyCheck check_hardy(const ExperimentConfig& config, HardyVariant variant, double zero_tol) {
  std::array<double, 4> p{};
  for (std::size_t i = 0; i < kConditions.size(); ++i) {
    const auto& c = kConditions[i];
    const auto [m, n] = relabel(variant, c.first, c.second);
    p[i] = joint_distribution(config, c.k, c.l).at(m, n);
  }
  HardyCheck check{p[0], p[1], p[2], p[3], false};
  check.satisfied = std::max({p[0], p[1], p[2]}) <= zero_tol && p[3] > zero_tol;
  return check;
}

ForcedRelation maximal_entanglement_forcing(const SchmidtState& state, const MaximalBetas& b,
                                            double tol) {
  if (entanglement_class(state) != EntanglementClass::Maximal) {
    throw PreconditionViolation("forcing relation requires a maximally entangled state");
  }
  if (state.c1() * state.c2() <= 0.0) {
    throw PreconditionViolation("forcing relation requires c1 and c2 of the same sign");
  }
  const double t11 = std::tan(b.beta11), t12 = std::tan(b.beta12);
  const double t21 = std::tan(b.beta21), t22 = std::tan(b.beta22);
  for (double product : {t11 * t21, t11 * t22, t12 * t21}) {
    if (!(std::abs(product + 1.0) <= tol)) {
      throw PreconditionViolation("betas do not satisfy tan(b1k) tan(b2l) = -1");
    }
  }

  ForcedRelation forced;
  forced.tan_product = t12 * t22;
  // Three inputs each within tol of -1 bound the forced product within ~3 tol.
  if (!(std::abs(forced.tan_product + 1.0) <= 4.0 * tol)) {
    throw InternalError("forced relation tan(b12) tan(b22) = -1 failed");
  }
  forced.correlation = correlation(state, {b.beta12, 0.0}, {b.beta22, 0.0});
  return forced;
}

HardyInequality hardy_inequality_lhs_rhs(const ExperimentConfig& config) {
  const auto check = check_hardy(config, HardyVariant::Canonical);
  return hardy_inequality_lhs_rhs(check.p_a, check.p_b, check.p_c, check.p_d);
}

HardyInequality hardy_inequality_lhs_rhs(double p_a, double p_b, double p_c, double p_d) {
  return {p_d, p_a + p_b + p_c};
}

}  // namespace hardylab
