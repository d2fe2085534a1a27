#include "hardylab/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hardylab/errors.hpp"

namespace hardylab {
namespace {

constexpr double kClampTol = 1e-12;

double clamp_probability(double p) {
  if (!(p >= -kClampTol && p <= 1.0 + kClampTol)) {
    throw InternalError("joint probability outside [0, 1]: " + std::to_string(p));
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

JointDistribution::JointDistribution(double p_pp, double p_mm, double p_pm, double p_mp)
    : p_pp_(clamp_probability(p_pp)),
      p_mm_(clamp_probability(p_mm)),
      p_pm_(clamp_probability(p_pm)),
      p_mp_(clamp_probability(p_mp)) {}

double JointDistribution::at(Outcome first, Outcome second) const {
  if (first == Outcome::Plus) return second == Outcome::Plus ? p_pp_ : p_pm_;
  return second == Outcome::Plus ? p_mp_ : p_mm_;
}

JointDistribution joint_distribution(const SchmidtState& state, const MeasurementSetting& s1,
                                     const MeasurementSetting& s2) {
  const double c1sq = state.c1() * state.c1();
  const double c2sq = state.c2() * state.c2();
  const double cos1 = std::cos(s1.beta), sin1 = std::sin(s1.beta);
  const double cos2 = std::cos(s2.beta), sin2 = std::sin(s2.beta);
  const double cc = cos1 * cos1 * cos2 * cos2;
  const double ss = sin1 * sin1 * sin2 * sin2;
  const double cs = cos1 * cos1 * sin2 * sin2;
  const double sc = sin1 * sin1 * cos2 * cos2;
  // 1/2 c1 c2 cos(d) sin2b1 sin2b2
  const double interference = 0.5 * state.c1() * state.c2() * std::cos(s1.delta - s2.delta) *
                              std::sin(2.0 * s1.beta) * std::sin(2.0 * s2.beta);

  return JointDistribution(c1sq * cc + c2sq * ss + interference,
                           c1sq * ss + c2sq * cc + interference,
                           c1sq * cs + c2sq * sc - interference,
                           c1sq * sc + c2sq * cs - interference);
}

JointDistribution joint_distribution(const ExperimentConfig& config, Setting k, Setting l) {
  return joint_distribution(config.state, config.d1(k), config.d2(l));
}

double correlation(const SchmidtState& state, const MeasurementSetting& s1,
                   const MeasurementSetting& s2) {
  return std::cos(2.0 * s1.beta) * std::cos(2.0 * s2.beta) +
         2.0 * state.c1() * state.c2() * std::cos(s1.delta - s2.delta) * std::sin(2.0 * s1.beta) *
             std::sin(2.0 * s2.beta);
}

CorrelationSet correlations(const ExperimentConfig& config) {
  return {correlation(config.state, config.d1(Setting::One), config.d2(Setting::One)),
          correlation(config.state, config.d1(Setting::One), config.d2(Setting::Two)),
          correlation(config.state, config.d1(Setting::Two), config.d2(Setting::One)),
          correlation(config.state, config.d1(Setting::Two), config.d2(Setting::Two))};
}

PerfectCorrelation is_perfectly_correlated(const SchmidtState& state, const MeasurementSetting& s1,
                                           const MeasurementSetting& s2, double tol) {
  if (!(tol > 0.0)) throw PreconditionViolation("tolerance must be positive");
  const double e = correlation(state, s1, s2);
  if (e >= 1.0 - tol) return PerfectCorrelation::Correlated;
  if (e <= -1.0 + tol) return PerfectCorrelation::Anticorrelated;
  return PerfectCorrelation::None;
}

const char* to_string(PerfectCorrelation c) {
  switch (c) {
    case PerfectCorrelation::Correlated: return "correlated";
    case PerfectCorrelation::Anticorrelated: return "anticorrelated";
    case PerfectCorrelation::None: return "none";
  }
  return "?";
}

}  // namespace hardylab
