#pragma once

#include "hardylab/qstate.hpp"

namespace hardylab {

enum class Outcome : int { Plus = 1, Minus = -1 };

constexpr Outcome flip(Outcome o) { return o == Outcome::Plus ? Outcome::Minus : Outcome::Plus; }

/// Probabilities of the four outcome pairs of one joint measurement.
///
/// Entries within 1e-12 of [0, 1] are clamped; anything further out throws
/// InternalError, since it can only come from a broken formula.
class JointDistribution {
public:
  JointDistribution(double p_pp, double p_mm, double p_pm, double p_mp);

  double p_pp() const { return p_pp_; }
  double p_mm() const { return p_mm_; }
  double p_pm() const { return p_pm_; }
  double p_mp() const { return p_mp_; }

  double at(Outcome first, Outcome second) const;

  /// P(+,+) + P(-,-)
  double p_equal() const { return p_pp_ + p_mm_; }
  double sum() const { return p_pp_ + p_mm_ + p_pm_ + p_mp_; }
  double correlation() const { return p_pp_ + p_mm_ - p_pm_ - p_mp_; }

private:
  double p_pp_, p_mm_, p_pm_, p_mp_;
};

/// e_kl = E(D1k, D2l).
struct CorrelationSet {
  double e11 = 0.0;
  double e12 = 0.0;
  double e21 = 0.0;
  double e22 = 0.0;
};

JointDistribution joint_distribution(const SchmidtState& state, const MeasurementSetting& s1,
                                     const MeasurementSetting& s2);

JointDistribution joint_distribution(const ExperimentConfig& config, Setting k, Setting l);

/// cos2b1 cos2b2 + 2 c1 c2 cos(d1 - d2) sin2b1 sin2b2
double correlation(const SchmidtState& state, const MeasurementSetting& s1,
                   const MeasurementSetting& s2);

CorrelationSet correlations(const ExperimentConfig& config);

enum class PerfectCorrelation { Correlated = 1, Anticorrelated = -1, None = 0 };

PerfectCorrelation is_perfectly_correlated(const SchmidtState& state, const MeasurementSetting& s1,
                                           const MeasurementSetting& s2, double tol);

const char* to_string(PerfectCorrelation c);

}  // namespace hardylab
