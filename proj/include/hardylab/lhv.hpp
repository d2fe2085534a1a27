#pragma once

#include <array>
#include <cstdint>
#include <variant>
#include <vector>

#include "hardylab/correlations.hpp"
#include "hardylab/qstate.hpp"

namespace hardylab {

/// Predetermined outcomes for D11, D12 (particle 1) and D21, D22 (particle 2).
struct DeterministicAssignment {
  Outcome a1 = Outcome::Plus;
  Outcome a2 = Outcome::Plus;
  Outcome b1 = Outcome::Plus;
  Outcome b2 = Outcome::Plus;

  /// Bits 3..0 hold a1, a2, b1, b2; a set bit means -1.
  static DeterministicAssignment from_index(unsigned index);
  unsigned index() const;

  Outcome particle1(Setting k) const { return k == Setting::One ? a1 : a2; }
  Outcome particle2(Setting l) const { return l == Setting::One ? b1 : b2; }

  /// a1 b1 + a1 b2 + a2 b1 - a2 b2, always +2 or -2.
  int chsh_combination() const;
  CorrelationSet correlations() const;

  bool operator==(const DeterministicAssignment&) const = default;
};

std::array<DeterministicAssignment, 16> all_assignments();

/// Convex combination of deterministic assignments, indexed as in
/// DeterministicAssignment::index(). Weights are non-negative and sum to 1
/// within 1e-12 (checked on construction).
class Mixture {
public:
  explicit Mixture(const std::array<double, 16>& weights);

  static Mixture pure(const DeterministicAssignment& a);

  const std::array<double, 16>& weights() const { return weights_; }

private:
  std::array<double, 16> weights_;
};

/// Hidden variable on [0, 1] with a piecewise-constant density; within each
/// segment every observable answers +1 with a fixed probability.
class StochasticModel {
public:
  /// breakpoints: 0 = x0 < x1 < ... < xn = 1. density: n non-negative values
  /// integrating to 1 (empty means uniform). p_plus[o][s]: probability of +1
  /// for observable o (D11, D12, D21, D22) in segment s.
  StochasticModel(std::vector<double> breakpoints, std::vector<double> density,
                  std::array<std::vector<double>, 4> p_plus);

  std::size_t segment_count() const { return masses_.size(); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  /// Probability mass of segment s under the density.
  double segment_mass(std::size_t s) const { return masses_[s]; }
  double p_plus(int particle, Setting setting, std::size_t segment) const;

private:
  std::vector<double> breakpoints_;
  std::vector<double> masses_;
  std::array<std::vector<double>, 4> p_plus_;
};

using LhvStrategy = std::variant<Mixture, StochasticModel>;

struct SettingPair {
  Setting k = Setting::One;
  Setting l = Setting::One;
};

/// Pair order used everywhere: (1,1), (1,2), (2,1), (2,2), i.e. e11, e12, e21, e22.
inline constexpr std::array<SettingPair, 4> kSettingPairs{{{Setting::One, Setting::One},
                                                           {Setting::One, Setting::Two},
                                                           {Setting::Two, Setting::One},
                                                           {Setting::Two, Setting::Two}}};

/// Sum over hidden states of rho(lambda) P(D1k = m | lambda) P(D2l = n | lambda).
double lhv_joint_probability(const LhvStrategy& strategy, SettingPair pair, Outcome m, Outcome n);

JointDistribution lhv_joint_distribution(const LhvStrategy& strategy, SettingPair pair);
CorrelationSet lhv_correlations(const LhvStrategy& strategy);

/// Outcome counts per setting pair, cells ordered (++, --, +-, -+).
struct TrialTally {
  std::uint64_t trials_per_pair = 0;
  std::array<std::array<std::uint64_t, 4>, 4> counts{};

  double frequency(std::size_t pair, Outcome m, Outcome n) const;
  double estimated_correlation(std::size_t pair) const;
  /// Binomial standard error of the correlation estimate, sqrt((1 - E^2) / N).
  double correlation_standard_error(std::size_t pair) const;
  CorrelationSet estimated_correlations() const;
  double estimated_delta() const;
  double delta_standard_error() const;

  bool operator==(const TrialTally&) const = default;
};

/// Monte Carlo realization of the strategy. Every trial draws one hidden state
/// and asks each particle for an outcome using only its own setting.
///
/// Trials are split into fixed chunks of kSimulationChunk; chunk c of pair p is
/// driven by std::mt19937_64 seeded with splitmix64(seed, p, c), so tallies
/// depend only on (strategy, trials_per_pair, seed), never on thread count.
TrialTally simulate(const LhvStrategy& strategy, std::uint64_t trials_per_pair, std::uint64_t seed);

inline constexpr std::uint64_t kSimulationChunk = 1u << 16;

/// Given three perfect correlations of the same sign s, local realism forces
/// the fourth to s as well. Throws PreconditionViolation unless all three
/// inputs equal the same value in {+1, -1}.
int local_realism_forcing(int e11, int e12, int e21);

/// Correlation targets given exactly as numerators over a common positive
/// denominator.
struct RationalCorrelations {
  std::array<std::int64_t, 4> numerators{};  // e11, e12, e21, e22
  std::int64_t denominator = 1;
};

/// Exact membership test for the set of correlations reachable by mixtures.
/// The facet normals (the 16 sign vectors and the 8 signed unit vectors) are
/// bounded by enumerating all 16 deterministic assignments.
bool mixture_feasible(const RationalCorrelations& target);

/// Nearest mixture (least squares in correlation space) found by Frank-Wolfe
/// over the 16-vertex simplex.
Mixture fit_mixture(const CorrelationSet& target, int iterations = 4000);

}  // namespace hardylab
