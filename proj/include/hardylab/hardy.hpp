#pragma once

#include <array>
#include <string>
#include <utility>

#include "hardylab/correlations.hpp"
#include "hardylab/qstate.hpp"

namespace hardylab {

inline constexpr double kZeroTol = 1e-10;
inline constexpr double kDegenerateSin2Beta0 = 1e-9;

/// Outcome-sign conventions under which the Hardy argument goes through.
/// Each variant is a relabeling of the canonical outcomes: AllFlipped swaps
/// every +1/-1, Particle1Flipped only those of D1k, Particle2Flipped only D2l.
enum class HardyVariant { Canonical, AllFlipped, Particle1Flipped, Particle2Flipped };

const char* to_string(HardyVariant v);
/// Accepts "canonical", "all-flipped", "particle1-flipped", "particle2-flipped".
HardyVariant parse_variant(const std::string& name);

/// Outcome pair (first, second) that each Hardy condition refers to, after the
/// variant's relabeling is applied to the canonical pair.
std::pair<Outcome, Outcome> relabel(HardyVariant v, Outcome first, Outcome second);

/// The four Hardy probabilities: p_a, p_b, p_c must vanish, p_d must not.
///   p_a = P(D11=-1, D21=-1)
///   p_b = P(D11=+1, D22=+1)
///   p_c = P(D12=+1, D21=+1)
///   p_d = P(D12=+1, D22=+1)
/// (canonical labels; variants relabel outcomes).
struct HardyCheck {
  double p_a = 0.0;
  double p_b = 0.0;
  double p_c = 0.0;
  double p_d = 0.0;
  bool satisfied = false;
};

struct HardySolution {
  SchmidtState state;
  HardyVariant variant = HardyVariant::Canonical;
  double beta0 = 0.0;  // free parameter, equal to beta12 in the canonical chain
  double beta11 = 0.0;
  double beta12 = 0.0;
  double beta21 = 0.0;
  double beta22 = 0.0;
  std::array<double, 4> deltas{};  // d11, d12, d21, d22

  ExperimentConfig config() const;
};

/// Root of (x + a)^2 = 0: the value tan(b1) tan(b2) must take for P(+,+) to
/// vanish when cos(delta) = +1, with a = c1/c2. Passing a = c2/c1 gives the
/// P(-,-) condition. Throws DomainError for non-finite a (c2 = 0).
double solve_vanishing_condition(double ratio_a);

/// Ratio helper: c1/c2, throwing DomainError when c2 == 0.
double coefficient_ratio(const SchmidtState& state);

/// Closes the Hardy chain for a partially entangled state, given beta12 = beta0:
///   tan b11 = (c2/c1)^2 tan b0
///   tan b21 = -(c1/c2) cot b0
///   tan b22 = -(c1/c2)^3 cot b0
/// with all relative phases zero. Angles are principal arctangents in
/// (-pi/2, pi/2); non-canonical variants add pi/2 to the flipped particle's
/// angles and wrap back into that interval.
///
/// Throws NotPartiallyEntangled for product or maximal states and
/// DegenerateBeta0 when |sin 2 beta0| < 1e-9.
HardySolution solve_hardy(const SchmidtState& state, double beta0,
                          HardyVariant variant = HardyVariant::Canonical);

HardyCheck check_hardy(const ExperimentConfig& config, HardyVariant variant = HardyVariant::Canonical,
                       double zero_tol = kZeroTol);

/// Beta angles of a maximally entangled configuration.
struct MaximalBetas {
  double beta11 = 0.0;
  double beta12 = 0.0;
  double beta21 = 0.0;
  double beta22 = 0.0;
};

struct ForcedRelation {
  double tan_product = 0.0;  // tan b12 tan b22
  double correlation = 0.0;  // E(D12, D22) with all phases zero
};

/// For a same-sign maximal state whose betas satisfy
/// tan b11 tan b21 = tan b11 tan b22 = tan b12 tan b21 = -1 (within tol),
/// returns the fourth product tan b12 tan b22 and E(D12, D22). Both are -1.
/// Throws PreconditionViolation when the state or betas do not qualify, or if
/// the forced product is not -1 within tol.
ForcedRelation maximal_entanglement_forcing(const SchmidtState& state, const MaximalBetas& betas,
                                            double tol = 1e-9);

struct HardyInequality {
  double lhs = 0.0;
  double rhs = 0.0;

  bool violated() const { return lhs > rhs; }
  double margin() const { return lhs - rhs; }
};

/// P(D12=+1,D22=+1) <= P(D11=-1,D21=-1) + P(D11=+1,D22=+1) + P(D12=+1,D21=+1)
HardyInequality hardy_inequality_lhs_rhs(const ExperimentConfig& config);

/// Same inequality from four externally supplied probabilities.
HardyInequality hardy_inequality_lhs_rhs(double p_a, double p_b, double p_c, double p_d);

}  // namespace hardylab
