#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "hardylab/correlations.hpp"
#include "hardylab/qstate.hpp"

namespace hardylab {

/// Golden mean and the maxima it pins down.
inline const double kGoldenMean = (1.0 + std::sqrt(5.0)) / 2.0;
inline const double kMaxHardyProbability = 1.0 / (kGoldenMean * kGoldenMean * kGoldenMean *
                                                  kGoldenMean * kGoldenMean);
inline const double kMaxHardyDelta = 2.0 + 4.0 * kMaxHardyProbability;
inline const double kTsirelsonBound = 2.0 * std::numbers::sqrt2;

struct ChshResult {
  double delta = 0.0;
  CorrelationSet correlations;
  bool violated = false;  // delta > 2 + tol
};

/// |e11 + e12 + e21 - e22|
double delta_from_correlations(const CorrelationSet& c);

ChshResult evaluate_chsh(const ExperimentConfig& config, double tol = 1e-9);

/// 2 |P=(11,21) + P=(11,22) + P=(12,21) - P=(12,22) - 1| with P= the
/// equal-outcome probability of each pair. Valid for any configuration.
double delta_from_probabilities(const ExperimentConfig& config);

/// Five-probability form valid once the three Hardy zero-conditions hold:
/// 2 |P(11++,21) + P(11--,22) + P(12--,21) - P(12++,22) - P(12--,22) - 1|.
double delta_hardy_conditioned(const ExperimentConfig& config);

/// Closed form of delta on the canonical Hardy chain as a function of
/// (c1^2, beta0), evaluated term by term. Throws DomainError at c1^2 in {0, 1}
/// or |sin 2 beta0| < 1e-9.
double delta_closed_form(double c1_squared, double beta0);

/// P(D12=+1, D22=+1) on the canonical chain; the fourth term of the closed form.
double hardy_probability_closed_form(double c1_squared, double beta0);

/// One point of the delta surface. Singular inputs (c1^2 in {0, 0.5, 1} or
/// beta0 = n pi/2) report delta = 2, p_hardy = 0 and degenerate = true.
struct SurfacePoint {
  double c1_squared = 0.0;
  double beta0 = 0.0;  // radians
  double p_hardy = 0.0;
  double delta = 2.0;
  bool degenerate = false;
};

/// p_hardy comes from the probability pipeline (Hardy solver + joint
/// distribution), delta from the closed form, so the two are independent.
SurfacePoint surface_point(double c1_squared, double beta0);

/// Uniform grid over c1^2 in [0, 1] and beta0 in [0, 90] degrees, both
/// endpoints included, stored row-major with c1^2 as the slow axis.
class ScanGrid {
public:
  ScanGrid(std::size_t c1_sq_steps, std::size_t beta0_steps);

  std::size_t c1_sq_steps() const { return c1_sq_steps_; }
  std::size_t beta0_steps() const { return beta0_steps_; }
  double c1_squared_at(std::size_t i) const;
  double beta0_deg_at(std::size_t j) const;

  const SurfacePoint& at(std::size_t i, std::size_t j) const { return cells_[i * beta0_steps_ + j]; }
  SurfacePoint& at(std::size_t i, std::size_t j) { return cells_[i * beta0_steps_ + j]; }
  const std::vector<SurfacePoint>& cells() const { return cells_; }

  /// max over cells of |delta - 2 - 4 p_hardy|
  double max_identity_residual() const;
  /// max over cells of |delta(c, b) - delta(1 - c, 90deg - b)|
  double max_symmetry_residual() const;
  const SurfacePoint& max_cell() const;

private:
  std::size_t c1_sq_steps_;
  std::size_t beta0_steps_;
  std::vector<SurfacePoint> cells_;
};

/// Fills the grid; rows are computed in parallel, results are order-independent.
/// Throws PreconditionViolation for fewer than 2 steps on either axis.
ScanGrid scan_surface(std::size_t c1_sq_steps, std::size_t beta0_steps);

struct Optimum {
  double c1_squared = 0.0;
  double beta0 = 0.0;  // radians
  double delta_max = 0.0;
  double p_hardy = 0.0;
};

/// Coarse 201x181 grid over the closed form, then coordinate-descent
/// refinement with a shrinking step until it drops below 1e-10.
Optimum optimize_delta();

/// |cos 2d11 + cos 2d12 + cos 2d21 - cos 2d22| for beta differences
/// d_kl = b1k - b2l, the maximally entangled case with 2 c1 c2 cos(delta) = 1.
double delta_free_beta(const std::array<double, 4>& beta_diffs);

/// |cos d11 + cos d12 + cos d21 - cos d22| for phase differences
/// d_kl = delta1k - delta2l, maximal state with betas (pi/4, -3pi/4, 3pi/4, -pi/4).
double delta_free_phase(const std::array<double, 4>& delta_diffs);

/// The fixed betas of the phase-only family, as (b11, b12, b21, b22).
std::array<double, 4> phase_family_betas();

}  // namespace hardylab
