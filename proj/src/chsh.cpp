#include "hardylab/chsh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hardylab/errors.hpp"
#include "hardylab/hardy.hpp"
#include "hardylab/parallel.hpp"

namespace hardylab {
namespace {

constexpr double kEndpointTol = 1e-12;

void require_closed_form_domain(double c1_squared, double beta0) {
  if (!(c1_squared > kEndpointTol && c1_squared < 1.0 - kEndpointTol)) {
    throw DomainError("closed form needs 0 < c1^2 < 1");
  }
  if (!std::isfinite(beta0) || std::abs(std::sin(2.0 * beta0)) < kDegenerateSin2Beta0) {
    throw DomainError("closed form needs beta0 away from multiples of 90 degrees");
  }
}

double sq(double x) { return x * x; }

}  // namespace

double delta_from_correlations(const CorrelationSet& c) {
  return std::abs(c.e11 + c.e12 + c.e21 - c.e22);
}

ChshResult evaluate_chsh(const ExperimentConfig& config, double tol) {
  ChshResult r;
  r.correlations = correlations(config);
  r.delta = delta_from_correlations(r.correlations);
  r.violated = r.delta > 2.0 + tol;
  return r;
}

double delta_from_probabilities(const ExperimentConfig& config) {
  const double p11 = joint_distribution(config, Setting::One, Setting::One).p_equal();
  const double p12 = joint_distribution(config, Setting::One, Setting::Two).p_equal();
  const double p21 = joint_distribution(config, Setting::Two, Setting::One).p_equal();
  const double p22 = joint_distribution(config, Setting::Two, Setting::Two).p_equal();
  return 2.0 * std::abs(p11 + p12 + p21 - p22 - 1.0);
}

double delta_hardy_conditioned(const ExperimentConfig& config) {
  const auto j11 = joint_distribution(config, Setting::One, Setting::One);
  const auto j12 = joint_distribution(config, Setting::One, Setting::Two);
  const auto j21 = joint_distribution(config, Setting::Two, Setting::One);
  const auto j22 = joint_distribution(config, Setting::Two, Setting::Two);
  return 2.0 * std::abs(j11.p_pp() + j12.p_mm() + j21.p_mm() - j22.p_pp() - j22.p_mm() - 1.0);
}

double delta_closed_form(double c1_squared, double beta0) {
  require_closed_form_domain(c1_squared, beta0);
  const double s = c1_squared;
  const double u = 1.0 - s;
  const double tan2 = sq(std::tan(beta0));
  const double cot2 = 1.0 / tan2;
  const double cos2 = sq(std::cos(beta0));
  const double q = s / u;
  const double lead = sq(2.0 * s - 1.0);

  const double t1 = lead / (1.0 + sq(u) / s * tan2 + sq(s) / u * cot2);
  const double t2 = lead / (1.0 + u * u * u / sq(s) * tan2 + s * s * s / sq(u) * cot2);
  const double t3 = lead * cos2 / (u + s * cot2);
  const double t4 = s * sq(1.0 - q) * cos2 / (1.0 + q * q * q * cot2);
  const double t5 = u * sq(1.0 - sq(s) / sq(u)) * cos2 / (1.0 + q * q * q * cot2);
  return 2.0 * std::abs(t1 + t2 + t3 - t4 - t5 - 1.0);
}

double hardy_probability_closed_form(double c1_squared, double beta0) {
  require_closed_form_domain(c1_squared, beta0);
  const double s = c1_squared;
  const double q = s / (1.0 - s);
  const double cot2 = 1.0 / sq(std::tan(beta0));
  return s * sq(1.0 - q) * sq(std::cos(beta0)) / (1.0 + q * q * q * cot2);
}

SurfacePoint surface_point(double c1_squared, double beta0) {
  SurfacePoint pt{.c1_squared = c1_squared, .beta0 = beta0};
  const auto state = make_state(c1_squared);
  if (entanglement_class(state) != EntanglementClass::Partial ||
      std::abs(std::sin(2.0 * beta0)) < kDegenerateSin2Beta0) {
    pt.degenerate = true;
    return pt;
  }
  const auto config = solve_hardy(state, beta0).config();
  pt.p_hardy = joint_distribution(config, Setting::Two, Setting::Two).p_pp();
  pt.delta = delta_closed_form(c1_squared, beta0);
  return pt;
}

ScanGrid::ScanGrid(std::size_t c1_sq_steps, std::size_t beta0_steps)
    : c1_sq_steps_(c1_sq_steps), beta0_steps_(beta0_steps), cells_(c1_sq_steps * beta0_steps) {
  if (c1_sq_steps < 2 || beta0_steps < 2) {
    throw PreconditionViolation("scan needs at least 2 steps per axis");
  }
}

double ScanGrid::c1_squared_at(std::size_t i) const {
  return static_cast<double>(i) / static_cast<double>(c1_sq_steps_ - 1);
}

double ScanGrid::beta0_deg_at(std::size_t j) const {
  return 90.0 * static_cast<double>(j) / static_cast<double>(beta0_steps_ - 1);
}

double ScanGrid::max_identity_residual() const {
  double worst = 0.0;
  for (const auto& c : cells_) worst = std::max(worst, std::abs(c.delta - 2.0 - 4.0 * c.p_hardy));
  return worst;
}

double ScanGrid::max_symmetry_residual() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < c1_sq_steps_; ++i) {
    for (std::size_t j = 0; j < beta0_steps_; ++j) {
      const auto& mirror = at(c1_sq_steps_ - 1 - i, beta0_steps_ - 1 - j);
      worst = std::max(worst, std::abs(at(i, j).delta - mirror.delta));
    }
  }
  return worst;
}

const SurfacePoint& ScanGrid::max_cell() const {
  return *std::max_element(cells_.begin(), cells_.end(),
                           [](const auto& a, const auto& b) { return a.delta < b.delta; });
}

ScanGrid scan_surface(std::size_t c1_sq_steps, std::size_t beta0_steps) {
  ScanGrid grid(c1_sq_steps, beta0_steps);
  parallel_for(c1_sq_steps, [&](std::size_t i) {
    const double c = grid.c1_squared_at(i);
    for (std::size_t j = 0; j < beta0_steps; ++j) {
      grid.at(i, j) = surface_point(c, deg_to_rad(grid.beta0_deg_at(j)));
    }
  });
  return grid;
}

Optimum optimize_delta() {
  constexpr std::size_t kCoarseC = 201;
  constexpr std::size_t kCoarseB = 181;
  constexpr double kHalfTurn = std::numbers::pi / 2;

  auto objective = [](double c, double b) {
    if (!(c > 0.0 && c < 1.0) || std::abs(std::sin(2.0 * b)) < kDegenerateSin2Beta0) return 2.0;
    return delta_closed_form(c, b);
  };

  std::vector<double> coarse(kCoarseC * kCoarseB);
  parallel_for(kCoarseC, [&](std::size_t i) {
    const double c = static_cast<double>(i) / (kCoarseC - 1);
    for (std::size_t j = 0; j < kCoarseB; ++j) {
      coarse[i * kCoarseB + j] = objective(c, kHalfTurn * static_cast<double>(j) / (kCoarseB - 1));
    }
  });
  const auto best = static_cast<std::size_t>(
      std::distance(coarse.begin(), std::max_element(coarse.begin(), coarse.end())));

  double c = static_cast<double>(best / kCoarseB) / (kCoarseC - 1);
  double b = kHalfTurn * static_cast<double>(best % kCoarseB) / (kCoarseB - 1);
  double value = coarse[best];
  double step_c = 1.0 / (kCoarseC - 1);
  double step_b = kHalfTurn / (kCoarseB - 1);

  while (step_c >= 1e-10 || step_b >= 1e-10) {
    bool moved = false;
    for (double dir : {1.0, -1.0}) {
      if (const double v = objective(c + dir * step_c, b); v > value) {
        c += dir * step_c;
        value = v;
        moved = true;
      }
      if (const double v = objective(c, b + dir * step_b); v > value) {
        b += dir * step_b;
        value = v;
        moved = true;
      }
    }
    if (!moved) {
      step_c *= 0.5;
      step_b *= 0.5;
    }
  }

  Optimum opt{.c1_squared = c, .beta0 = b, .delta_max = value};
  opt.p_hardy = surface_point(c, b).p_hardy;
  return opt;
}

double delta_free_beta(const std::array<double, 4>& d) {
  return std::abs(std::cos(2.0 * d[0]) + std::cos(2.0 * d[1]) + std::cos(2.0 * d[2]) -
                  std::cos(2.0 * d[3]));
}

double delta_free_phase(const std::array<double, 4>& d) {
  return std::abs(std::cos(d[0]) + std::cos(d[1]) + std::cos(d[2]) - std::cos(d[3]));
}

std::array<double, 4> phase_family_betas() {
  constexpr double q = std::numbers::pi / 4;
  return {q, -3.0 * q, 3.0 * q, -q};
}

}  // namespace hardylab
