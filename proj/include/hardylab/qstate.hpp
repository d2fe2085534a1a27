#pragma once

#include <array>
#include <numbers>

namespace hardylab {

inline constexpr double kNormalizationTol = 1e-12;
inline constexpr double kDefaultClassTol = 1e-9;

constexpr double deg_to_rad(double deg) { return deg * (std::numbers::pi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / std::numbers::pi); }

enum class Sign : int { Plus = 1, Minus = -1 };

constexpr double sign_value(Sign s) { return s == Sign::Plus ? 1.0 : -1.0; }

/// Schmidt-form pure state c1|u1>|u2> + c2|v1>|v2> with real coefficients.
///
/// Construct through make_state(); the constructor checks normalization.
class SchmidtState {
public:
  SchmidtState(double c1, double c2);

  double c1() const { return c1_; }
  double c2() const { return c2_; }
  double c1_squared() const { return c1_ * c1_; }

  bool operator==(const SchmidtState&) const = default;

private:
  double c1_;
  double c2_;
};

/// Builds c1 = sign_c1 * sqrt(c1_squared), c2 = sign_c2 * sqrt(1 - c1_squared).
/// Throws DomainError when c1_squared is outside [0, 1] by more than 1e-12.
SchmidtState make_state(double c1_squared, Sign sign_c1 = Sign::Plus, Sign sign_c2 = Sign::Plus);

enum class EntanglementClass { Product, Maximal, Partial };

EntanglementClass entanglement_class(const SchmidtState& state, double tol = kDefaultClassTol);

const char* to_string(EntanglementClass c);

/// One dichotomic observable. Its +1 eigenvector is
/// e^{i alpha} cos(beta)|u> + e^{i gamma} sin(beta)|v>; only the relative phase
/// enters any probability, so it is stored as `delta` (gamma - alpha on
/// particle 1, alpha - gamma on particle 2). Both angles in radians.
struct MeasurementSetting {
  double beta = 0.0;
  double delta = 0.0;

  bool operator==(const MeasurementSetting&) const = default;
};

/// Setting index on one side of the experiment (the j of D_ij).
enum class Setting : int { One = 1, Two = 2 };

/// The state plus the two observables available to each particle.
struct ExperimentConfig {
  SchmidtState state;
  std::array<MeasurementSetting, 2> particle1;  // D11, D12
  std::array<MeasurementSetting, 2> particle2;  // D21, D22

  const MeasurementSetting& d1(Setting k) const { return particle1[static_cast<int>(k) - 1]; }
  const MeasurementSetting& d2(Setting l) const { return particle2[static_cast<int>(l) - 1]; }
  MeasurementSetting& d1(Setting k) { return particle1[static_cast<int>(k) - 1]; }
  MeasurementSetting& d2(Setting l) { return particle2[static_cast<int>(l) - 1]; }
};

/// Throws PreconditionViolation if any angle is non-finite.
void validate(const ExperimentConfig& config);

}  // namespace hardylab
