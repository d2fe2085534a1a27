#include "hardylab/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hardylab/errors.hpp"

namespace hardylab {

SchmidtState::SchmidtState(double c1, double c2) : c1_(c1), c2_(c2) {
  if (!std::isfinite(c1) || !std::isfinite(c2)) {
    throw DomainError("Schmidt coefficients must be finite");
  }
  if (std::abs(c1 * c1 + c2 * c2 - 1.0) > kNormalizationTol) {
    throw DomainError("Schmidt coefficients must satisfy c1^2 + c2^2 = 1");
  }
}

SchmidtState make_state(double c1_squared, Sign sign_c1, Sign sign_c2) {
  if (!(c1_squared >= -kNormalizationTol && c1_squared <= 1.0 + kNormalizationTol)) {
    throw DomainError("c1^2 must lie in [0, 1], got " + std::to_string(c1_squared));
  }
  const double p = std::clamp(c1_squared, 0.0, 1.0);
  return SchmidtState(sign_value(sign_c1) * std::sqrt(p), sign_value(sign_c2) * std::sqrt(1.0 - p));
}

EntanglementClass entanglement_class(const SchmidtState& state, double tol) {
  if (std::abs(state.c1() * state.c2()) <= tol) return EntanglementClass::Product;
  if (std::abs(std::abs(state.c1()) - std::abs(state.c2())) <= tol) return EntanglementClass::Maximal;
  return EntanglementClass::Partial;
}

const char* to_string(EntanglementClass c) {
  switch (c) {
    case EntanglementClass::Product: return "product";
    case EntanglementClass::Maximal: return "maximal";
    case EntanglementClass::Partial: return "partial";
  }
  return "?";
}

void validate(const ExperimentConfig& config) {
  for (const auto* side : {&config.particle1, &config.particle2}) {
    for (const auto& s : *side) {
      if (!std::isfinite(s.beta) || !std::isfinite(s.delta)) {
        throw PreconditionViolation("measurement angles must be finite");
      }
    }
  }
}

}  // namespace hardylab
