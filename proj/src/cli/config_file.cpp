#include <array>
#include <map>
#include <optional>

#include "hardylab/cli.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/keyvalue.hpp"

namespace hardylab::cli {
namespace {

constexpr std::array<const char*, 4> kPairLabels{"11", "12", "21", "22"};

Sign parse_sign(const KeyValue& kv) {
  if (kv.value == "+1" || kv.value == "1" || kv.value == "+") return Sign::Plus;
  if (kv.value == "-1" || kv.value == "-") return Sign::Minus;
  throw DomainError("line " + std::to_string(kv.line) + ": '" + kv.key + "' must be +1 or -1");
}

std::optional<unsigned> weight_index(const std::string& key) {
  if (key.size() != 6 || key.rfind("w_", 0) != 0) return std::nullopt;
  unsigned index = 0;
  for (std::size_t i = 2; i < 6; ++i) {
    if (key[i] != 'p' && key[i] != 'm') return std::nullopt;
    index = index << 1 | (key[i] == 'm' ? 1u : 0u);
  }
  return index;
}

}  // namespace

ExperimentConfig load_experiment_config(std::istream& in, const std::string& source) {
  std::optional<double> c1_squared;
  Sign sign_c1 = Sign::Plus, sign_c2 = Sign::Plus;
  std::array<std::optional<double>, 4> beta_deg;
  std::array<double, 4> delta_deg{};

  for (const auto& kv : parse_key_values(in, source)) {
    if (kv.key == "c1_squared") {
      c1_squared = parse_double(kv);
      continue;
    }
    if (kv.key == "sign_c1") {
      sign_c1 = parse_sign(kv);
      continue;
    }
    if (kv.key == "sign_c2") {
      sign_c2 = parse_sign(kv);
      continue;
    }
    bool known = false;
    for (std::size_t i = 0; i < 4; ++i) {
      if (kv.key == std::string("beta_") + kPairLabels[i] + "_deg") {
        beta_deg[i] = parse_double(kv);
        known = true;
      } else if (kv.key == std::string("delta_") + kPairLabels[i] + "_deg") {
        delta_deg[i] = parse_double(kv);
        known = true;
      }
    }
    if (!known) {
      throw DomainError(source + ":" + std::to_string(kv.line) + ": unknown key '" + kv.key + "'");
    }
  }

  if (!c1_squared) throw DomainError(source + ": missing c1_squared");
  for (std::size_t i = 0; i < 4; ++i) {
    if (!beta_deg[i]) {
      throw DomainError(source + ": missing beta_" + kPairLabels[i] + "_deg");
    }
  }
  auto setting = [&](std::size_t i) {
    return MeasurementSetting{deg_to_rad(*beta_deg[i]), deg_to_rad(delta_deg[i])};
  };
  ExperimentConfig config{make_state(*c1_squared, sign_c1, sign_c2),
                          {setting(0), setting(1)},
                          {setting(2), setting(3)}};
  validate(config);
  return config;
}

LhvStrategy load_strategy(std::istream& in, const std::string& source) {
  const auto entries = parse_key_values(in, source);
  std::string model;
  for (const auto& kv : entries) {
    if (kv.key == "model") model = kv.value;
  }

  if (model == "mixture") {
    std::array<double, 16> weights{};
    for (const auto& kv : entries) {
      if (kv.key == "model") continue;
      const auto index = weight_index(kv.key);
      if (!index) {
        throw DomainError(source + ":" + std::to_string(kv.line) + ": unknown key '" + kv.key + "'");
      }
      weights[*index] = parse_double(kv);
    }
    return Mixture(weights);
  }

  if (model == "stochastic") {
    std::vector<double> breakpoints, density;
    std::array<std::vector<double>, 4> p_plus;
    std::array<bool, 4> have{};
    for (const auto& kv : entries) {
      if (kv.key == "model") continue;
      if (kv.key == "breakpoints") {
        breakpoints = parse_double_list(kv);
        continue;
      }
      if (kv.key == "density") {
        density = parse_double_list(kv);
        continue;
      }
      bool known = false;
      for (std::size_t i = 0; i < 4; ++i) {
        if (kv.key == std::string("p_plus_") + kPairLabels[i]) {
          p_plus[i] = parse_double_list(kv);
          have[i] = known = true;
        }
      }
      if (!known) {
        throw DomainError(source + ":" + std::to_string(kv.line) + ": unknown key '" + kv.key + "'");
      }
    }
    for (std::size_t i = 0; i < 4; ++i) {
      if (!have[i]) throw DomainError(source + ": missing p_plus_" + kPairLabels[i]);
    }
    return StochasticModel(std::move(breakpoints), std::move(density), std::move(p_plus));
  }

  throw DomainError(source + ": 'model' must be 'mixture' or 'stochastic'");
}

}  // namespace hardylab::cli
