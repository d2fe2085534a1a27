#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hardylab/chsh.hpp"
#include "hardylab/hardy.hpp"
#include "hardylab/lhv.hpp"
#include "hardylab/qstate.hpp"

namespace hardylab::cli {

inline constexpr const char* kToolName = "hardy_lab";
inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kDomainFailure = 1, kUsage = 2 };

/// Dispatches one subcommand. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Fixed-width rendering used for every number the tool prints: 12 significant digits.
std::string format_number(double x);

/// Parameters and provenance written at the top of every output file.
struct RunManifest {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> parameters;  // post unit conversion
  std::optional<std::uint64_t> seed;
  std::vector<std::string> outputs;

  /// One "<prefix>key = value" line per entry, in a fixed order.
  std::string render(const std::string& prefix = "# ") const;
};

/// Experiment description in key = value form. Keys: c1_squared (required),
/// sign_c1, sign_c2 (default +1), beta_KL_deg (required) and delta_KL_deg
/// (default 0) for KL in {11, 12, 21, 22}. Angles are degrees. Unknown keys
/// throw DomainError.
ExperimentConfig load_experiment_config(std::istream& in, const std::string& source);

/// Strategy description. `model = mixture` takes weights w_XXXX where each X
/// is p or m for the outcomes of D11, D12, D21, D22 (missing weights are 0).
/// `model = stochastic` takes breakpoints, optional density, and p_plus_11,
/// p_plus_12, p_plus_21, p_plus_22 lists with one entry per segment.
LhvStrategy load_strategy(std::istream& in, const std::string& source);

void write_scan_csv(std::ostream& out, const ScanGrid& grid, const RunManifest& manifest);

/// Static heatmap of delta over the scan grid, as standalone SVG text.
std::string render_svg(const ScanGrid& grid, const RunManifest& manifest);

/// A measured probability with its quoted one-sigma uncertainty, both in
/// units of 1e-4 so that fixture arithmetic is exact.
struct MeasuredProbability {
  std::int64_t value_e4 = 0;
  std::int64_t uncertainty_e4 = 0;
};

struct FixtureReport {
  HardyInequality inequality;
  std::int64_t margin_e4 = 0;
  double margin = 0.0;
  double margin_uncertainty = 0.0;  // quadrature sum of the four uncertainties
};

/// Hardy inequality margin p_d - (p_a + p_b + p_c) for measured probabilities.
FixtureReport evaluate_fixture(const MeasuredProbability& p_a, const MeasuredProbability& p_b,
                               const MeasuredProbability& p_c, const MeasuredProbability& p_d);

/// Coincidence-experiment probabilities quoted for the first photonic Hardy
/// test: 0.0070(5), 0.0034(4), 0.0040(4) for the vanishing conditions and
/// 0.099(2) for the Hardy probability.
FixtureReport hardy_experiment_fixture();

struct VerifyCheck {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Normalization over random draws, the delta = 2 + 4P identity on a 51x51
/// grid, and the vanishing-condition round trip.
std::vector<VerifyCheck> run_verify_suite(std::uint64_t seed);

}  // namespace hardylab::cli
