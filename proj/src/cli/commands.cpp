#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "hardylab/cli.hpp"
#include "hardylab/errors.hpp"

namespace hardylab::cli {
namespace {

// Reference optimum and its mirror image under c1^2 -> 1 - c1^2, beta0 -> 90deg - beta0.
constexpr double kOptimumC1Sq = 0.177352;
constexpr double kOptimumBeta0Deg = 17.5566;
constexpr double kOptimumDeltaTol = 1e-9;
constexpr double kOptimumLocationTol = 1e-4;

struct Options {
  std::string config;
  std::string variant = "canonical";
  std::string strategy;
  std::string out;
  std::string svg;
  double c1_squared = 0.0;
  double beta0_deg = 0.0;
  double tol = kZeroTol;
  std::size_t c1sq_steps = 101;
  std::size_t beta0_steps = 91;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
};

constexpr std::array<const char*, 4> kPairNames{"11_21", "11_22", "12_21", "12_22"};

ExperimentConfig read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file '" + path + "'");
  return load_experiment_config(in, path);
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot write '" + path + "'");
  f << contents;
  if (!f) throw DomainError("failed writing '" + path + "'");
}

void print_kv(std::ostream& out, const std::string& key, double value) {
  out << key << '=' << format_number(value) << '\n';
}

std::string column(double v) {
  std::ostringstream os;
  os << std::left << std::setw(20) << format_number(v);
  return os.str();
}

int cmd_probs(const Options& o, std::ostream& out) {
  const auto config = read_config(o.config);
  out << "pair      P(+,+)              P(-,-)              P(+,-)              P(-,+)\n";
  for (std::size_t i = 0; i < 4; ++i) {
    const auto jd = joint_distribution(config, kSettingPairs[i].k, kSettingPairs[i].l);
    out << "D" << kPairNames[i][0] << kPairNames[i][1] << ",D" << kPairNames[i][3] << kPairNames[i][4]
        << "   " << column(jd.p_pp()) << column(jd.p_mm()) << column(jd.p_pm()) << column(jd.p_mp())
        << '\n';
  }
  for (std::size_t i = 0; i < 4; ++i) {
    const auto jd = joint_distribution(config, kSettingPairs[i].k, kSettingPairs[i].l);
    const std::string p = std::string("p_") + kPairNames[i];
    print_kv(out, p + ".pp", jd.p_pp());
    print_kv(out, p + ".mm", jd.p_mm());
    print_kv(out, p + ".pm", jd.p_pm());
    print_kv(out, p + ".mp", jd.p_mp());
  }
  return kOk;
}

int cmd_correlation(const Options& o, std::ostream& out) {
  const auto config = read_config(o.config);
  const auto chsh = evaluate_chsh(config);
  const std::array<double, 4> e{chsh.correlations.e11, chsh.correlations.e12, chsh.correlations.e21,
                                chsh.correlations.e22};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto pc = is_perfectly_correlated(config.state, config.d1(kSettingPairs[i].k),
                                            config.d2(kSettingPairs[i].l), o.tol);
    print_kv(out, std::string("E_") + kPairNames[i], e[i]);
    out << "perfect_" << kPairNames[i] << '=' << to_string(pc) << '\n';
  }
  print_kv(out, "delta", chsh.delta);
  print_kv(out, "delta_from_probabilities", delta_from_probabilities(config));
  out << "chsh_violated=" << (chsh.violated ? 1 : 0) << '\n';
  out << "entanglement=" << to_string(entanglement_class(config.state)) << '\n';
  return kOk;
}

void print_check(std::ostream& out, const HardyCheck& check) {
  out << "condition            probability\n";
  out << "a (must vanish)      " << format_number(check.p_a) << '\n';
  out << "b (must vanish)      " << format_number(check.p_b) << '\n';
  out << "c (must vanish)      " << format_number(check.p_c) << '\n';
  out << "d (must be > 0)      " << format_number(check.p_d) << '\n';
  print_kv(out, "p_a", check.p_a);
  print_kv(out, "p_b", check.p_b);
  print_kv(out, "p_c", check.p_c);
  print_kv(out, "p_d", check.p_d);
  out << "satisfied=" << (check.satisfied ? 1 : 0) << '\n';
}

int cmd_hardy_solve(const Options& o, std::ostream& out) {
  const auto variant = parse_variant(o.variant);
  const auto sol = solve_hardy(make_state(o.c1_squared), deg_to_rad(o.beta0_deg), variant);
  const auto config = sol.config();
  const auto check = check_hardy(config, variant, o.tol);

  out << "setting   beta (deg)          delta (deg)\n";
  const std::array<std::pair<const char*, double>, 4> betas{
      {{"D11", sol.beta11}, {"D12", sol.beta12}, {"D21", sol.beta21}, {"D22", sol.beta22}}};
  for (std::size_t i = 0; i < 4; ++i) {
    out << betas[i].first << "       " << column(rad_to_deg(betas[i].second))
        << format_number(rad_to_deg(sol.deltas[i])) << '\n';
  }
  print_check(out, check);
  out << "variant=" << to_string(variant) << '\n';
  print_kv(out, "c1_squared", o.c1_squared);
  print_kv(out, "beta0_deg", o.beta0_deg);
  print_kv(out, "beta11_deg", rad_to_deg(sol.beta11));
  print_kv(out, "beta12_deg", rad_to_deg(sol.beta12));
  print_kv(out, "beta21_deg", rad_to_deg(sol.beta21));
  print_kv(out, "beta22_deg", rad_to_deg(sol.beta22));
  print_kv(out, "delta", evaluate_chsh(config).delta);
  return kOk;
}

int cmd_hardy_check(const Options& o, std::ostream& out) {
  const auto config = read_config(o.config);
  const auto variant = parse_variant(o.variant);
  print_check(out, check_hardy(config, variant, o.tol));
  out << "variant=" << to_string(variant) << '\n';
  return kOk;
}

int cmd_scan(const Options& o, std::ostream& out) {
  const auto grid = scan_surface(o.c1sq_steps, o.beta0_steps);
  RunManifest manifest{"scan",
                       {{"c1sq_steps", std::to_string(o.c1sq_steps)},
                        {"beta0_steps", std::to_string(o.beta0_steps)},
                        {"c1_squared_range", "0..1"},
                        {"beta0_range_rad", "0.." + format_number(std::numbers::pi / 2)}},
                       std::nullopt,
                       {o.out}};
  if (!o.svg.empty()) manifest.outputs.push_back(o.svg);

  std::ostringstream csv;
  write_scan_csv(csv, grid, manifest);
  write_file(o.out, csv.str());
  if (!o.svg.empty()) write_file(o.svg, render_svg(grid, manifest));

  const auto& best = grid.max_cell();
  print_kv(out, "cells", static_cast<double>(grid.cells().size()));
  print_kv(out, "max_delta", best.delta);
  print_kv(out, "max_delta_c1_squared", best.c1_squared);
  print_kv(out, "max_delta_beta0_deg", rad_to_deg(best.beta0));
  print_kv(out, "identity_residual", grid.max_identity_residual());
  print_kv(out, "symmetry_residual", grid.max_symmetry_residual());
  return kOk;
}

// Folds beta0 onto [0, 90] degrees using beta0 -> -beta0 and beta0 -> beta0 + 180.
double fold_beta0_deg(double deg) {
  double b = std::fmod(std::abs(deg), 180.0);
  return b > 90.0 ? 180.0 - b : b;
}

int cmd_optimize(const Options&, std::ostream& out) {
  const auto opt = optimize_delta();
  const double beta_deg = fold_beta0_deg(rad_to_deg(opt.beta0));
  const bool near_primary = std::abs(opt.c1_squared - kOptimumC1Sq) <= kOptimumLocationTol &&
                            std::abs(beta_deg - kOptimumBeta0Deg) <= kOptimumLocationTol;
  const bool near_mirror = std::abs(opt.c1_squared - (1.0 - kOptimumC1Sq)) <= kOptimumLocationTol &&
                           std::abs(beta_deg - (90.0 - kOptimumBeta0Deg)) <= kOptimumLocationTol;
  const bool delta_ok = std::abs(opt.delta_max - kMaxHardyDelta) <= kOptimumDeltaTol;

  print_kv(out, "c1_squared", opt.c1_squared);
  print_kv(out, "beta0_deg", rad_to_deg(opt.beta0));
  print_kv(out, "delta_max", opt.delta_max);
  print_kv(out, "p_hardy", opt.p_hardy);
  print_kv(out, "golden_delta", kMaxHardyDelta);
  print_kv(out, "fraction_of_quantum_maximum", (opt.delta_max - 2.0) / (kTsirelsonBound - 2.0));
  const bool ok = delta_ok && (near_primary || near_mirror);
  out << "within_tolerance=" << (ok ? 1 : 0) << '\n';
  return ok ? kOk : kDomainFailure;
}

int cmd_lhv_sim(const Options& o, std::ostream& out) {
  std::ifstream in(o.strategy);
  if (!in) throw DomainError("cannot open strategy file '" + o.strategy + "'");
  const auto strategy = load_strategy(in, o.strategy);
  const auto tally = simulate(strategy, o.trials, o.seed);
  const auto exact = lhv_correlations(strategy);
  const std::array<double, 4> e_exact{exact.e11, exact.e12, exact.e21, exact.e22};

  std::ostringstream report;
  report << "pair      n(+,+)      n(-,-)      n(+,-)      n(-,+)      E estimate          std err\n";
  for (std::size_t p = 0; p < 4; ++p) {
    report << kPairNames[p] << "     ";
    for (auto c : tally.counts[p]) report << std::left << std::setw(12) << c;
    report << column(tally.estimated_correlation(p)) << format_number(tally.correlation_standard_error(p))
           << '\n';
  }
  print_kv(report, "trials_per_pair", static_cast<double>(tally.trials_per_pair));
  for (std::size_t p = 0; p < 4; ++p) {
    const std::string suffix = kPairNames[p];
    const std::string cells[4] = {"pp", "mm", "pm", "mp"};
    for (std::size_t c = 0; c < 4; ++c) {
      report << "count_" << suffix << '.' << cells[c] << '=' << tally.counts[p][c] << '\n';
    }
    print_kv(report, "E_" + suffix, tally.estimated_correlation(p));
    print_kv(report, "E_" + suffix + ".stderr", tally.correlation_standard_error(p));
    print_kv(report, "E_" + suffix + ".model", e_exact[p]);
  }
  print_kv(report, "delta", tally.estimated_delta());
  print_kv(report, "delta.stderr", tally.delta_standard_error());
  print_kv(report, "delta.model", delta_from_correlations(exact));

  out << report.str();
  if (!o.out.empty()) {
    RunManifest manifest{"lhv-sim",
                         {{"strategy", o.strategy}, {"trials", std::to_string(o.trials)}},
                         o.seed,
                         {o.out}};
    write_file(o.out, manifest.render("# ") + report.str());
  }
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  bool all = true;
  for (const auto& check : run_verify_suite(o.seed)) {
    out << (check.passed ? "PASS " : "FAIL ") << check.name << " worst=" << format_number(check.worst)
        << " tol=" << format_number(check.tolerance) << '\n';
    all = all && check.passed;
  }
  out << "verify=" << (all ? "pass" : "fail") << '\n';
  return all ? kOk : kDomainFailure;
}

int cmd_inequality(const Options& o, std::ostream& out) {
  if (!o.config.empty()) {
    const auto ineq = hardy_inequality_lhs_rhs(read_config(o.config));
    print_kv(out, "lhs", ineq.lhs);
    print_kv(out, "rhs", ineq.rhs);
    print_kv(out, "margin", ineq.margin());
    out << "violated=" << (ineq.violated() ? 1 : 0) << '\n';
    return kOk;
  }
  const auto r = hardy_experiment_fixture();
  out << "source=photonic coincidence experiment (quoted probabilities)\n";
  print_kv(out, "lhs", r.inequality.lhs);
  print_kv(out, "rhs", r.inequality.rhs);
  print_kv(out, "margin", r.margin);
  print_kv(out, "margin.stderr", r.margin_uncertainty);
  out << "violated=" << (r.inequality.violated() ? 1 : 0) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hardy nonlocality and CHSH toolkit for two-qubit pure states", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

  Options o;
  auto add_config = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--config", o.config, "experiment file (key = value, degrees)")
                    ->check(CLI::ExistingFile);
    if (required) opt->required();
  };
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", o.tol, "zero / perfect-correlation tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  auto add_variant = [&](CLI::App* sub) {
    sub->add_option("--variant", o.variant, "outcome-sign convention")
        ->check(CLI::IsMember({"canonical", "all-flipped", "particle1-flipped", "particle2-flipped"}))
        ->capture_default_str();
  };

  auto* probs = app.add_subcommand("probs", "joint outcome probabilities for all four setting pairs");
  add_config(probs, true);

  auto* corr = app.add_subcommand("correlation", "correlations, perfect-correlation flags, CHSH value");
  add_config(corr, true);
  add_tol(corr);

  auto* solve = app.add_subcommand("hardy-solve", "close the Hardy chain for (c1^2, beta0)");
  solve->add_option("--c1-squared", o.c1_squared, "squared Schmidt coefficient")->required();
  solve->add_option("--beta0-deg", o.beta0_deg, "free angle beta12, degrees")->required();
  add_variant(solve);
  add_tol(solve);

  auto* hcheck = app.add_subcommand("hardy-check", "evaluate the Hardy conditions for a configuration");
  add_config(hcheck, true);
  add_variant(hcheck);
  add_tol(hcheck);

  auto* scan = app.add_subcommand("scan", "tabulate delta over (c1^2, beta0)");
  scan->add_option("--c1sq-steps", o.c1sq_steps, "grid points along c1^2")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}))
      ->capture_default_str();
  scan->add_option("--beta0-steps", o.beta0_steps, "grid points along beta0")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}))
      ->capture_default_str();
  scan->add_option("--out", o.out, "CSV output path")->required();
  scan->add_option("--svg", o.svg, "optional SVG heatmap path");

  auto* optimize = app.add_subcommand("optimize", "locate the maximum of delta on the Hardy chain");

  auto* lhv = app.add_subcommand("lhv-sim", "Monte Carlo run of a local hidden-variable strategy");
  lhv->add_option("--strategy", o.strategy, "strategy file (key = value)")
      ->required()
      ->check(CLI::ExistingFile);
  lhv->add_option("--trials", o.trials, "trials per setting pair")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  lhv->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  lhv->add_option("--out", o.out, "optional report file");

  auto* verify = app.add_subcommand("verify", "run the built-in invariant checks");
  verify->add_option("--seed", o.seed, "RNG seed")->capture_default_str();

  auto* ineq = app.add_subcommand("inequality", "Hardy inequality margin (config or measured fixture)");
  add_config(ineq, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolName << ' ' << kToolVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << kToolName << ": " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (probs->parsed()) return cmd_probs(o, out);
    if (corr->parsed()) return cmd_correlation(o, out);
    if (solve->parsed()) return cmd_hardy_solve(o, out);
    if (hcheck->parsed()) return cmd_hardy_check(o, out);
    if (scan->parsed()) return cmd_scan(o, out);
    if (optimize->parsed()) return cmd_optimize(o, out);
    if (lhv->parsed()) return cmd_lhv_sim(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (ineq->parsed()) return cmd_inequality(o, out);
  } catch (const std::domain_error& e) {
    err << kToolName << ": " << e.what() << '\n';
    return kDomainFailure;
  } catch (const std::invalid_argument& e) {
    err << kToolName << ": " << e.what() << '\n';
    return kDomainFailure;
  }
  return kUsage;
}

}  // namespace hardylab::cli
