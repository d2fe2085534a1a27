#include "hardylab/lhv.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "hardylab/chsh.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/parallel.hpp"

namespace hardylab {
namespace {

constexpr double kWeightTol = 1e-12;
constexpr double kDensityTol = 1e-9;

int value(Outcome o) { return static_cast<int>(o); }

Outcome bit_outcome(unsigned index, unsigned bit) {
  return (index >> bit) & 1u ? Outcome::Minus : Outcome::Plus;
}

std::size_t cell_index(Outcome m, Outcome n) {
  if (m == Outcome::Plus) return n == Outcome::Plus ? 0 : 2;
  return n == Outcome::Plus ? 3 : 1;
}

std::size_t observable_index(int particle, Setting s) {
  return static_cast<std::size_t>((particle - 1) * 2 + static_cast<int>(s) - 1);
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t pair, std::uint64_t chunk) {
  std::uint64_t s = seed;
  s = splitmix64(s) ^ pair;
  s = splitmix64(s) ^ chunk;
  return splitmix64(s);
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Hidden-state masses plus the +1 response probability of every observable in
// every hidden state, flattened so simulation and exact evaluation share one view.
struct HiddenTable {
  std::vector<double> mass;
  std::vector<std::array<double, 4>> p_plus;  // D11, D12, D21, D22
};

HiddenTable tabulate(const LhvStrategy& strategy) {
  HiddenTable table;
  if (const auto* mix = std::get_if<Mixture>(&strategy)) {
    for (unsigned i = 0; i < 16; ++i) {
      const auto a = DeterministicAssignment::from_index(i);
      table.mass.push_back(mix->weights()[i]);
      table.p_plus.push_back({a.a1 == Outcome::Plus ? 1.0 : 0.0, a.a2 == Outcome::Plus ? 1.0 : 0.0,
                              a.b1 == Outcome::Plus ? 1.0 : 0.0, a.b2 == Outcome::Plus ? 1.0 : 0.0});
    }
  } else {
    const auto& model = std::get<StochasticModel>(strategy);
    for (std::size_t s = 0; s < model.segment_count(); ++s) {
      table.mass.push_back(model.segment_mass(s));
      table.p_plus.push_back({model.p_plus(1, Setting::One, s), model.p_plus(1, Setting::Two, s),
                              model.p_plus(2, Setting::One, s), model.p_plus(2, Setting::Two, s)});
    }
  }
  return table;
}

double response(const std::array<double, 4>& p_plus, std::size_t observable, Outcome o) {
  return o == Outcome::Plus ? p_plus[observable] : 1.0 - p_plus[observable];
}

}  // namespace

DeterministicAssignment DeterministicAssignment::from_index(unsigned index) {
  if (index >= 16) throw PreconditionViolation("assignment index must be below 16");
  return {bit_outcome(index, 3), bit_outcome(index, 2), bit_outcome(index, 1), bit_outcome(index, 0)};
}

unsigned DeterministicAssignment::index() const {
  auto bit = [](Outcome o) { return o == Outcome::Minus ? 1u : 0u; };
  return bit(a1) << 3 | bit(a2) << 2 | bit(b1) << 1 | bit(b2);
}

int DeterministicAssignment::chsh_combination() const {
  return value(a1) * value(b1) + value(a1) * value(b2) + value(a2) * value(b1) -
         value(a2) * value(b2);
}

CorrelationSet DeterministicAssignment::correlations() const {
  return {static_cast<double>(value(a1) * value(b1)), static_cast<double>(value(a1) * value(b2)),
          static_cast<double>(value(a2) * value(b1)), static_cast<double>(value(a2) * value(b2))};
}

std::array<DeterministicAssignment, 16> all_assignments() {
  std::array<DeterministicAssignment, 16> out;
  for (unsigned i = 0; i < 16; ++i) out[i] = DeterministicAssignment::from_index(i);
  return out;
}

Mixture::Mixture(const std::array<double, 16>& weights) : weights_(weights) {
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("mixture weights must be non-negative");
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(total - 1.0) > kWeightTol) {
    throw DomainError("mixture weights must sum to 1, got " + std::to_string(total));
  }
}

Mixture Mixture::pure(const DeterministicAssignment& a) {
  std::array<double, 16> w{};
  w[a.index()] = 1.0;
  return Mixture(w);
}

StochasticModel::StochasticModel(std::vector<double> breakpoints, std::vector<double> density,
                                 std::array<std::vector<double>, 4> p_plus)
    : breakpoints_(std::move(breakpoints)), p_plus_(std::move(p_plus)) {
  if (breakpoints_.size() < 2 || breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
    throw DomainError("breakpoints must start at 0 and end at 1");
  }
  const std::size_t n = breakpoints_.size() - 1;
  for (std::size_t s = 0; s < n; ++s) {
    if (!(breakpoints_[s + 1] > breakpoints_[s])) {
      throw DomainError("breakpoints must be strictly increasing");
    }
  }
  if (density.empty()) density.assign(n, 1.0);
  if (density.size() != n) throw DomainError("need one density value per segment");

  double total = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    if (!(density[s] >= 0.0) || !std::isfinite(density[s])) {
      throw DomainError("density must be non-negative");
    }
    masses_.push_back(density[s] * (breakpoints_[s + 1] - breakpoints_[s]));
    total += masses_.back();
  }
  if (std::abs(total - 1.0) > kDensityTol) {
    throw DomainError("density must integrate to 1, got " + std::to_string(total));
  }
  for (auto& m : masses_) m /= total;

  for (const auto& table : p_plus_) {
    if (table.size() != n) throw DomainError("need one response probability per segment");
    for (double p : table) {
      if (!(p >= 0.0 && p <= 1.0)) throw DomainError("response probabilities must lie in [0, 1]");
    }
  }
}

double StochasticModel::p_plus(int particle, Setting setting, std::size_t segment) const {
  return p_plus_[observable_index(particle, setting)][segment];
}

double lhv_joint_probability(const LhvStrategy& strategy, SettingPair pair, Outcome m, Outcome n) {
  const auto table = tabulate(strategy);
  const std::size_t o1 = observable_index(1, pair.k);
  const std::size_t o2 = observable_index(2, pair.l);
  double p = 0.0;
  for (std::size_t h = 0; h < table.mass.size(); ++h) {
    p += table.mass[h] * response(table.p_plus[h], o1, m) * response(table.p_plus[h], o2, n);
  }
  return p;
}

JointDistribution lhv_joint_distribution(const LhvStrategy& strategy, SettingPair pair) {
  auto p = [&](Outcome m, Outcome n) { return lhv_joint_probability(strategy, pair, m, n); };
  return JointDistribution(p(Outcome::Plus, Outcome::Plus), p(Outcome::Minus, Outcome::Minus),
                           p(Outcome::Plus, Outcome::Minus), p(Outcome::Minus, Outcome::Plus));
}

CorrelationSet lhv_correlations(const LhvStrategy& strategy) {
  std::array<double, 4> e{};
  for (std::size_t i = 0; i < 4; ++i) {
    e[i] = lhv_joint_distribution(strategy, kSettingPairs[i]).correlation();
  }
  return {e[0], e[1], e[2], e[3]};
}

double TrialTally::frequency(std::size_t pair, Outcome m, Outcome n) const {
  return static_cast<double>(counts.at(pair)[cell_index(m, n)]) /
         static_cast<double>(trials_per_pair);
}

double TrialTally::estimated_correlation(std::size_t pair) const {
  const auto& c = counts.at(pair);
  const double agree = static_cast<double>(c[0] + c[1]);
  const double disagree = static_cast<double>(c[2] + c[3]);
  return (agree - disagree) / static_cast<double>(trials_per_pair);
}

double TrialTally::correlation_standard_error(std::size_t pair) const {
  const double e = estimated_correlation(pair);
  return std::sqrt(std::max(0.0, 1.0 - e * e) / static_cast<double>(trials_per_pair));
}

CorrelationSet TrialTally::estimated_correlations() const {
  return {estimated_correlation(0), estimated_correlation(1), estimated_correlation(2),
          estimated_correlation(3)};
}

double TrialTally::estimated_delta() const { return delta_from_correlations(estimated_correlations()); }

double TrialTally::delta_standard_error() const {
  double var = 0.0;
  for (std::size_t p = 0; p < 4; ++p) var += std::pow(correlation_standard_error(p), 2);
  return std::sqrt(var);
}

TrialTally simulate(const LhvStrategy& strategy, std::uint64_t trials_per_pair, std::uint64_t seed) {
  if (trials_per_pair < 1) throw PreconditionViolation("need at least one trial per pair");
  const auto table = tabulate(strategy);
  std::vector<double> cumulative(table.mass.size());
  std::partial_sum(table.mass.begin(), table.mass.end(), cumulative.begin());

  const std::uint64_t chunks = (trials_per_pair + kSimulationChunk - 1) / kSimulationChunk;
  std::vector<std::array<std::uint64_t, 4>> partial(4 * chunks);

  parallel_for(partial.size(), [&](std::size_t task) {
    const std::size_t pair = task / chunks;
    const std::uint64_t chunk = task % chunks;
    const std::uint64_t begin = chunk * kSimulationChunk;
    const std::uint64_t end = std::min(trials_per_pair, begin + kSimulationChunk);
    const std::size_t o1 = observable_index(1, kSettingPairs[pair].k);
    const std::size_t o2 = observable_index(2, kSettingPairs[pair].l);

    std::mt19937_64 rng(substream_seed(seed, pair, chunk));
    auto& local = partial[task];
    for (std::uint64_t t = begin; t < end; ++t) {
      // One hidden state per trial; each side answers from its own setting alone.
      const double u = uniform01(rng) * cumulative.back();
      std::size_t h = static_cast<std::size_t>(
          std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
      h = std::min(h, cumulative.size() - 1);
      const Outcome m = uniform01(rng) < table.p_plus[h][o1] ? Outcome::Plus : Outcome::Minus;
      const Outcome n = uniform01(rng) < table.p_plus[h][o2] ? Outcome::Plus : Outcome::Minus;
      ++local[cell_index(m, n)];
    }
  });

  TrialTally tally;
  tally.trials_per_pair = trials_per_pair;
  for (std::size_t task = 0; task < partial.size(); ++task) {
    for (std::size_t cell = 0; cell < 4; ++cell) tally.counts[task / chunks][cell] += partial[task][cell];
  }
  return tally;
}

int local_realism_forcing(int e11, int e12, int e21) {
  if ((e11 != 1 && e11 != -1) || e12 != e11 || e21 != e11) {
    throw PreconditionViolation("local realism forcing needs three equal perfect correlations");
  }
  // a1 b1 = a1 b2 = a2 b1 = s  =>  a2 b2 = (a2 b1)(a1 b2)(a1 b1) = s^3 = s
  return e21 * e12 * e11;
}

bool mixture_feasible(const RationalCorrelations& target) {
  if (target.denominator <= 0) throw PreconditionViolation("denominator must be positive");
  const auto vertices = all_assignments();

  auto bound = [&](const std::array<int, 4>& normal) {
    int best = -4;
    for (const auto& v : vertices) {
      const auto c = v.correlations();
      const int dot = normal[0] * static_cast<int>(c.e11) + normal[1] * static_cast<int>(c.e12) +
                      normal[2] * static_cast<int>(c.e21) + normal[3] * static_cast<int>(c.e22);
      best = std::max(best, dot);
    }
    return best;
  };
  auto satisfies = [&](const std::array<int, 4>& normal) {
    std::int64_t lhs = 0;
    for (std::size_t i = 0; i < 4; ++i) lhs += normal[i] * target.numerators[i];
    return lhs <= static_cast<std::int64_t>(bound(normal)) * target.denominator;
  };

  for (unsigned mask = 0; mask < 16; ++mask) {
    std::array<int, 4> normal{};
    for (unsigned i = 0; i < 4; ++i) normal[i] = (mask >> i) & 1u ? -1 : 1;
    if (!satisfies(normal)) return false;
  }
  for (std::size_t i = 0; i < 4; ++i) {
    for (int s : {1, -1}) {
      std::array<int, 4> normal{};
      normal[i] = s;
      if (!satisfies(normal)) return false;
    }
  }
  return true;
}

Mixture fit_mixture(const CorrelationSet& target, int iterations) {
  const auto vertices = all_assignments();
  std::array<std::array<double, 4>, 16> v{};
  for (std::size_t i = 0; i < 16; ++i) {
    const auto c = vertices[i].correlations();
    v[i] = {c.e11, c.e12, c.e21, c.e22};
  }
  const std::array<double, 4> t{target.e11, target.e12, target.e21, target.e22};

  std::array<double, 16> w;
  w.fill(1.0 / 16.0);
  for (int it = 0; it < iterations; ++it) {
    std::array<double, 4> mean{};
    for (std::size_t i = 0; i < 16; ++i)
      for (std::size_t d = 0; d < 4; ++d) mean[d] += w[i] * v[i][d];
    std::array<double, 4> r{};
    for (std::size_t d = 0; d < 4; ++d) r[d] = mean[d] - t[d];

    std::size_t best = 0;
    double best_grad = INFINITY;
    for (std::size_t i = 0; i < 16; ++i) {
      double g = 0.0;
      for (std::size_t d = 0; d < 4; ++d) g += v[i][d] * r[d];
      if (g < best_grad) best_grad = g, best = i;
    }
    double num = 0.0, den = 0.0;
    for (std::size_t d = 0; d < 4; ++d) {
      const double dir = v[best][d] - mean[d];
      num -= r[d] * dir;
      den += dir * dir;
    }
    if (den == 0.0) break;
    const double gamma = std::clamp(num / den, 0.0, 1.0);
    if (gamma == 0.0) break;
    for (auto& wi : w) wi *= 1.0 - gamma;
    w[best] += gamma;
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& wi : w) wi /= total;
  return Mixture(w);
}

}  // namespace hardylab
