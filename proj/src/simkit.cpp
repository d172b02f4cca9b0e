#include "nmqc/simkit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "nmqc/rng.hpp"

namespace nmqc::simkit {

namespace {

// Input tuples in lexicographic (x_1, x_2, ..., x_n) order, each paired
// with its cumulative probability.
struct InputSampler {
  std::vector<std::uint32_t> index;  // packed input per lexicographic rank
  std::vector<double> cumulative;

  explicit InputSampler(const protocol::InputDistribution& p) {
    const int n = p.arity();
    const std::uint32_t size = 1u << n;
    index.reserve(size);
    cumulative.reserve(size);
    double acc = 0.0;
    for (std::uint32_t ordinal = 0; ordinal < size; ++ordinal) {
      std::uint32_t packed = 0;  // ordinal bit n-k is x_k
      for (int k = 0; k < n; ++k) packed |= ((ordinal >> (n - 1 - k)) & 1u) << k;
      acc += to_double(p.weight(packed));
      index.push_back(packed);
      cumulative.push_back(acc);
    }
  }

  std::uint32_t draw(double u) const {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t rank =
        it == cumulative.end() ? cumulative.size() - 1 : static_cast<std::size_t>(it - cumulative.begin());
    return index[rank];
  }
};

struct OutcomeSampler {
  std::vector<double> cumulative;
  std::size_t fallback = 0;  // most likely outcome, for u beyond the accumulated total

  explicit OutcomeSampler(const std::vector<double>& probabilities) {
    cumulative.resize(probabilities.size());
    double acc = 0.0;
    double best = -1.0;
    for (std::size_t m = 0; m < probabilities.size(); ++m) {
      acc += probabilities[m];
      cumulative[m] = acc;
      if (probabilities[m] > best) {
        best = probabilities[m];
        fallback = m;
      }
    }
  }

  std::uint32_t draw(double u) const {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) return static_cast<std::uint32_t>(fallback);
    return static_cast<std::uint32_t>(it - cumulative.begin());
  }
};

std::vector<double> setting_distribution(const RunConfig& config, std::uint32_t s) {
  const auto angles = config.plan.angles_for(s);
  const int l = config.instance.parties();
  std::vector<double> probs =
      quantum::outcome_distribution(quantum::ghz_state(l), angles);
  if (config.noise.kind == quantum::NoiseSpec::Kind::white_noise) {
    // Born probabilities are linear in ρ, so the white-noise mixture is
    // a mixture of the GHZ distribution with the uniform one.
    const double v = config.noise.visibility;
    const double background = (1.0 - v) / static_cast<double>(probs.size());
    for (auto& p : probs) p = v * p + background;
  }
  return probs;
}

}  // namespace

RunReport run_protocol(const RunConfig& config) {
  const int l = config.instance.parties();
  if (config.plan.parties() != l)
    throw std::invalid_argument("plan party count does not match the instance");
  if (l > quantum::kMaxQubitsPure)
    throw std::invalid_argument("party count exceeds the state-vector cap");
  if (config.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (config.workers < 1) throw std::invalid_argument("workers must be at least 1");

  const InputSampler inputs(config.instance.distribution());
  std::map<std::uint32_t, OutcomeSampler> samplers;
  const auto sampler_for = [&](std::uint32_t s) -> const OutcomeSampler& {
    auto it = samplers.find(s);
    if (it == samplers.end())
      it = samplers.emplace(s, OutcomeSampler(setting_distribution(config, s))).first;
    return it->second;
  };

  RunReport report;
  report.trials = config.trials;
  report.workers = config.workers;

  const std::uint64_t base = config.trials / config.workers;
  const std::uint64_t remainder = config.trials % config.workers;
  for (int w = 0; w < config.workers; ++w) {
    SplitMix64 rng = SplitMix64::substream(config.seed, static_cast<std::uint64_t>(w));
    const std::uint64_t quota = base + (static_cast<std::uint64_t>(w) < remainder ? 1 : 0);
    for (std::uint64_t trial = 0; trial < quota; ++trial) {
      const std::uint32_t x = inputs.draw(rng.uniform());
      const std::uint32_t s = config.instance.map().apply_packed(x);
      const std::uint32_t m = sampler_for(s).draw(rng.uniform());
      const std::uint8_t z = static_cast<std::uint8_t>(std::popcount(m) & 1);
      if (z == config.instance.function().eval_index(x)) ++report.successes;
      auto& stats = report.per_setting[s];
      if (stats.counts.empty()) stats.counts.assign(std::size_t{1} << l, 0);
      ++stats.total;
      ++stats.counts[m];
    }
  }

  for (auto& [s, stats] : report.per_setting) {
    std::int64_t balance = 0;
    for (std::size_t m = 0; m < stats.counts.size(); ++m)
      balance += (std::popcount(m) & 1) ? -static_cast<std::int64_t>(stats.counts[m])
                                        : static_cast<std::int64_t>(stats.counts[m]);
    stats.correlator = static_cast<double>(balance) / static_cast<double>(stats.total);
  }

  const double n = static_cast<double>(config.trials);
  report.p_hat = static_cast<double>(report.successes) / n;
  if (report.successes == 0 || report.successes == config.trials) {
    // Wilson interval half-width at z = 1 keeps σ-levels finite for
    // deterministic runs.
    report.se_p = 0.5 / (n + 1.0);
  } else {
    report.se_p = std::sqrt(report.p_hat * (1.0 - report.p_hat) / n);
  }
  report.beta_hat = 2.0 * report.p_hat - 1.0;
  report.se_beta = 2.0 * report.se_p;
  return report;
}

double sigma_violation(double beta_hat, double se_beta, const Rational& classical_bound) {
  if (!(se_beta > 0.0)) throw std::invalid_argument("standard error must be positive");
  return (beta_hat - to_double(classical_bound)) / se_beta;
}

ResampleSummary poisson_resample(const protocol::ProtocolInstance& inst,
                                 const std::map<std::uint32_t, std::vector<std::uint64_t>>& counts,
                                 int resamples, std::uint64_t seed) {
  if (resamples < 2) throw std::invalid_argument("resamples must be at least 2");

  std::vector<std::pair<std::uint32_t, double>> weights;
  for (const auto& [s, w] : protocol::settings_groups(inst)) {
    if (w == 0) continue;
    const auto it = counts.find(s);
    std::uint64_t total = 0;
    if (it != counts.end())
      for (auto c : it->second) total += c;
    if (total == 0)
      throw std::invalid_argument("setting group " + std::to_string(s) +
                                  " carries weight but has no counts");
    weights.emplace_back(s, to_double(w));
  }

  SplitMix64 rng(seed);
  std::vector<double> betas;
  betas.reserve(resamples);
  for (int iteration = 0; iteration < resamples; ++iteration) {
    double beta = 0.0;
    for (const auto& [s, w] : weights) {
      const auto& outcome_counts = counts.at(s);
      std::int64_t balance = 0;
      std::uint64_t total = 0;
      for (std::size_t m = 0; m < outcome_counts.size(); ++m) {
        const std::uint64_t drawn = rng.poisson(static_cast<double>(outcome_counts[m]));
        total += drawn;
        balance += (std::popcount(m) & 1) ? -static_cast<std::int64_t>(drawn)
                                          : static_cast<std::int64_t>(drawn);
      }
      const double correlator =
          total == 0 ? 0.0 : static_cast<double>(balance) / static_cast<double>(total);
      beta += w * correlator;
    }
    betas.push_back(beta);
  }

  ResampleSummary summary;
  summary.resamples = resamples;
  double mean = 0.0;
  for (double b : betas) mean += b;
  mean /= betas.size();
  double variance = 0.0;
  for (double b : betas) variance += (b - mean) * (b - mean);
  variance /= (betas.size() - 1);
  summary.mean = mean;
  summary.stddev = std::sqrt(variance);
  return summary;
}

}  // namespace nmqc::simkit
