#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "nmqc/protocol.hpp"
#include "nmqc/quantum.hpp"
#include "nmqc/rational.hpp"

namespace nmqc::simkit {

// One Monte Carlo campaign: sample x ~ p(x), derive the settings,
// sample outcomes from the Born distribution, XOR, compare with f(x).
//
// Randomness is a SplitMix64 stream per worker (see rng.hpp); inputs are
// drawn by inverse CDF over the rational weights in lexicographic x
// order, outcomes by inverse CDF over the 2^l Born probabilities, cached
// once per distinct setting. Identical configs replay bit-identically;
// the worker count is part of the stream layout and is echoed in the
// report.
struct RunConfig {
  protocol::ProtocolInstance instance;
  quantum::MeasurementPlan plan;
  quantum::NoiseSpec noise;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  int workers = 1;
};

struct SettingStats {
  std::uint64_t total = 0;
  std::vector<std::uint64_t> counts;  // per outcome string m
  double correlator = 0.0;            // (even parity − odd parity) / total
};

struct RunReport {
  std::uint64_t trials = 0;
  int workers = 1;
  std::uint64_t successes = 0;
  double p_hat = 0.0;
  double se_p = 0.0;     // √(p̂(1−p̂)/trials); Wilson half-width (z = 1) when p̂ ∈ {0,1}
  double beta_hat = 0.0; // 2p̂ − 1
  double se_beta = 0.0;  // 2·se_p
  std::map<std::uint32_t, SettingStats> per_setting;
};

RunReport run_protocol(const RunConfig& config);

// (β̂ − c) / se; the σ-level at which the classical bound is exceeded.
double sigma_violation(double beta_hat, double se_beta, const Rational& classical_bound);

struct ResampleSummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation over the resamples
  int resamples = 0;
};

// Replaces every per-setting outcome count c with a Poisson(c) draw,
// re-derives each correlator and β, and summarizes over `resamples`
// iterations. Settings that carry functional weight must have at least
// one count.
ResampleSummary poisson_resample(const protocol::ProtocolInstance& inst,
                                 const std::map<std::uint32_t, std::vector<std::uint64_t>>& counts,
                                 int resamples = 100, std::uint64_t seed = 0);

}  // namespace nmqc::simkit
