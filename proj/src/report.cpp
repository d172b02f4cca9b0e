#include "nmqc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

namespace nmqc::report {

namespace {

bool near(double a, double b) { return std::abs(a - b) < 1e-9; }

std::string operator_token(double theta) {
  if (near(theta, 0.0) || near(theta, 2.0 * std::numbers::pi)) return "X";
  if (near(theta, std::numbers::pi / 2)) return "Y";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "R(%.4f)", theta);
  return buf;
}

std::string operator_string(const quantum::MeasurementPlan& plan, std::uint32_t s) {
  std::string out;
  for (int j = 0; j < plan.parties(); ++j) out += operator_token(plan.angle(j, (s >> j) & 1u));
  return out;
}

bool axis_aligned(const quantum::MeasurementPlan& plan) {
  for (const auto& pair : plan.angles())
    for (double theta : pair) {
      const double quarter = theta / (std::numbers::pi / 2);
      if (std::abs(quarter - std::round(quarter)) > 1e-9) return false;
    }
  return true;
}

// For axis-aligned plans every group correlator is exactly 0 or ±1, so
// the plan's quantum value is an exact rational.
Rational exact_plan_value(const protocol::ProtocolInstance& inst,
                          const quantum::MeasurementPlan& plan) {
  Rational value = 0;
  for (const auto& [s, w] : protocol::settings_groups(inst)) {
    long long quarters = 0;
    for (int j = 0; j < plan.parties(); ++j) {
      const double theta = plan.angle(j, (s >> j) & 1u);
      quarters += std::llround(theta / (std::numbers::pi / 2));
    }
    switch (quarters % 4) {
      case 0: value += w; break;
      case 2: value -= w; break;
      default: break;  // odd multiples of π/2 contribute nothing
    }
  }
  return value;
}

struct Bucket {
  Rational magnitude;
  std::vector<std::pair<std::string, int>> terms;  // operator string, sign
};

std::vector<Bucket> coefficient_buckets(const protocol::ProtocolInstance& inst,
                                        const quantum::MeasurementPlan& plan) {
  std::map<Rational, Bucket> by_magnitude;
  for (const auto& [s, w] : protocol::settings_groups(inst)) {
    if (w == 0) continue;
    const Rational magnitude = w < 0 ? Rational(-w) : w;
    auto& bucket = by_magnitude[magnitude];
    bucket.magnitude = magnitude;
    bucket.terms.emplace_back(operator_string(plan, s), w < 0 ? -1 : 1);
  }
  std::vector<Bucket> buckets;
  for (auto& [magnitude, bucket] : by_magnitude) {
    std::sort(bucket.terms.begin(), bucket.terms.end());
    buckets.push_back(std::move(bucket));
  }
  std::sort(buckets.begin(), buckets.end(), [](const Bucket& a, const Bucket& b) {
    return a.terms.front().first < b.terms.front().first;
  });
  return buckets;
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

}  // namespace

std::string round3(double value) {
  const long long scaled = std::llround(value * 1000.0);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%lld.%03lld", scaled < 0 ? "-" : "",
                std::llabs(scaled) / 1000, std::llabs(scaled) % 1000);
  return buf;
}

std::string bound_string(const Rational& value, const protocol::ProtocolInstance& inst) {
  const BigInt num = numerator(value);
  const BigInt den = denominator(value);
  if (den == 1) return num.str();
  if (inst.distribution().is_uniform()) return fraction_string(value);
  BigInt common = 1;
  for (const auto& w : inst.distribution().weights())
    common = boost::multiprecision::lcm(common, denominator(w));
  if (common % den == 0) {
    const BigInt scaled = num * (common / den);
    return scaled.str() + "/" + common.str();
  }
  return fraction_string(value);
}

std::string render_functional(const protocol::ProtocolInstance& inst,
                              const quantum::MeasurementPlan& plan) {
  std::string out;
  for (const auto& bucket : coefficient_buckets(inst, plan)) {
    const bool all_negative = std::all_of(bucket.terms.begin(), bucket.terms.end(),
                                          [](const auto& t) { return t.second < 0; });
    const bool all_positive = std::all_of(bucket.terms.begin(), bucket.terms.end(),
                                          [](const auto& t) { return t.second > 0; });
    const bool factored = all_negative || all_positive;
    if (!out.empty())
      out += all_negative ? " - " : " + ";
    else if (all_negative)
      out += "-";
    out += fraction_string(bucket.magnitude);
    out += " <";
    bool first = true;
    for (const auto& [op, sign] : bucket.terms) {
      if (first) {
        if (!factored && sign < 0) out += "-";
      } else {
        out += (factored || sign > 0) ? " + " : " - ";
      }
      out += op;
      first = false;
    }
    out += ">";
  }
  return out;
}

std::string render_inequality(const protocol::ProtocolInstance& inst,
                              const quantum::MeasurementPlan& plan) {
  std::string out = render_functional(inst, plan);
  const Rational c = classical::classical_bound(inst).bound;
  out += " <= " + bound_string(c, inst) + " (classical), ";
  if (axis_aligned(plan))
    out += bound_string(exact_plan_value(inst, plan), inst);
  else
    out += format_double(quantum::beta_quantum(inst, plan, quantum::NoiseSpec::ideal()));
  out += " (quantum)";
  return out;
}

InequalityReport build_report(const protocol::ProtocolInstance& inst,
                              const quantum::MeasurementPlan& plan, int starts,
                              std::uint64_t seed, double grad_tolerance) {
  InequalityReport rep;
  rep.functional = render_inequality(inst, plan);

  const classical::ClassicalResult c = classical::classical_bound(inst);
  rep.classical = c.bound;
  rep.classical_witnesses = c.witnesses.size();
  rep.witness_function = c.induced_function.to_string();

  const optimize::OptimizationResult q = optimize::optimize_angles(inst, starts, seed, grad_tolerance);
  rep.quantum = q.value;
  rep.quantum_converged = q.converged;

  const optimize::RestrictedResult t = optimize::restricted_bound(inst, starts, seed, grad_tolerance);
  rep.tripartite = t.value;
  rep.tripartite_party = t.best_party;
  rep.tripartite_converged = t.converged;

  rep.p_classical = protocol::success_probability(to_double(c.bound));
  rep.p_quantum = protocol::success_probability(std::min(1.0, q.value));
  rep.p_tripartite = protocol::success_probability(std::min(1.0, t.value));

  try {
    rep.critical_visibility = quantum::critical_visibility(inst, plan, c.bound);
  } catch (const std::domain_error&) {
    rep.critical_visibility.reset();
  }
  return rep;
}

}  // namespace nmqc::report
