#pragma once

#include <optional>
#include <string>

#include "nmqc/classical.hpp"
#include "nmqc/optimize.hpp"
#include "nmqc/protocol.hpp"
#include "nmqc/quantum.hpp"

namespace nmqc::report {

// Operator-form rendering of the Bell functional, one term per setting
// group, e.g.
//   1/8 <XXXX - XXYY - XYXY - XYYX - YXXY - YXYX - YYXX + YYYY> <= 1/2 (classical), 1 (quantum)
// X and Y stand for angles 0 and π/2; anything else renders as R(θ).
// Groups of equal coefficient magnitude are bracketed together; a group
// whose terms all share a sign carries it outside the bracket.
std::string render_inequality(const protocol::ProtocolInstance& inst,
                              const quantum::MeasurementPlan& plan);

// Just the functional part, without the bound annotations.
std::string render_functional(const protocol::ProtocolInstance& inst,
                              const quantum::MeasurementPlan& plan);

// Bounds and success probabilities side by side, plus the noise
// threshold; everything the `report` task prints.
struct InequalityReport {
  std::string functional;
  Rational classical;
  std::size_t classical_witnesses = 0;
  std::string witness_function;
  double quantum = 0.0;
  bool quantum_converged = false;
  double tripartite = 0.0;
  int tripartite_party = 0;  // 0-based excluded party attaining the max
  bool tripartite_converged = false;
  double p_classical = 0.0;
  double p_quantum = 0.0;
  double p_tripartite = 0.0;
  std::optional<double> critical_visibility;  // absent when the plan shows no violation
};

InequalityReport build_report(const protocol::ProtocolInstance& inst,
                              const quantum::MeasurementPlan& plan, int starts,
                              std::uint64_t seed, double grad_tolerance);

// Fraction display for bounds: reduced for uniform distributions, over
// the weights' common denominator otherwise (integral values print as
// integers either way).
std::string bound_string(const Rational& value, const protocol::ProtocolInstance& inst);

// Three decimals, rounding halves away from zero (0.8125 -> "0.813").
std::string round3(double value);

}  // namespace nmqc::report
