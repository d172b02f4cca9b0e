#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "nmqc/protocol.hpp"
#include "nmqc/quantum.hpp"

namespace nmqc::optimize {

inline constexpr int kDefaultStarts = 64;
inline constexpr double kDefaultGradTolerance = 1e-10;
inline constexpr int kMaxIterations = 10000;

struct GroupTerm {
  std::uint32_t settings;
  double weight;
};

// Σ_s w(s)·cos(Σ_j θ_j^{(s_j)}) over the flattened angle vector with
// layout θ[2j + b] = θ_j^{(b)}. Smooth trigonometric polynomial; value,
// gradient and Hessian are all closed-form.
class Objective {
 public:
  explicit Objective(const protocol::ProtocolInstance& inst);
  Objective(int parties, std::vector<GroupTerm> terms);

  int parties() const { return parties_; }
  int dimension() const { return 2 * parties_; }

  double value(std::span<const double> theta) const;
  double value_and_gradient(std::span<const double> theta, std::span<double> gradient) const;
  void hessian(std::span<const double> theta, Eigen::MatrixXd& out) const;

 private:
  int parties_;
  std::vector<GroupTerm> terms_;
};

struct OptimizationResult {
  double value = 0.0;
  quantum::MeasurementPlan plan;
  int starts_used = 0;
  bool converged = false;
};

// Multi-start ascent: `starts` seeded random points in [0, 2π)^{2l},
// plus the deterministic xy start and an embedding of the best
// deterministic strategy (planar angles {0, π} reproduce every
// classical extreme point, so the result never falls below c).
OptimizationResult optimize_angles(const protocol::ProtocolInstance& inst,
                                   int starts = kDefaultStarts, std::uint64_t seed = 0,
                                   double grad_tolerance = kDefaultGradTolerance);

// One party's outcome is a deterministic function t ⊕ r·s of its
// setting; the remaining l−1 parties share a GHZ state with free planar
// angles. Best rule per excluded party, and the overall maximum.
struct RestrictedResult {
  struct PartyBound {
    int party = 0;  // excluded party, 0-based
    std::uint8_t offset = 0;
    std::uint8_t slope = 0;
    double value = 0.0;
    std::vector<std::array<double, 2>> angles;  // remaining parties, ascending
    bool converged = false;
  };
  std::vector<PartyBound> per_party;
  double value = 0.0;
  int best_party = 0;
  bool converged = false;
};

RestrictedResult restricted_bound(const protocol::ProtocolInstance& inst,
                                  int starts = kDefaultStarts, std::uint64_t seed = 0,
                                  double grad_tolerance = kDefaultGradTolerance);

}  // namespace nmqc::optimize
