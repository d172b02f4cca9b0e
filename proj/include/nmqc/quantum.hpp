#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "nmqc/protocol.hpp"
#include "nmqc/rational.hpp"

namespace nmqc::quantum {

// State-vector oracles stay below 1 GiB and tests stay fast; the
// production path is the O(1)-per-setting cosine closed form.
inline constexpr int kMaxQubitsPure = 12;
inline constexpr int kMaxQubitsMixed = 8;

// Tolerance ladder: construction invariants 1e-12, oracle agreement
// 1e-10, optimization results 1e-6.
inline constexpr double kStateTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;

using Complex = std::complex<double>;

// cos(θ)·X + sin(θ)·Y; a ±1-valued observable in the equatorial plane.
Eigen::Matrix2cd planar_observable(double theta);

// Per-party planar angles: theta0_j for setting s_j = 0, theta1_j for
// s_j = 1. Angles are normalized into [0, 2π) on construction.
class MeasurementPlan {
 public:
  explicit MeasurementPlan(std::vector<std::array<double, 2>> angles);

  // theta0 = 0 (X), theta1 = π/2 (Y) for every party.
  static MeasurementPlan xy(int parties);
  // Same, but the listed parties (0-based) measure Y for s = 0 and X for
  // s = 1, which absorbs a NOT on those settings.
  static MeasurementPlan xy_swapped(int parties, const std::vector<int>& swapped_parties);

  int parties() const { return static_cast<int>(angles_.size()); }
  double angle(int party, std::uint8_t setting) const { return angles_[party][setting]; }
  const std::vector<std::array<double, 2>>& angles() const { return angles_; }

  // One angle per party for a packed setting tuple.
  std::vector<double> angles_for(std::uint32_t s) const;

 private:
  std::vector<std::array<double, 2>> angles_;
};

// Amplitude vector over l qubits; party j is bit j-1 of the index, the
// same packing as input tuples. Norm must be 1 within 1e-12.
class PureState {
 public:
  PureState(int qubits, Eigen::VectorXcd amplitudes);

  int qubits() const { return qubits_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

 private:
  int qubits_;
  Eigen::VectorXcd amplitudes_;
};

// Density operator: trace 1 and Hermitian within 1e-12, eigenvalues
// down to -1e-10 tolerated.
class MixedState {
 public:
  MixedState(int qubits, Eigen::MatrixXcd rho);

  int qubits() const { return qubits_; }
  const Eigen::MatrixXcd& rho() const { return rho_; }

 private:
  int qubits_;
  Eigen::MatrixXcd rho_;
};

struct NoiseSpec {
  enum class Kind { ideal, white_noise };
  Kind kind = Kind::ideal;
  double visibility = 1.0;  // V in ρ = V·|GHZ⟩⟨GHZ| + (1−V)·I/2^l

  static NoiseSpec ideal() { return {Kind::ideal, 1.0}; }
  static NoiseSpec white_noise(double visibility);
};

// (|0...0⟩ + |1...1⟩)/√2 on l ≤ 12 qubits.
PureState ghz_state(int qubits);

MixedState from_pure(const PureState& state);
MixedState white_noise_state(int qubits, double visibility);

// Applies one 2x2 unitary per qubit; each must be unitary within 1e-10.
PureState apply_local_unitaries(const PureState& state,
                                const std::vector<Eigen::Matrix2cd>& unitaries);

// |⟨a|b⟩|, for phase-insensitive state comparisons.
double state_overlap(const PureState& a, const PureState& b);

// ⟨⊗_j (cos θ_j X + sin θ_j Y)⟩ by full contraction; the oracle for the
// closed form below.
double expectation_product(const PureState& state, const std::vector<double>& angles);
double expectation_product(const MixedState& state, const std::vector<double>& angles);

// GHZ planar correlation closed form, cos(Σ_j θ_j).
double ghz_correlation(const std::vector<double>& angles);

// β for a GHZ resource: Σ_x β(x)·cos(Σ_j θ_j^{(s_j(x))}), scaled by V
// under white noise (product observables are traceless, so the identity
// part contributes nothing).
double beta_quantum(const protocol::ProtocolInstance& inst, const MeasurementPlan& plan,
                    const NoiseSpec& noise);

// V* = c / beta_quantum(ideal); requires an actual violation.
double critical_visibility(const protocol::ProtocolInstance& inst, const MeasurementPlan& plan,
                           const Rational& classical_bound);

// Born-rule probabilities over outcome strings m (m_j at bit j-1) for
// measuring each qubit in its planar basis.
std::vector<double> outcome_distribution(const PureState& state,
                                         const std::vector<double>& angles);
std::vector<double> outcome_distribution(const MixedState& state,
                                         const std::vector<double>& angles);

// ⟨target|ρ|target⟩.
double fidelity(const PureState& target, const MixedState& rho);

}  // namespace nmqc::quantum
