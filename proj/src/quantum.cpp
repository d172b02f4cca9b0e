#include "nmqc/quantum.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nmqc::quantum {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double normalize_angle(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("angles must be finite");
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

void apply_single_qubit(Eigen::VectorXcd& amps, int qubit, const Eigen::Matrix2cd& u) {
  const std::uint64_t stride = std::uint64_t{1} << qubit;
  const std::uint64_t dim = static_cast<std::uint64_t>(amps.size());
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & stride) continue;
    const Complex a = amps[i];
    const Complex b = amps[i | stride];
    amps[i] = u(0, 0) * a + u(0, 1) * b;
    amps[i | stride] = u(1, 0) * a + u(1, 1) * b;
  }
}

// ⊗_j M_j with party 1 at the least-significant bit of the index.
Eigen::MatrixXcd kron_chain(const std::vector<Eigen::Matrix2cd>& factors) {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Ones(1, 1);
  for (const auto& m : factors) {
    Eigen::MatrixXcd next(acc.rows() * 2, acc.cols() * 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        next.block(r * acc.rows(), c * acc.cols(), acc.rows(), acc.cols()) = m(r, c) * acc;
    acc = std::move(next);
  }
  return acc;
}

// Rows are the ±1-eigenvector bras of the planar observable, so the
// transformed amplitudes index outcomes directly.
Eigen::Matrix2cd measurement_basis_change(double theta) {
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  const Complex phase = std::polar(1.0, -theta);
  Eigen::Matrix2cd u;
  u << inv_sqrt2, inv_sqrt2 * phase, inv_sqrt2, -inv_sqrt2 * phase;
  return u;
}

void check_angle_count(int qubits, const std::vector<double>& angles) {
  if (static_cast<int>(angles.size()) != qubits)
    throw std::invalid_argument("angle count does not match the qubit count");
}

}  // namespace

Eigen::Matrix2cd planar_observable(double theta) {
  Eigen::Matrix2cd m;
  m << 0.0, std::polar(1.0, -theta), std::polar(1.0, theta), 0.0;
  return m;
}

MeasurementPlan::MeasurementPlan(std::vector<std::array<double, 2>> angles)
    : angles_(std::move(angles)) {
  if (angles_.empty()) throw std::invalid_argument("a plan needs at least one party");
  for (auto& pair : angles_) {
    pair[0] = normalize_angle(pair[0]);
    pair[1] = normalize_angle(pair[1]);
  }
}

MeasurementPlan MeasurementPlan::xy(int parties) {
  return MeasurementPlan(
      std::vector<std::array<double, 2>>(parties, {0.0, std::numbers::pi / 2}));
}

MeasurementPlan MeasurementPlan::xy_swapped(int parties, const std::vector<int>& swapped_parties) {
  std::vector<std::array<double, 2>> angles(parties, {0.0, std::numbers::pi / 2});
  for (int j : swapped_parties) {
    if (j < 0 || j >= parties) throw std::invalid_argument("swapped party index out of range");
    angles[j] = {std::numbers::pi / 2, 0.0};
  }
  return MeasurementPlan(std::move(angles));
}

std::vector<double> MeasurementPlan::angles_for(std::uint32_t s) const {
  std::vector<double> out(angles_.size());
  for (std::size_t j = 0; j < angles_.size(); ++j) out[j] = angles_[j][(s >> j) & 1u];
  return out;
}

PureState::PureState(int qubits, Eigen::VectorXcd amplitudes)
    : qubits_(qubits), amplitudes_(std::move(amplitudes)) {
  if (qubits_ < 1 || qubits_ > kMaxQubitsPure)
    throw std::invalid_argument("qubit count must be in 1.." + std::to_string(kMaxQubitsPure));
  if (amplitudes_.size() != Eigen::Index{1} << qubits_)
    throw std::invalid_argument("amplitude vector length must be 2^qubits");
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kStateTolerance)
    throw std::invalid_argument("state is not normalized");
}

MixedState::MixedState(int qubits, Eigen::MatrixXcd rho) : qubits_(qubits), rho_(std::move(rho)) {
  if (qubits_ < 1 || qubits_ > kMaxQubitsMixed)
    throw std::invalid_argument("qubit count must be in 1.." + std::to_string(kMaxQubitsMixed));
  const Eigen::Index dim = Eigen::Index{1} << qubits_;
  if (rho_.rows() != dim || rho_.cols() != dim)
    throw std::invalid_argument("density matrix must be 2^qubits x 2^qubits");
  if (std::abs(rho_.trace() - Complex(1.0)) > kStateTolerance)
    throw std::invalid_argument("density matrix trace must be 1");
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance)
    throw std::invalid_argument("density matrix must be Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("density matrix must be positive semidefinite");
}

NoiseSpec NoiseSpec::white_noise(double visibility) {
  if (!(visibility >= 0.0 && visibility <= 1.0))
    throw std::invalid_argument("visibility must lie in [0, 1]");
  return {Kind::white_noise, visibility};
}

PureState ghz_state(int qubits) {
  if (qubits < 1 || qubits > kMaxQubitsPure)
    throw std::invalid_argument("qubit count must be in 1.." + std::to_string(kMaxQubitsPure));
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << qubits);
  amps[0] = 1.0 / std::numbers::sqrt2;
  amps[amps.size() - 1] = 1.0 / std::numbers::sqrt2;
  return PureState(qubits, std::move(amps));
}

MixedState from_pure(const PureState& state) {
  const auto& a = state.amplitudes();
  return MixedState(state.qubits(), a * a.adjoint());
}

MixedState white_noise_state(int qubits, double visibility) {
  const NoiseSpec spec = NoiseSpec::white_noise(visibility);
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  const PureState ghz = ghz_state(qubits);
  const Eigen::VectorXcd& g = ghz.amplitudes();
  Eigen::MatrixXcd rho = spec.visibility * (g * g.adjoint()) +
                         ((1.0 - spec.visibility) / static_cast<double>(dim)) *
                             Eigen::MatrixXcd::Identity(dim, dim);
  return MixedState(qubits, std::move(rho));
}

PureState apply_local_unitaries(const PureState& state,
                                const std::vector<Eigen::Matrix2cd>& unitaries) {
  if (static_cast<int>(unitaries.size()) != state.qubits())
    throw std::invalid_argument("need exactly one unitary per qubit");
  for (const auto& u : unitaries) {
    if ((u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() >
        kUnitaryTolerance)
      throw std::invalid_argument("matrix is not unitary");
  }
  Eigen::VectorXcd amps = state.amplitudes();
  for (int j = 0; j < state.qubits(); ++j) apply_single_qubit(amps, j, unitaries[j]);
  return PureState(state.qubits(), std::move(amps));
}

double state_overlap(const PureState& a, const PureState& b) {
  if (a.qubits() != b.qubits()) throw std::invalid_argument("qubit counts do not match");
  return std::abs(a.amplitudes().dot(b.amplitudes()));
}

double expectation_product(const PureState& state, const std::vector<double>& angles) {
  check_angle_count(state.qubits(), angles);
  Eigen::VectorXcd transformed = state.amplitudes();
  for (int j = 0; j < state.qubits(); ++j)
    apply_single_qubit(transformed, j, planar_observable(angles[j]));
  return state.amplitudes().dot(transformed).real();
}

double expectation_product(const MixedState& state, const std::vector<double>& angles) {
  check_angle_count(state.qubits(), angles);
  std::vector<Eigen::Matrix2cd> factors;
  factors.reserve(angles.size());
  for (double theta : angles) factors.push_back(planar_observable(theta));
  return (state.rho() * kron_chain(factors)).trace().real();
}

double ghz_correlation(const std::vector<double>& angles) {
  double sum = 0.0;
  for (double theta : angles) {
    if (!std::isfinite(theta)) throw std::invalid_argument("angles must be finite");
    sum += theta;
  }
  return std::cos(sum);
}

double beta_quantum(const protocol::ProtocolInstance& inst, const MeasurementPlan& plan,
                    const NoiseSpec& noise) {
  if (plan.parties() != inst.parties())
    throw std::invalid_argument("plan party count does not match the instance");
  double value = 0.0;
  for (const auto& [s, w] : protocol::settings_groups(inst)) {
    double sum = 0.0;
    for (int j = 0; j < plan.parties(); ++j) sum += plan.angle(j, (s >> j) & 1u);
    value += to_double(w) * std::cos(sum);
  }
  if (noise.kind == NoiseSpec::Kind::white_noise) value *= noise.visibility;
  return value;
}

double critical_visibility(const protocol::ProtocolInstance& inst, const MeasurementPlan& plan,
                           const Rational& classical_bound) {
  const double ideal = beta_quantum(inst, plan, NoiseSpec::ideal());
  const double c = to_double(classical_bound);
  if (!(ideal > c))
    throw std::domain_error("plan does not violate the classical bound; no threshold exists");
  return c / ideal;
}

std::vector<double> outcome_distribution(const PureState& state,
                                         const std::vector<double>& angles) {
  check_angle_count(state.qubits(), angles);
  Eigen::VectorXcd amps = state.amplitudes();
  for (int j = 0; j < state.qubits(); ++j)
    apply_single_qubit(amps, j, measurement_basis_change(angles[j]));
  std::vector<double> probs(amps.size());
  for (Eigen::Index i = 0; i < amps.size(); ++i) probs[i] = std::norm(amps[i]);
  return probs;
}

std::vector<double> outcome_distribution(const MixedState& state,
                                         const std::vector<double>& angles) {
  check_angle_count(state.qubits(), angles);
  std::vector<Eigen::Matrix2cd> factors;
  factors.reserve(angles.size());
  for (double theta : angles) factors.push_back(measurement_basis_change(theta));
  const Eigen::MatrixXcd u = kron_chain(factors);
  const Eigen::VectorXd diag = (u * state.rho() * u.adjoint()).diagonal().real();
  std::vector<double> probs(diag.size());
  for (Eigen::Index i = 0; i < diag.size(); ++i) probs[i] = std::max(0.0, diag[i]);
  return probs;
}

double fidelity(const PureState& target, const MixedState& rho) {
  if (target.qubits() != rho.qubits()) throw std::invalid_argument("qubit counts do not match");
  const auto& t = target.amplitudes();
  return t.dot(rho.rho() * t).real();
}

}  // namespace nmqc::quantum
