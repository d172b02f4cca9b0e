#include "nmqc/optimize.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "nmqc/classical.hpp"
#include "nmqc/rng.hpp"

namespace nmqc::optimize {

namespace {

std::vector<GroupTerm> instance_terms(const protocol::ProtocolInstance& inst) {
  std::vector<GroupTerm> terms;
  for (const auto& [s, w] : protocol::settings_groups(inst)) {
    const double weight = to_double(w);
    if (weight != 0.0) terms.push_back({s, weight});
  }
  return terms;
}

double norm2(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

struct LocalSearchResult {
  double value = 0.0;
  std::vector<double> theta;
  bool converged = false;
};

// Backtracking gradient ascent, then a guarded Newton polish once the
// gradient is small. First-order steps alone cannot certify progress
// below double-precision noise in the objective, so the curvature step
// is what actually drives the gradient under tight tolerances. Flat
// directions (the objective has continuous symmetries) are filtered out
// of the Newton system by eigenvalue.
LocalSearchResult ascend(const Objective& objective, std::vector<double> theta,
                         double grad_tolerance) {
  const int dim = objective.dimension();
  std::vector<double> grad(dim), cand(dim), cand_grad(dim);
  double value = objective.value_and_gradient(theta, grad);
  double step = 1.0;
  bool converged = false;
  Eigen::MatrixXd hess(dim, dim);

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const double gnorm = norm2(grad);
    if (gnorm < grad_tolerance) {
      converged = true;
      break;
    }

    bool moved = false;
    if (gnorm < 1e-3) {
      objective.hessian(theta, hess);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(-hess);
      const auto& evals = solver.eigenvalues();
      const auto& evecs = solver.eigenvectors();
      Eigen::VectorXd g(dim);
      for (int i = 0; i < dim; ++i) g[i] = grad[i];
      Eigen::VectorXd direction = Eigen::VectorXd::Zero(dim);
      for (int i = 0; i < dim; ++i)
        if (evals[i] > 1e-9) direction += (evecs.col(i).dot(g) / evals[i]) * evecs.col(i);
      for (int halving = 0; halving < 8 && direction.norm() > 0.0; ++halving) {
        for (int i = 0; i < dim; ++i) cand[i] = theta[i] + direction[i];
        const double cand_value = objective.value_and_gradient(cand, cand_grad);
        if (norm2(cand_grad) < 0.5 * gnorm && cand_value >= value - 1e-12) {
          theta = cand;
          value = cand_value;
          grad = cand_grad;
          moved = true;
          break;
        }
        direction *= 0.5;
      }
    }

    if (!moved) {
      double t = std::min(1.0, step * 2.0);
      while (t >= 1e-14) {
        for (int i = 0; i < dim; ++i) cand[i] = theta[i] + t * grad[i];
        const double cand_value = objective.value(cand);
        if (cand_value >= value + 1e-4 * t * gnorm * gnorm) {
          theta = cand;
          value = objective.value_and_gradient(theta, grad);
          step = t;
          moved = true;
          break;
        }
        t *= 0.5;
      }
    }

    if (!moved) break;  // stalled at floating-point resolution
  }

  return {value, std::move(theta), converged};
}

LocalSearchResult multi_start(const Objective& objective,
                              const std::vector<std::vector<double>>& deterministic_starts,
                              int starts, SplitMix64 rng, double grad_tolerance) {
  const int dim = objective.dimension();
  LocalSearchResult best;
  best.value = -2.0;
  const auto consider = [&](std::vector<double> theta0) {
    LocalSearchResult run = ascend(objective, std::move(theta0), grad_tolerance);
    if (run.value > best.value) best = std::move(run);
  };
  for (const auto& start : deterministic_starts) consider(start);
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (int i = 0; i < starts; ++i) {
    std::vector<double> theta0(dim);
    for (int d = 0; d < dim; ++d) theta0[d] = rng.uniform(0.0, kTwoPi);
    consider(std::move(theta0));
  }
  return best;
}

std::vector<double> xy_start(int parties) {
  std::vector<double> theta(2 * parties, 0.0);
  for (int j = 0; j < parties; ++j) theta[2 * j + 1] = std::numbers::pi / 2;
  return theta;
}

}  // namespace

Objective::Objective(const protocol::ProtocolInstance& inst)
    : parties_(inst.parties()), terms_(instance_terms(inst)) {}

Objective::Objective(int parties, std::vector<GroupTerm> terms)
    : parties_(parties), terms_(std::move(terms)) {
  if (parties_ < 1) throw std::invalid_argument("objective needs at least one party");
}

double Objective::value(std::span<const double> theta) const {
  double total = 0.0;
  for (const auto& term : terms_) {
    double sum = 0.0;
    for (int j = 0; j < parties_; ++j) sum += theta[2 * j + ((term.settings >> j) & 1u)];
    total += term.weight * std::cos(sum);
  }
  return total;
}

double Objective::value_and_gradient(std::span<const double> theta,
                                     std::span<double> gradient) const {
  for (auto& g : gradient) g = 0.0;
  double total = 0.0;
  for (const auto& term : terms_) {
    double sum = 0.0;
    for (int j = 0; j < parties_; ++j) sum += theta[2 * j + ((term.settings >> j) & 1u)];
    total += term.weight * std::cos(sum);
    const double slope = -term.weight * std::sin(sum);
    for (int j = 0; j < parties_; ++j) gradient[2 * j + ((term.settings >> j) & 1u)] += slope;
  }
  return total;
}

void Objective::hessian(std::span<const double> theta, Eigen::MatrixXd& out) const {
  out.setZero(dimension(), dimension());
  for (const auto& term : terms_) {
    double sum = 0.0;
    for (int j = 0; j < parties_; ++j) sum += theta[2 * j + ((term.settings >> j) & 1u)];
    const double curvature = -term.weight * std::cos(sum);
    for (int j = 0; j < parties_; ++j) {
      const int row = 2 * j + ((term.settings >> j) & 1u);
      for (int k = 0; k < parties_; ++k)
        out(row, 2 * k + ((term.settings >> k) & 1u)) += curvature;
    }
  }
}

OptimizationResult optimize_angles(const protocol::ProtocolInstance& inst, int starts,
                                   std::uint64_t seed, double grad_tolerance) {
  if (starts < 1) throw std::invalid_argument("starts must be at least 1");
  const int l = inst.parties();
  Objective objective(inst);

  std::vector<std::vector<double>> deterministic;
  deterministic.push_back(xy_start(l));
  if (l <= 16) {
    // Embed the best deterministic strategy so the result is never
    // below the classical bound.
    const auto witness = classical::classical_bound(inst).witnesses.front();
    std::vector<double> embedded(2 * l);
    for (int j = 0; j < l; ++j)
      for (int b = 0; b < 2; ++b)
        embedded[2 * j + b] =
            std::numbers::pi * ((witness.offset[j] ^ (witness.slope[j] & b)) & 1u);
    deterministic.push_back(std::move(embedded));
  }

  LocalSearchResult best =
      multi_start(objective, deterministic, starts, SplitMix64(seed), grad_tolerance);

  std::vector<std::array<double, 2>> angles(l);
  for (int j = 0; j < l; ++j) angles[j] = {best.theta[2 * j], best.theta[2 * j + 1]};
  return {best.value, quantum::MeasurementPlan(std::move(angles)), starts, best.converged};
}

RestrictedResult restricted_bound(const protocol::ProtocolInstance& inst, int starts,
                                  std::uint64_t seed, double grad_tolerance) {
  const int l = inst.parties();
  if (l < 2) throw std::invalid_argument("restricted bound needs at least two parties");
  if (starts < 1) throw std::invalid_argument("starts must be at least 1");

  const std::vector<GroupTerm> base = instance_terms(inst);
  RestrictedResult result;
  result.value = -2.0;

  for (int k = 0; k < l; ++k) {
    RestrictedResult::PartyBound party_best;
    party_best.value = -2.0;
    for (int rule = 0; rule < 4; ++rule) {
      const std::uint8_t t = static_cast<std::uint8_t>(rule >> 1);
      const std::uint8_t r = static_cast<std::uint8_t>(rule & 1);

      // Fold the excluded party's deterministic sign into the weights
      // and drop its settings bit.
      std::map<std::uint32_t, double> folded;
      for (const auto& term : base) {
        const std::uint32_t bit_k = (term.settings >> k) & 1u;
        const double sign = ((t ^ (r & bit_k)) & 1u) ? -1.0 : 1.0;
        const std::uint32_t low = term.settings & ((1u << k) - 1u);
        const std::uint32_t high = (term.settings >> (k + 1)) << k;
        folded[low | high] += sign * term.weight;
      }
      std::vector<GroupTerm> terms;
      for (const auto& [s, w] : folded)
        if (w != 0.0) terms.push_back({s, w});

      Objective objective(l - 1, std::move(terms));
      LocalSearchResult run = multi_start(
          objective, {xy_start(l - 1)}, starts,
          SplitMix64::substream(seed, static_cast<std::uint64_t>(k) * 4 + rule), grad_tolerance);

      if (run.value > party_best.value) {
        party_best.party = k;
        party_best.offset = t;
        party_best.slope = r;
        party_best.value = run.value;
        party_best.converged = run.converged;
        party_best.angles.assign(l - 1, {0.0, 0.0});
        for (int j = 0; j < l - 1; ++j)
          party_best.angles[j] = {run.theta[2 * j], run.theta[2 * j + 1]};
      }
    }
    if (party_best.value > result.value) {
      result.value = party_best.value;
      result.best_party = k;
      result.converged = party_best.converged;
    }
    result.per_party.push_back(std::move(party_best));
  }
  return result;
}

}  // namespace nmqc::optimize
