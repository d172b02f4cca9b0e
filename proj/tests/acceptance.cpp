// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any fail. Expected values are asserted exactly as specified up front;
// failures print the computed value next to the expectation.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "nmqc/classical.hpp"
#include "nmqc/optimize.hpp"
#include "nmqc/protocol.hpp"
#include "nmqc/quantum.hpp"
#include "nmqc/report.hpp"
#include "nmqc/rng.hpp"
#include "nmqc/simkit.hpp"
#include "test_util.hpp"

using namespace nmqc;

namespace {

int g_failures = 0;

void verdict(int criterion, bool pass, const std::string& summary) {
  std::printf("criterion %d: %s — %s\n", criterion, pass ? "PASS" : "FAIL", summary.c_str());
  if (!pass) ++g_failures;
}

const char* kNames[] = {"h3", "or3", "or3_x1x3", "nand2"};

quantum::MeasurementPlan paper_plan(const std::string& name) {
  const int l = protocol::paper_instance(name).parties();
  return name == "nand2" ? quantum::MeasurementPlan::xy_swapped(l, {2, 3})
                         : quantum::MeasurementPlan::xy(l);
}

std::string dbl(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// 1. Classical bounds, exact: 1/2, 4/10, 9/16, 1/2.
void criterion_1() {
  const Rational expected[] = {Rational(1, 2), Rational(4, 10), Rational(9, 16), Rational(1, 2)};
  bool pass = true;
  std::string detail;
  for (int i = 0; i < 4; ++i) {
    const Rational computed = classical::classical_bound(protocol::paper_instance(kNames[i])).bound;
    if (computed != expected[i]) {
      pass = false;
      detail += std::string(kNames[i]) + ": expected " + fraction_string(expected[i]) +
                ", computed " + fraction_string(computed) +
                " (exhaustive enumeration; every strategy value for this instance is an even "
                "number of sixteenths, so 9/16 is unattainable); ";
    }
  }
  if (pass) detail = "classical bounds 1/2, 4/10, 9/16, 1/2 reproduced exactly";
  verdict(1, pass, detail);
}

// 2. Quantum bounds via optimization (starts = 64, seed = 0) and via the
//    xy plans analytically.
void criterion_2() {
  const double expected[] = {1.0, 0.8, 0.875, 1.0};
  bool pass = true;
  std::string detail = "quantum bounds";
  for (int i = 0; i < 4; ++i) {
    const auto inst = protocol::paper_instance(kNames[i]);
    const double optimized = optimize::optimize_angles(inst, 64, 0).value;
    const double planned =
        quantum::beta_quantum(inst, paper_plan(kNames[i]), quantum::NoiseSpec::ideal());
    if (std::abs(optimized - expected[i]) > 1e-6 || std::abs(planned - expected[i]) > 1e-12) {
      pass = false;
      detail += std::string(" [") + kNames[i] + ": optimized " + dbl(optimized) + ", xy plan " +
                dbl(planned) + ", expected " + dbl(expected[i]) + "]";
    }
  }
  if (pass) detail += " 1, 8/10, 14/16, 1 reached by optimization and by the xy plans";
  verdict(2, pass, detail);
}

// 3. Success probabilities (Eqs. 15-18 presentation): (0.750, 1.000),
//    (0.700, 0.900), (0.813, 0.938), (0.500, 1.000).
void criterion_3() {
  const char* expected[][2] = {
      {"0.750", "1.000"}, {"0.700", "0.900"}, {"0.813", "0.938"}, {"0.500", "1.000"}};
  bool pass = true;
  std::string detail;
  for (int i = 0; i < 4; ++i) {
    const auto inst = protocol::paper_instance(kNames[i]);
    const Rational c = classical::classical_bound(inst).bound;
    const double q = optimize::optimize_angles(inst, 64, 0).value;
    const std::string pc = report::round3(protocol::success_probability(to_double(c)));
    const std::string pq = report::round3(protocol::success_probability(std::min(1.0, q)));
    if (pc != expected[i][0] || pq != expected[i][1]) {
      pass = false;
      detail += std::string(kNames[i]) + ": got (" + pc + ", " + pq + "), expected (" +
                expected[i][0] + ", " + expected[i][1] + ")";
      if (std::string(kNames[i]) == "nand2")
        detail += " ((1 + c)/2 with c = " + fraction_string(c) +
                  " is 0.750, as for h3 with the same bound; the expected 0.500 equals the bound "
                  "itself rather than its conversion)";
      detail += "; ";
    }
  }
  if (pass) detail = "success probabilities (0.750,1.000) (0.700,0.900) (0.813,0.938) (0.500,1.000)";
  verdict(3, pass, detail);
}

// 4. Tripartite bounds: 1/sqrt(2), 2/3, 0.70235, 1.0.
void criterion_4() {
  const double expected[] = {1.0 / std::numbers::sqrt2, 2.0 / 3.0, 0.70235, 1.0};
  const double tolerance[] = {1e-4, 1e-4, 1e-4, 1e-6};
  bool pass = true;
  std::string detail;
  for (int i = 0; i < 4; ++i) {
    const auto result = optimize::restricted_bound(protocol::paper_instance(kNames[i]), 64, 0);
    if (std::abs(result.value - expected[i]) > tolerance[i]) {
      pass = false;
      detail += std::string(kNames[i]) + ": expected " + dbl(expected[i]) + ", computed " +
                dbl(result.value);
      if (i == 2) {
        detail += " (0.70235 is attained when party 1 or 4 is the classical one: per-party values ";
        for (const auto& p : result.per_party) detail += dbl(p.value) + " ";
        detail += "— the maximum over the choice of classical party is larger)";
      }
      detail += "; ";
    }
  }
  if (pass) detail = "tripartite bounds 1/sqrt(2), 2/3, 0.70235, 1.0 reproduced";
  verdict(4, pass, detail);
}

// 5. Oracle equivalence: closed form vs contraction; class enumeration
//    vs 4^l brute force.
void criterion_5() {
  bool pass = true;
  std::string detail;

  SplitMix64 rng(501);
  double worst = 0.0;
  for (int l = 2; l <= 6; ++l) {
    const auto state = quantum::ghz_state(l);
    for (int i = 0; i < 200; ++i) {
      const auto angles = testutil::random_angles(rng, l);
      worst = std::max(worst, std::abs(quantum::ghz_correlation(angles) -
                                       quantum::expectation_product(state, angles)));
    }
  }
  if (worst >= 1e-10) {
    pass = false;
    detail += "closed form vs contraction deviates by " + dbl(worst) + "; ";
  }

  SplitMix64 rng2(502);
  for (int i = 0; i < 50 && pass; ++i) {
    const int arity = 2 + static_cast<int>(rng2.next() % 2);
    const int parties = 2 + static_cast<int>(rng2.next() % 3);
    const auto inst = testutil::random_instance(rng2, arity, parties);
    const Rational fast = classical::classical_bound(inst).bound;
    Rational brute = -2;
    for (std::uint32_t code = 0; code < (1u << (2 * parties)); ++code) {
      Rational value = 0;
      for (std::uint32_t x = 0; x < (1u << arity); ++x) {
        const std::uint32_t s = inst.map().apply_packed(x);
        std::uint8_t z = 0;
        for (int j = 0; j < parties; ++j)
          z ^= ((code >> (2 * j)) & 1u) ^ (((code >> (2 * j + 1)) & 1u) & ((s >> j) & 1u));
        const Rational& beta = inst.bell().coefficient(x);
        value += z ? -beta : beta;
      }
      if (value > brute) brute = value;
    }
    if (fast != brute) {
      pass = false;
      detail += "class enumeration " + fraction_string(fast) + " != brute force " +
                fraction_string(brute) + "; ";
    }
  }
  if (pass)
    detail = "GHZ closed form within 1e-10 of contraction (l=2..6 x200); class enumeration equals "
             "4^l brute force on 50 random instances";
  verdict(5, pass, detail);
}

// 6. Gradient vs central finite differences on 100 random points.
void criterion_6() {
  SplitMix64 rng(601);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int arity = 2 + static_cast<int>(rng.next() % 2);
    const int parties = 2 + static_cast<int>(rng.next() % 3);
    const auto inst = testutil::random_instance(rng, arity, parties);
    const optimize::Objective objective(inst);
    std::vector<double> theta(objective.dimension());
    for (auto& t : theta) t = rng.uniform(0.0, 2 * std::numbers::pi);
    std::vector<double> grad(objective.dimension());
    objective.value_and_gradient(theta, grad);
    for (int d = 0; d < objective.dimension(); ++d) {
      auto lo = theta, hi = theta;
      lo[d] -= 1e-6;
      hi[d] += 1e-6;
      const double numeric = (objective.value(hi) - objective.value(lo)) / 2e-6;
      worst = std::max(worst, std::abs(grad[d] - numeric));
    }
  }
  verdict(6, worst < 1e-5, "largest gradient/finite-difference gap " + dbl(worst));
}

// 7. Monte Carlo recovery at 1e5 trials, ideal and V = 0.8; exact
//    success for the deterministic ideal instances.
void criterion_7() {
  bool pass = true;
  std::string detail;
  for (int i = 0; i < 4; ++i) {
    const auto inst = protocol::paper_instance(kNames[i]);
    const auto plan = paper_plan(kNames[i]);
    int noise_index = 0;
    for (const auto noise :
         {quantum::NoiseSpec::ideal(), quantum::NoiseSpec::white_noise(0.8)}) {
      const simkit::RunConfig config{inst, plan, noise, 100000,
                                     700 + static_cast<std::uint64_t>(4 * i + noise_index), 1};
      const auto report = simkit::run_protocol(config);
      const double target =
          protocol::success_probability(quantum::beta_quantum(inst, plan, noise));
      const bool deterministic =
          noise.kind == quantum::NoiseSpec::Kind::ideal && (i == 0 || i == 3);
      if (deterministic) {
        if (report.p_hat != 1.0) {
          pass = false;
          detail += std::string(kNames[i]) + " ideal: p_hat " + dbl(report.p_hat) + " != 1; ";
        }
      } else if (std::abs(report.p_hat - target) > 3 * std::max(report.se_p, 1e-12)) {
        pass = false;
        detail += std::string(kNames[i]) + (noise_index ? " V=0.8" : " ideal") + ": p_hat " +
                  dbl(report.p_hat) + " vs " + dbl(target) + "; ";
      }
      ++noise_index;
    }
  }
  if (pass)
    detail = "every instance within 3 standard errors at 1e5 trials; h3 and nand2 exact under "
             "ideal resources";
  verdict(7, pass, detail);
}

// 8. Noise thresholds: V* = 0.5, 0.5, 9/14, 0.5 and linear scaling in V.
void criterion_8() {
  const double expected[] = {0.5, 0.5, 9.0 / 14.0, 0.5};
  bool pass = true;
  std::string detail;
  for (int i = 0; i < 4; ++i) {
    const auto inst = protocol::paper_instance(kNames[i]);
    const Rational c = classical::classical_bound(inst).bound;
    const double vstar = quantum::critical_visibility(inst, paper_plan(kNames[i]), c);
    if (std::abs(vstar - expected[i]) > 1e-9) {
      pass = false;
      detail += std::string(kNames[i]) + ": expected V* " + dbl(expected[i]) + ", computed " +
                dbl(vstar) + " (= c/q with the enumerated classical bound); ";
    }
  }
  SplitMix64 rng(801);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto inst = testutil::random_instance(rng, 3, 4);
    std::vector<std::array<double, 2>> angles(4);
    for (auto& pair : angles)
      pair = {rng.uniform(0, 2 * std::numbers::pi), rng.uniform(0, 2 * std::numbers::pi)};
    const quantum::MeasurementPlan plan(angles);
    const double v = rng.uniform();
    worst = std::max(worst, std::abs(quantum::beta_quantum(inst, plan,
                                                           quantum::NoiseSpec::white_noise(v)) -
                                     v * quantum::beta_quantum(inst, plan,
                                                               quantum::NoiseSpec::ideal())));
  }
  if (worst >= 1e-12) {
    pass = false;
    detail += "white-noise beta deviates from V x ideal by " + dbl(worst) + "; ";
  }
  if (pass) detail = "V* = 0.5, 0.5, 9/14, 0.5 and linear V-scaling within 1e-12";
  verdict(8, pass, detail);
}

// 9. Sigma-violation methodology on the fidelity-matched resource:
//    V = 0.8123 (F = 0.824) violates every classical bound and the
//    significance grows like sqrt(trials).
void criterion_9() {
  bool pass = true;
  std::string detail;

  const double fidelity =
      quantum::fidelity(quantum::ghz_state(4), quantum::white_noise_state(4, 0.8123));
  if (std::abs(fidelity - 0.824) > 1e-3) {
    pass = false;
    detail += "fidelity of the V=0.8123 resource is " + dbl(fidelity) + ", not 0.824; ";
  }

  for (int i = 0; i < 4; ++i) {
    const auto inst = protocol::paper_instance(kNames[i]);
    const auto plan = paper_plan(kNames[i]);
    const Rational c = classical::classical_bound(inst).bound;
    std::vector<double> sigmas;
    for (const std::uint64_t trials : {std::uint64_t{1000}, std::uint64_t{10000},
                                       std::uint64_t{100000}}) {
      const simkit::RunConfig config{inst, plan, quantum::NoiseSpec::white_noise(0.8123), trials,
                                     900 + static_cast<std::uint64_t>(i), 1};
      const auto report = simkit::run_protocol(config);
      sigmas.push_back(simkit::sigma_violation(report.beta_hat, report.se_beta, c));
    }
    if (!(sigmas[0] > 0.0 && sigmas[1] > sigmas[0] && sigmas[2] > sigmas[1])) {
      pass = false;
      detail += std::string(kNames[i]) + ": sigmas " + dbl(sigmas[0]) + ", " + dbl(sigmas[1]) +
                ", " + dbl(sigmas[2]) + " not increasing; ";
    }
    const double growth = sigmas[2] / std::max(sigmas[0], 1e-9);
    if (growth < 5.0 || growth > 20.0) {
      pass = false;
      detail += std::string(kNames[i]) + ": sigma growth over 1e3->1e5 trials is " + dbl(growth) +
                ", expected ~10; ";
    }
  }
  if (pass)
    detail = "V=0.8123 (F=0.824) violates every classical bound; sigma grows ~sqrt(trials) over "
             "1e3/1e4/1e5";
  verdict(9, pass, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", g_failures);
  return 1;
}
