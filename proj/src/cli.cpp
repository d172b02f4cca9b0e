#include "nmqc/cli.hpp"

#include <json.hpp>

#include <sstream>

#include "nmqc/classical.hpp"
#include "nmqc/optimize.hpp"
#include "nmqc/report.hpp"
#include "nmqc/simkit.hpp"

namespace nmqc::cli {

namespace {

using nlohmann::json;

std::string setting_string(std::uint32_t s, int parties) {
  std::string out(parties, '0');
  for (int j = 0; j < parties; ++j)
    if ((s >> j) & 1u) out[j] = '1';
  return out;
}

json angles_json(const std::vector<std::array<double, 2>>& angles) {
  json out = json::array();
  for (const auto& pair : angles) out.push_back({pair[0], pair[1]});
  return out;
}

RunOutcome classical_task(const config::JobConfig& job, Format format) {
  const auto result = classical::classical_bound(job.instance);
  if (format == Format::json) {
    json out = {{"schema", 1},
                {"task", "classical-bound"},
                {"bound", fraction_string(result.bound)},
                {"bound_value", to_double(result.bound)},
                {"witnesses", result.witnesses.size()},
                {"induced_function", result.induced_function.to_string()}};
    return {kExitOk, out.dump(2)};
  }
  std::ostringstream out;
  out << "classical bound: " << fraction_string(result.bound) << " ("
      << report::round3(to_double(result.bound)) << ")\n"
      << "witnesses: " << result.witnesses.size() << "\n"
      << "g(x) = " << result.induced_function.to_string() << "\n";
  return {kExitOk, out.str()};
}

RunOutcome quantum_task(const config::JobConfig& job, Format format) {
  const auto result = optimize::optimize_angles(job.instance, job.options.starts,
                                                job.options.seed, job.options.tolerance);
  const int code = result.converged ? kExitOk : kExitNoConvergence;
  if (format == Format::json) {
    json out = {{"schema", 1},
                {"task", "quantum-bound"},
                {"value", result.value},
                {"angles", angles_json(result.plan.angles())},
                {"starts", result.starts_used},
                {"converged", result.converged}};
    return {code, out.dump(2)};
  }
  std::ostringstream out;
  out << "quantum bound: " << report::round3(result.value)
      << " (value " << result.value << ")\n"
      << "angles (theta0, theta1) per party:\n";
  for (int j = 0; j < result.plan.parties(); ++j)
    out << "  party " << (j + 1) << ": " << result.plan.angle(j, 0) << ", "
        << result.plan.angle(j, 1) << "\n";
  out << "starts: " << result.starts_used << ", converged: " << (result.converged ? "yes" : "no")
      << "\n";
  return {code, out.str()};
}

RunOutcome tripartite_task(const config::JobConfig& job, Format format) {
  const auto result = optimize::restricted_bound(job.instance, job.options.starts,
                                                 job.options.seed, job.options.tolerance);
  const int code = result.converged ? kExitOk : kExitNoConvergence;
  if (format == Format::json) {
    json per_party = json::array();
    for (const auto& p : result.per_party) {
      per_party.push_back({{"party", p.party + 1},
                           {"offset", p.offset},
                           {"slope", p.slope},
                           {"value", p.value},
                           {"angles", angles_json(p.angles)},
                           {"converged", p.converged}});
    }
    json out = {{"schema", 1},
                {"task", "tripartite-bound"},
                {"value", result.value},
                {"best_party", result.best_party + 1},
                {"per_party", per_party},
                {"converged", result.converged}};
    return {code, out.dump(2)};
  }
  std::ostringstream out;
  out << "tripartite bound: " << result.value << " (classical party " << (result.best_party + 1)
      << ")\n";
  for (const auto& p : result.per_party)
    out << "  excluding party " << (p.party + 1) << ": " << p.value << "  (m = "
        << int(p.offset) << (p.slope ? " xor s" : "") << ", converged: "
        << (p.converged ? "yes" : "no") << ")\n";
  return {code, out.str()};
}

RunOutcome simulate_task(const config::JobConfig& job, Format format) {
  const simkit::RunConfig run_config{job.instance,       job.plan,
                                     job.noise,          job.options.trials,
                                     job.options.seed,   job.options.workers};
  const auto report = simkit::run_protocol(run_config);
  const auto classical = classical::classical_bound(job.instance).bound;
  const double sigma = simkit::sigma_violation(report.beta_hat, report.se_beta, classical);

  json per_setting = json::object();
  for (const auto& [s, stats] : report.per_setting) {
    per_setting[setting_string(s, job.instance.parties())] = {
        {"counts", stats.counts}, {"E", stats.correlator}, {"total", stats.total}};
  }
  json out = {{"schema", 1},
              {"task", "simulate"},
              {"trials", report.trials},
              {"workers", report.workers},
              {"p_hat", report.p_hat},
              {"se", report.se_p},
              {"beta_hat", report.beta_hat},
              {"se_beta", report.se_beta},
              {"classical_bound", fraction_string(classical)},
              {"sigma_vs_classical", sigma},
              {"per_setting", per_setting}};
  return {kExitOk, out.dump(format == Format::json ? -1 : 2)};
}

RunOutcome report_task(const config::JobConfig& job, Format format) {
  const auto rep = report::build_report(job.instance, job.plan, job.options.starts,
                                        job.options.seed, job.options.tolerance);
  const int code = (rep.quantum_converged && rep.tripartite_converged) ? kExitOk
                                                                       : kExitNoConvergence;
  if (format == Format::json) {
    json out = {{"schema", 1},
                {"task", "report"},
                {"functional", rep.functional},
                {"classical",
                 {{"bound", fraction_string(rep.classical)},
                  {"value", to_double(rep.classical)},
                  {"witnesses", rep.classical_witnesses},
                  {"induced_function", rep.witness_function},
                  {"success", rep.p_classical}}},
                {"quantum",
                 {{"value", rep.quantum},
                  {"success", rep.p_quantum},
                  {"converged", rep.quantum_converged}}},
                {"tripartite",
                 {{"value", rep.tripartite},
                  {"success", rep.p_tripartite},
                  {"classical_party", rep.tripartite_party + 1},
                  {"converged", rep.tripartite_converged}}}};
    if (rep.critical_visibility)
      out["critical_visibility"] = *rep.critical_visibility;
    else
      out["critical_visibility"] = nullptr;
    return {code, out.dump(2)};
  }
  std::ostringstream out;
  out << rep.functional << "\n\n";
  out << "  resource      beta bound            success probability\n";
  out << "  classical     " << fraction_string(rep.classical) << " ("
      << report::round3(to_double(rep.classical)) << ")         " << report::round3(rep.p_classical)
      << "\n";
  out << "  tripartite    " << report::round3(rep.tripartite) << "                 "
      << report::round3(rep.p_tripartite) << "\n";
  out << "  quantum       " << report::round3(rep.quantum) << "                 "
      << report::round3(rep.p_quantum) << "\n\n";
  if (rep.critical_visibility)
    out << "critical visibility: " << *rep.critical_visibility << "\n";
  else
    out << "critical visibility: n/a (plan does not violate the classical bound)\n";
  return {code, out.str()};
}

}  // namespace

RunOutcome run_job(const config::JobConfig& job, Format format) {
  try {
    if (job.task == "classical-bound") return classical_task(job, format);
    if (job.task == "quantum-bound") return quantum_task(job, format);
    if (job.task == "tripartite-bound") return tripartite_task(job, format);
    if (job.task == "simulate") return simulate_task(job, format);
    if (job.task == "report") return report_task(job, format);
    return {kExitConfig, "no task selected: pass a subcommand or set \"task\" in the config"};
  } catch (const config::ConfigError& e) {
    return {kExitConfig, e.what()};
  } catch (const std::invalid_argument& e) {
    return {kExitConfig, e.what()};
  }
}

}  // namespace nmqc::cli
