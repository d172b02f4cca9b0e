#include "nmqc/config.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "nmqc/boolfn.hpp"

namespace nmqc::config {

namespace {

using nlohmann::json;

const std::set<std::string> kTasks = {"classical-bound", "quantum-bound", "tripartite-bound",
                                      "simulate", "report"};

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ConfigError("invalid \"" + field + "\": " + message);
}

Rational parse_weight(const json& value, const std::string& field) {
  try {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<long long>());
  } catch (const std::invalid_argument& e) {
    fail(field, e.what());
  }
  fail(field, "weights must be \"num/den\" strings or integers");
}

boolfn::BooleanFunction parse_function(const json& j, int expected_arity) {
  if (j.is_string()) {
    try {
      return boolfn::builtin(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail("function", e.what());
    }
  }
  if (!j.is_object()) fail("function", "expected an object or a builtin name");
  if (j.contains("table")) {
    if (!j["table"].is_string()) fail("function", "\"table\" must be a bit string");
    const std::string bits = j["table"].get<std::string>();
    int arity = expected_arity;
    if (j.contains("arity")) arity = j["arity"].get<int>();
    try {
      return boolfn::BooleanFunction::from_table_string(arity, bits);
    } catch (const std::invalid_argument& e) {
      fail("function", e.what());
    }
  }
  if (j.contains("anf")) {
    if (!j["anf"].is_array()) fail("function", "\"anf\" must be a list of monomials");
    boolfn::AnfPolynomial p;
    p.arity = j.contains("arity") ? j["arity"].get<int>() : expected_arity;
    for (const auto& monomial : j["anf"]) {
      if (!monomial.is_array()) fail("function", "each monomial must be a list of indices");
      std::uint32_t mask = 0;
      for (const auto& index : monomial) {
        if (!index.is_number_integer()) fail("function", "variable indices must be integers");
        const int k = index.get<int>();
        if (k < 1 || k > p.arity)
          fail("function", "variable index " + std::to_string(k) + " outside 1.." +
                               std::to_string(p.arity));
        mask |= 1u << (k - 1);
      }
      p.monomials.insert(mask);
    }
    try {
      return boolfn::from_anf(p);
    } catch (const std::invalid_argument& e) {
      fail("function", e.what());
    }
  }
  fail("function", "expected a \"table\" or \"anf\" literal");
}

protocol::InputDistribution parse_distribution(const json& j, int arity) {
  if (j.is_string()) {
    if (j.get<std::string>() == "uniform") return protocol::InputDistribution::uniform(arity);
    fail("distribution", "unknown keyword \"" + j.get<std::string>() + "\"");
  }
  if (!j.is_object()) fail("distribution", "expected \"uniform\" or a weight map");
  std::vector<Rational> weights(std::size_t{1} << arity, Rational(0));
  for (const auto& [key, value] : j.items()) {
    if (static_cast<int>(key.size()) != arity)
      fail("distribution", "key \"" + key + "\" must have one bit per input (arity " +
                               std::to_string(arity) + ")");
    std::uint32_t index = 0;
    for (int k = 0; k < arity; ++k) {
      if (key[k] != '0' && key[k] != '1') fail("distribution", "key \"" + key + "\" is not a bit string");
      index |= static_cast<std::uint32_t>(key[k] - '0') << k;
    }
    weights[index] = parse_weight(value, "distribution");
  }
  try {
    return protocol::InputDistribution(arity, std::move(weights));
  } catch (const std::invalid_argument& e) {
    fail("distribution", e.what());
  }
}

protocol::PreprocessMatrix parse_matrix(const json& j, const json* offset) {
  if (!j.is_array() || j.empty()) fail("matrix", "expected a non-empty array of rows");
  std::vector<std::vector<std::uint8_t>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) fail("matrix", "each row must be an array of bits");
    std::vector<std::uint8_t> entries;
    for (const auto& e : row) {
      if (!e.is_number_integer() || (e.get<int>() != 0 && e.get<int>() != 1))
        fail("matrix", "entries must be 0 or 1");
      entries.push_back(static_cast<std::uint8_t>(e.get<int>()));
    }
    rows.push_back(std::move(entries));
  }
  std::vector<std::uint8_t> offsets;
  if (offset != nullptr) {
    if (!offset->is_array()) fail("offset", "expected an array of bits");
    for (const auto& e : *offset) {
      if (!e.is_number_integer() || (e.get<int>() != 0 && e.get<int>() != 1))
        fail("offset", "entries must be 0 or 1");
      offsets.push_back(static_cast<std::uint8_t>(e.get<int>()));
    }
  }
  try {
    return protocol::PreprocessMatrix(std::move(rows), std::move(offsets));
  } catch (const std::invalid_argument& e) {
    fail("matrix", e.what());
  }
}

protocol::ProtocolInstance parse_instance(const json& j) {
  if (j.is_string()) {
    try {
      return protocol::paper_instance(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail("instance", e.what());
    }
  }
  if (!j.is_object()) fail("instance", "expected an object or a builtin name");
  if (!j.contains("matrix")) fail("matrix", "missing");
  const json* offset = j.contains("offset") ? &j["offset"] : nullptr;
  protocol::PreprocessMatrix matrix = parse_matrix(j["matrix"], offset);
  if (!j.contains("function")) fail("function", "missing");
  boolfn::BooleanFunction f = parse_function(j["function"], matrix.cols());
  if (!j.contains("distribution")) fail("distribution", "missing");
  protocol::InputDistribution p = parse_distribution(j["distribution"], f.arity());
  try {
    return protocol::ProtocolInstance(std::move(f), std::move(p), std::move(matrix));
  } catch (const std::invalid_argument& e) {
    fail("instance", e.what());
  }
}

quantum::NoiseSpec parse_resource(const json& j) {
  std::string kind;
  double visibility = 1.0;
  if (j.is_string()) {
    kind = j.get<std::string>();
  } else if (j.is_object()) {
    if (!j.contains("resource") || !j["resource"].is_string())
      fail("resource", "expected a \"resource\" name");
    kind = j["resource"].get<std::string>();
    if (j.contains("visibility")) visibility = j["visibility"].get<double>();
  } else {
    fail("resource", "expected a name or an object");
  }
  if (kind == "ghz") return quantum::NoiseSpec::ideal();
  if (kind == "white-noise") {
    try {
      return quantum::NoiseSpec::white_noise(visibility);
    } catch (const std::invalid_argument& e) {
      fail("resource", e.what());
    }
  }
  fail("resource", "unknown resource \"" + kind + "\"");
}

quantum::MeasurementPlan parse_plan(const json& j, int parties) {
  if (j.is_string()) {
    if (j.get<std::string>() == "xy") return quantum::MeasurementPlan::xy(parties);
    fail("plan", "unknown plan \"" + j.get<std::string>() + "\"");
  }
  if (!j.is_object()) fail("plan", "expected a name or an object");
  if (j.contains("angles")) {
    if (!j["angles"].is_array() || static_cast<int>(j["angles"].size()) != parties)
      fail("plan", "\"angles\" needs one [theta0, theta1] pair per party");
    std::vector<std::array<double, 2>> angles;
    for (const auto& pair : j["angles"]) {
      if (!pair.is_array() || pair.size() != 2) fail("plan", "each entry must be [theta0, theta1]");
      angles.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    try {
      return quantum::MeasurementPlan(std::move(angles));
    } catch (const std::invalid_argument& e) {
      fail("plan", e.what());
    }
  }
  if (!j.contains("plan") || !j["plan"].is_string()) fail("plan", "expected a \"plan\" name");
  const std::string name = j["plan"].get<std::string>();
  if (name == "xy") return quantum::MeasurementPlan::xy(parties);
  if (name == "xy-swapped") {
    std::vector<int> swapped;
    if (j.contains("parties")) {
      for (const auto& e : j["parties"]) {
        const int party = e.get<int>();
        if (party < 1 || party > parties)
          fail("plan", "swapped party " + std::to_string(party) + " outside 1.." +
                           std::to_string(parties));
        swapped.push_back(party - 1);
      }
    }
    return quantum::MeasurementPlan::xy_swapped(parties, swapped);
  }
  fail("plan", "unknown plan \"" + name + "\"");
}

Options parse_options(const json& j) {
  Options options;
  if (!j.is_object()) fail("options", "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "trials")
      options.trials = value.get<std::uint64_t>();
    else if (key == "seed")
      options.seed = value.get<std::uint64_t>();
    else if (key == "starts")
      options.starts = value.get<int>();
    else if (key == "workers")
      options.workers = value.get<int>();
    else if (key == "tolerance")
      options.tolerance = value.get<double>();
    else
      fail("options", "unknown option \"" + key + "\"");
  }
  return options;
}

JobConfig from_json(const json& root) {
  if (!root.is_object()) throw ConfigError("top-level config must be a JSON object");
  if (!root.contains("instance")) fail("instance", "missing");

  protocol::ProtocolInstance instance = parse_instance(root["instance"]);
  quantum::NoiseSpec noise =
      root.contains("resource") ? parse_resource(root["resource"]) : quantum::NoiseSpec::ideal();
  quantum::MeasurementPlan plan = root.contains("plan")
                                      ? parse_plan(root["plan"], instance.parties())
                                      : quantum::MeasurementPlan::xy(instance.parties());
  std::string task;
  if (root.contains("task")) {
    task = root["task"].get<std::string>();
    if (!kTasks.contains(task)) fail("task", "unknown task \"" + task + "\"");
  }
  Options options = root.contains("options") ? parse_options(root["options"]) : Options{};
  return JobConfig{std::move(instance), noise, std::move(plan), std::move(task), options};
}

}  // namespace

JobConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    const std::size_t limit = std::min(e.byte, text.size());
    for (std::size_t i = 0; i < limit; ++i)
      if (text[i] == '\n') ++line;
    throw ConfigError("parse error at line " + std::to_string(line) + ": " + e.what());
  }
  try {
    return from_json(root);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("schema violation: ") + e.what());
  }
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace nmqc::config
