#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "nmqc/protocol.hpp"
#include "nmqc/quantum.hpp"

namespace nmqc::config {

// Raised for malformed files, schema violations and inconsistent
// values; the CLI maps it to exit code 2. Messages name the offending
// field.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  int starts = 64;
  int workers = 1;
  double tolerance = 1e-10;  // optimizer gradient-norm convergence
};

struct JobConfig {
  protocol::ProtocolInstance instance;
  quantum::NoiseSpec noise;
  quantum::MeasurementPlan plan;
  std::string task;  // empty when the file leaves it to the CLI
  Options options;
};

// Reads and validates a JSON job description:
//
//   {
//     "instance": {"function": {"table": "01111110", "arity": 3}
//                              | {"anf": [[1,2],[3],[]]},
//                  "distribution": "uniform" | {"011": "3/16", ...},
//                  "matrix": [[1,0,0],[0,1,0],[0,0,1],[1,1,1]],
//                  "offset": [0,0,0,0]}          // optional
//               | "h3" | "or3" | "or3_x1x3" | "nand2",
//     "resource": {"resource": "ghz"}
//               | {"resource": "white-noise", "visibility": 0.8},
//     "plan": {"plan": "xy"}
//           | {"plan": "xy-swapped", "parties": [3,4]}   // 1-based
//           | {"angles": [[0, 1.5707963], ...]},
//     "task": "report",                                  // optional
//     "options": {"trials": 100000, "seed": 0, "starts": 64,
//                 "workers": 1, "tolerance": 1e-10}      // optional
//   }
//
// Distribution keys are bit strings x1x2...xn; rational weights are
// "num/den" strings. Absent inputs get weight 0 and the weights must
// sum to exactly 1 (nothing is rescaled). "resource" defaults to the
// ideal GHZ state and "plan" to xy.
JobConfig load_config(const std::string& path);

// Same, from an in-memory JSON document.
JobConfig parse_config(const std::string& text);

}  // namespace nmqc::config
