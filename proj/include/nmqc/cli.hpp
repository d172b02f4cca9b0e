#pragma once

#include <string>

#include "nmqc/config.hpp"

namespace nmqc::cli {

enum class Format { text, json };

// 0 on success, 2 for config errors, 3 for numerical non-convergence.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNoConvergence = 3;

struct RunOutcome {
  int exit_code = kExitOk;
  std::string output;  // report body, or the error message on failure
};

// Dispatches job.task to the owning module and renders its result.
RunOutcome run_job(const config::JobConfig& job, Format format);

}  // namespace nmqc::cli
