#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "job_io.hpp"

namespace valent::cli {

/// Command-line overrides applied to every job.
struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<Index> horizon;
  std::optional<std::string> suite;
};

enum ExitCode : int { exit_ok = 0, exit_failed = 1, exit_schema = 2, exit_computation = 3 };

struct JobOutcome {
  json record;
  int exit_code = exit_ok;
};

/// Never throws for bad input: schema and computation errors become part of
/// the record.
JobOutcome run_job(const json& job, const RunOptions& options = {});

struct RunOutcome {
  json report;
  /// Largest code over the jobs, so any error outranks a failed assertion.
  int exit_code = exit_ok;
};

/// Accepts one job, an array of jobs, or {"jobs": [...]}. Jobs run in order.
RunOutcome run_document(const json& document, const RunOptions& options = {});

}  // namespace valent::cli
