#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "job_io.hpp"

namespace valent::cli {

/// Unknown suite name.
class UnknownSuite : public SchemaError {
 public:
  using SchemaError::SchemaError;
};

struct PropertyTally {
  std::string name;
  Index cases = 0;
  Index failed = 0;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  Index size = 0;
  std::vector<PropertyTally> properties;
  /// Payload of the first failing case, null when everything passed.
  json counterexample;

  bool passed() const;
  Index cases() const;
  Index failures() const;
};

const std::vector<std::string>& suite_names();

/// Deterministic given (name, seed, size); `size` is the number of random
/// cases per property.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, Index size);

json to_json(const SuiteReport& report);

}  // namespace valent::cli
