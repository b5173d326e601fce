#pragma once

// Command-line front end: output records, verification suites and the
// argument dispatcher behind the harmonic-sums executable.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace harmsum::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kNumericFailure = 3,
};

/// One command result. JSON keys appear in declaration order.
struct OutputRecord {
  std::string command;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  std::variant<double, std::string> value = 0.0;
  /// (exact coefficient, atom) pairs, closed-form evaluations only.
  std::optional<std::vector<std::pair<std::string, std::string>>> decomposition;
  std::optional<double> error_estimate;
  std::string method;

  nlohmann::ordered_json to_json() const;
  static OutputRecord from_json(const nlohmann::ordered_json& j);
  std::string to_plain() const;

  bool operator==(const OutputRecord&) const = default;
};

/// Outcome of one named verification suite.
struct SuiteReport {
  std::string suite;
  double max_residual = 0;
  /// Largest residual/tolerance ratio over all checks; the suite passes when <= 1.
  double worst_ratio = 0;
  int checks = 0;
  bool passed() const { return worst_ratio <= 1.0; }
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  int cases = 100;
  /// Multiplies every check tolerance; 1 applies the suite's own tolerances.
  double tolerance_scale = 1.0;
};

/// Names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// functional-eq | lemma25 | lemma26 | cor23 | cor24 | cross.
/// Throws std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts = {});

/// Parses `args` (without the program name), writes one record to `out`,
/// diagnostics to `err`, and returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace harmsum::cli
