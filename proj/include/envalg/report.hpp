#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace envalg {

enum class Status { Pass, Fail, Error };

std::string to_string(Status s);

struct CheckResult {
  std::string id;
  Status status = Status::Pass;
  /// Nonzero witness; always present on FAIL.
  std::optional<std::string> residual;
  nlohmann::json details = nlohmann::json::object();
  double wall_ms = 0;
};

/// Outcome of one suite. Byte-identical for fixed inputs unless timings are
/// requested.
struct SuiteReport {
  std::string suite;
  std::string algebra;
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  std::size_t count(Status s) const;
  Status verdict() const;
  /// 0 all checks pass, 1 some check fails, 2 some check errored.
  int exit_code() const;

  nlohmann::json to_json(bool timings = false) const;
  /// One "STATUS id" line per check, then a summary line.
  std::string summary_text() const;
};

}  // namespace envalg
