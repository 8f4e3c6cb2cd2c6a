#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "envalg/report.hpp"

namespace envalg {

/// Inputs shared by every suite; unset optionals take per-suite defaults.
struct SuiteOptions {
  std::string algebra;                    // "gl:3", "so:5", "sp:2"
  std::vector<std::string> shifts;        // shift designators; empty: suite defaults
  std::optional<int> max_power;
  int trials = 3;
  std::uint64_t seed = 42;
  std::optional<int> sign;                // restricts default shifts to one symmetry sign
  std::optional<int> M;
  std::optional<int> k;
  int points = 5;
  unsigned jobs = 1;
  std::string chain_file;
  std::vector<std::string> polynomials;   // explicit generators for "rank"
  std::optional<std::size_t> target;
  bool progress = false;                  // per-check progress lines on stderr
};

/// verify suites: theorem1 theorem2 centralizer tensorial prop1..prop5
/// casimir-central; plus chain, expand, rank, lemma2, duality, tangent.
const std::vector<std::string>& suite_names();

/// Runs one suite. Malformed input (unknown suite, bad designator, wrong
/// family, invalid chain) throws std::invalid_argument; failures inside a
/// check become ERROR entries.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace envalg
