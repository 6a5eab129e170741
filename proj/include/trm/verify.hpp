#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trm/tolerances.hpp"

namespace trm::verify {

/// One verified claim. `anchor` is a stable identifier naming the
/// mathematical statement the check exercises; `claim` states it in a line.
struct Check {
  std::string id;
  std::string anchor;
  std::string claim;
  long long cases = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct SuiteReport {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<Check> checks;

  bool pass() const;
  double max_violation() const;
};

/// Suites in canonical order: halfplane, weakmetric, torus, modelspace,
/// randers.
const std::vector<std::string>& suite_names();

/// Runs one named suite. Throws std::invalid_argument for unknown names.
SuiteReport run_suite(const std::string& name, std::uint64_t seed,
                      const Tolerances& tol = {});

/// Runs a named suite or, for "all", every suite in canonical order.
std::vector<SuiteReport> run(const std::string& name_or_all,
                             std::uint64_t seed, const Tolerances& tol = {});

}  // namespace trm::verify
