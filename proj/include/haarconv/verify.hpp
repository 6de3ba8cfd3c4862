#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "haarconv/empirical_ops.hpp"

namespace haarconv {

/// One line of a verification report. `pass` compares value with tol in the
/// direction stated by the metric (an upper bound unless the metric says
/// otherwise, e.g. p-values and counterexample gaps must exceed tol).
struct VerifyRow {
  std::string suite;
  std::string case_name;
  std::string anchor;  ///< which statement of the theory the row exercises
  std::string metric;
  double value = 0;
  double tol = 0;
  bool pass = false;
};

struct VerifyConfig {
  std::uint64_t seed = 7;
  std::size_t particles = kDefaultParticles;
  /// Random instances per finite case.
  std::size_t trials = 50;
  /// Replaces the exact (1e-12) tolerance when set.
  std::optional<double> tol;
  /// Perturbs one measure of the families under test so the checks must fail.
  bool inject_fault = false;
};

/// associativity, bijection, eq6, semigroup, decompose, project, embed, idempotent, heat.
const std::vector<std::string>& suite_names();
bool is_suite(std::string_view name);
/// Runs one suite, or every suite for "all". Throws ArgumentError on an unknown name.
std::vector<VerifyRow> run_suite(std::string_view name, const VerifyConfig& config);
bool all_pass(const std::vector<VerifyRow>& rows);
/// CSV with columns suite, case, anchor, metric, value, tol, pass and the seed in the header line.
std::string report_csv(const std::vector<VerifyRow>& rows, const VerifyConfig& config);

}  // namespace haarconv
