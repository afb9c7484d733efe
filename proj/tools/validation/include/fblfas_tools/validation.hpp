#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fblfas::validation {

// Pinned acceptance tolerances.
inline constexpr std::size_t kFig2Trials = 2000;
inline constexpr double kRhoBarAbsTol = 0.005;
inline constexpr double kRhoBarStderrMultiple = 5.0;
inline constexpr double kRhoMaxRelTol = 0.07;
inline constexpr double kFig3EmpiricalSupTol = 0.01;
inline constexpr std::size_t kFig3Samples = 100000;
inline constexpr double kFig3MvtiSupTol = 0.03;
inline constexpr double kFig3PdfMassTol = 1e-6;
inline constexpr double kRayleighReductionTol = 1e-10;
inline constexpr std::size_t kReductionGridPoints = 50;
inline constexpr std::size_t kMlTrials = 20000;
inline constexpr double kFloorRelTol = 0.05;
inline constexpr double kNoFloorCeiling = 1e-6;
inline constexpr double kMrcFlatnessRelTol = 0.01;
inline constexpr double kMarcumOracleTol = 1e-9;
inline constexpr double kGumbelMomentTol = 1e-5;

// Runtime budgets in seconds.
inline constexpr double kBudgetFig2Right = 10.0;
inline constexpr double kBudgetFig2Left = 60.0;
inline constexpr double kBudgetFig3 = 120.0;
inline constexpr double kBudgetBoundDirection = 600.0;

struct Options {
  std::uint64_t seed = 7;
  std::size_t workers = 1;
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured values against their limits
  double seconds = 0.0;
};

/// "all", a criterion number "1".."8", or a criterion name.
const std::vector<std::string>& suite_names();

/// Criterion ids 1..8 selected by a suite name. Unknown names throw InvalidArgument.
std::vector<int> select_suite(std::string_view suite);

CheckResult run_check(int id, const Options& options);

std::vector<CheckResult> run_suite(std::string_view suite, const Options& options);

/// One line per check: "[PASS] 3 fig3-distribution (1.2 s): detail".
std::string format_line(const CheckResult& r);

}  // namespace fblfas::validation
