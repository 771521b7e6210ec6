#ifndef ADACYCLE_ANALYSIS_HPP_
#define ADACYCLE_ANALYSIS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "adacycle/boost.hpp"
#include "adacycle/cycle.hpp"

namespace adacycle {

enum class Check { three_weight, weight_values, general_cycle, farey, nabla };

const char* check_name(Check check) noexcept;  // 3wgt, wvals, gencyc, farey, nabla
Check parse_check(const std::string& text);
// Comma-separated list; "all" selects every check.
std::vector<Check> parse_checks(const std::string& text);
std::vector<Check> all_checks();

enum class CheckStatus { pass, fail, skipped };
const char* check_status_name(CheckStatus status) noexcept;

struct CheckResult {
  Check check;
  CheckStatus status = CheckStatus::skipped;
  std::string detail;
  std::vector<std::size_t> iterations;  // where the check failed
};

struct AnalysisOptions {
  CycleOptions cycle;
  std::vector<Check> checks = all_checks();
};

struct AnalysisReport {
  NumericMode mode = NumericMode::floating;
  std::size_t length = 0;
  std::string rule;
  std::string halt;
  std::optional<CycleReport> cycle;
  std::string cycle_note;  // why no cycle was reported
  std::size_t scope_begin = 0;
  std::size_t scope_end = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const noexcept;
  std::string to_text() const;
  std::string to_json() const;
};

// Checks run on the cycling window when a cycle is detected and on the
// whole trace otherwise. Skipped checks do not count as failures.
AnalysisReport analyze(const AnyTrace& trace, const AnalysisOptions& options = {});

}  // namespace adacycle

#endif  // ADACYCLE_ANALYSIS_HPP_
