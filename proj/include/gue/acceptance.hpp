#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gue {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    double budget_seconds = 0.0;
};

inline constexpr int kCriterionCount = 11;

/// Runs one acceptance criterion (1..11). A criterion passes only if its
/// numerical checks hold and it finishes inside its runtime budget.
CriterionResult run_criterion(int id);

/// Runs the listed criteria (all when empty), printing one line per result
/// to `log` as soon as it is available.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, std::ostream& log);

std::string format_result(const CriterionResult& r);

// Pinned values from the n = 400 and m = 400 reference runs.
inline constexpr double kPinnedTwPlusAtZero = 0.96937282835526;
inline constexpr double kPinnedDefectN400 = 2.037134e-4;

}  // namespace gue
