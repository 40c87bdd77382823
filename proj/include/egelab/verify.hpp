#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace egelab {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

enum class Tier { Quick, Full };

inline constexpr std::uint64_t kDefaultVerifySeed = 1;

/// Criterion ids in a tier: Quick holds the exact-arithmetic checks, Full holds all of them.
[[nodiscard]] std::vector<int> tier_criteria(Tier tier);

/// Runs one acceptance criterion (1..10). Monte Carlo criteria derive their streams from `seed`.
/// `scratch_dir` receives the artifacts compared by the determinism check.
[[nodiscard]] CriterionResult run_criterion(int id, std::uint64_t seed, const std::string& scratch_dir);

/// Runs the tier in id order, reporting each result through `on_result` as it completes.
std::vector<CriterionResult> run_suite(Tier tier, std::uint64_t seed, const std::string& scratch_dir,
                                       const std::function<void(const CriterionResult&)>& on_result = {});

/// "[PASS] 3 title (1.2 s): detail"
[[nodiscard]] std::string format_result(const CriterionResult& r);

}  // namespace egelab
