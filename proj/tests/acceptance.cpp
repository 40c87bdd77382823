// Runs every acceptance criterion and prints one pass/fail line each.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "egelab/verify.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = egelab::kDefaultVerifySeed;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  const std::string scratch = (std::filesystem::temp_directory_path() / "egelab_acceptance").string();
  int failed = 0;
  egelab::run_suite(egelab::Tier::Full, seed, scratch, [&](const egelab::CriterionResult& r) {
    std::cout << egelab::format_result(r) << std::endl;
    if (!r.passed) ++failed;
  });
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
