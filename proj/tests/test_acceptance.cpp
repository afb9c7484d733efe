// Acceptance criteria 1-8, one pass/fail line each. Tolerances and budgets
// are pinned in fblfas_tools/validation.hpp.
#include <iostream>

#include "fblfas_tools/validation.hpp"

int main() {
  fblfas::validation::Options options;
  int failed = 0;
  for (int id = 1; id <= 8; ++id) {
    const auto result = fblfas::validation::run_check(id, options);
    std::cout << fblfas::validation::format_line(result) << std::endl;
    if (!result.passed) ++failed;
  }
  std::cout << (8 - failed) << "/8 criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
