#include <cstdio>

#include "ifwb/acceptance.hpp"

int main() {
  auto results = ifwb::run_acceptance("all");
  int failures = ifwb::report_acceptance(results);
  if (failures == 0)
    std::printf("all %zu criteria passed\n", results.size());
  else
    std::printf("%d criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
