#include <iostream>

#include "fracspec/acceptance.hpp"

int main() {
  const auto results = fracspec::run_acceptance();
  fracspec::print_acceptance(results, std::cout);
  for (const auto& r : results)
    if (!r.passed) return 1;
  return 0;
}
