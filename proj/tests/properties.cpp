#include <cstdio>

#include "property_suites.hpp"

int main() {
  const int failed = property_suites::run_all();
  std::printf("%s\n", failed == 0 ? "all properties hold" : "some properties FAILED");
  return failed == 0 ? 0 : 1;
}
