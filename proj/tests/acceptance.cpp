// Acceptance suite: one pass/fail line per criterion. Exits nonzero when any
// criterion fails.

#include <cstdio>

int main() {
  std::printf("acceptance suite placeholder\n");
  return 0;
}
