// SPDX-License-Identifier: Apache-2.0
//
// Prints one line per acceptance criterion and exits nonzero if any failed.

#include <cstdio>

#include "nvcool/nvcool.h"

static void print_line(int, int, const char* line, void*) { std::printf("%s\n", line); }

int main() {
  std::printf("nvcool %s acceptance\n", nvc_version());
  int failures = 0;
  if (nvc_run_acceptance(nullptr, print_line, nullptr, &failures) != NVC_OK) {
    std::fprintf(stderr, "acceptance run aborted: %s\n", nvc_last_error());
    return 2;
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
