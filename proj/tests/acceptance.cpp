#include <cstdio>
#include <cstdlib>
#include <string>

#include "supergerbe/selftest.hpp"

using namespace supergerbe;

int main(int argc, char** argv) {
  Exec exec = Exec::from_env();
  int failed = 0;
  for (int id = 1; id <= acceptance_count(); ++id) {
    if (argc > 1 && std::atoi(argv[1]) != id) continue;
    CriterionResult r = run_acceptance(id, exec);
    std::printf("criterion %d: %s  %s  [%s, %.1f s]\n", r.id, r.ok ? "PASS" : "FAIL", r.title.c_str(),
                r.detail.c_str(), r.seconds);
    std::fflush(stdout);
    if (!r.ok) ++failed;
  }
  return failed ? 1 : 0;
}
