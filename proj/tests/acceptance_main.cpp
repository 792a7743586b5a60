#include <cstdio>

#include "losr/accept.hpp"

int main() {
  auto results = losr::accept::run_all(1);
  for (const auto& r : results)
    std::printf("[%s] %-62s %6.1fs%s%s\n", r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.seconds, r.note.empty() ? "" : "  ",
                r.note.c_str());
  return losr::accept::all_pass(results) ? 0 : 1;
}
