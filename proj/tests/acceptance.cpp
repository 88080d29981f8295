// Runs the property suites behind the acceptance criteria and prints one
// line per criterion. Exit status is nonzero when any criterion fails.

#include <cstdio>
#include <string>
#include <vector>

#include "ubk/suites.hpp"

namespace {

struct Criterion {
  int number;
  const char* suite;
  const char* title;
  double budget;  // seconds
};

const std::vector<Criterion> kCriteria{
    {1, "amalgam", "amalgamation of random triples", 90},
    {2, "quotient", "quotient norm equals the diagonal distance LP", 90},
    {3, "l1sum", "l1-sum gauge is additive", 60},
    {4, "suppression", "suppression constant, facet method vs brute force", 30},
    {5, "extension", "extension balls certify all four obligations", 120},
    {6, "universality", "bounded universality of the drained chain", 600},
    {7, "backforth", "back-and-forth between seeds 7 and 13", 300},
    {8, "epsilon", "distortion and near-isometric embedding", 60},
    {9, "renorm", "renorming to a 1-based norm", 120},
    {10, "determinism", "byte-identical reruns of chains and transcripts", 900},
};

}  // namespace

int main() {
  int failed = 0;
  for (const auto& c : kCriteria) {
    ubk::SuiteResult r;
    try {
      r = ubk::run_suite(c.suite);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    bool in_time = r.seconds <= c.budget;
    bool ok = r.pass && in_time;
    if (!ok) ++failed;
    std::string detail = r.detail;
    if (r.pass && !in_time) detail += "; over the time budget";
    std::printf("[%s] criterion %d: %s: %s (%.1f s of %.0f s)\n", ok ? "PASS" : "FAIL", c.number, c.title,
                detail.c_str(), r.seconds, c.budget);
    if (!r.pass && !r.counterexample.is_null())
      std::printf("  counterexample: %s\n", r.counterexample.dump().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(kCriteria.size()) - failed, kCriteria.size());
  return failed == 0 ? 0 : 1;
}
