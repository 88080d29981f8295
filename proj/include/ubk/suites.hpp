#pragma once

// Seeded property suites over the whole library. Each suite returns a
// summary and, on failure, the first counterexample as JSON for replay.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ubk/rng.hpp"
#include "ubk/serialize.hpp"

namespace ubk {

struct SuiteConfig {
  std::size_t cases = 0;  // 0: the suite's default
  std::optional<std::uint64_t> seed;  // unset: 1, or 7 for the chain suites
};

struct SuiteResult {
  std::string name;
  bool pass = true;
  std::size_t cases = 0;
  std::size_t checks = 0;
  std::string detail;
  Json counterexample;  // null when passing
  double seconds = 0;
};

/// amalgam, quotient, l1sum, suppression, extension, universality,
/// backforth, epsilon, renorm, determinism
std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const SuiteConfig& config = {});

/// Random normalized space of dimension `dim` with suppression <= k. Ball
/// vertices are p/q with q <= max_den. Labels are prefix1, prefix2, ...
BasedSpace random_space(Rng& rng, std::size_t dim, std::size_t max_den, const Rational& k,
                        const std::string& prefix = "x");

}  // namespace ubk
