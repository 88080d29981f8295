#pragma once

// Increasing sequences of based spaces. Stage n+1 extends stage n: its label
// list starts with the labels of stage n and the restriction of its ball to
// them is exactly the ball of stage n, so every inclusion is the identity on
// labels. Labels first appearing in stage n are named "stage{n}:{k}".

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ubk/amalgam.hpp"

namespace ubk {

using LabelPairs = std::vector<std::pair<Label, Label>>;

/// How a stage was produced: the target space amalgamated with the previous
/// top, glued along `shared` (target label -> previous top label).
struct StepRecord {
  std::string kind;                          // "request" or "extension"
  std::optional<std::size_t> source_stage;   // requests only
  BasedSpace target;
  LabelPairs f;       // requests: source stage label -> target label
  LabelPairs shared;  // target label -> previous top label
  LabelPairs g;       // target label -> new stage label
};

struct Chain {
  Rational k_bound{1};
  std::vector<BasedSpace> stages;
  std::vector<StepRecord> log;  // log[n - 1] produced stages[n]

  const BasedSpace& top() const { return stages.back(); }
  std::size_t top_index() const { return stages.size() - 1; }
  BasedMorphism inclusion(std::size_t from, std::size_t to) const;
};

Chain trivial_chain(const Rational& k_bound = 1);

struct GrowResult {
  BasedMorphism g;  // target -> new top
  std::size_t stage = 0;
};

/// Amalgamates `target` with the top over the pairs in `shared`. Remaining
/// target labels are renamed to fresh stage labels. Exact duplicates of
/// existing generators are dropped. The new stage is verified (isometric
/// legs and suppression bound) before it is appended.
GrowResult grow_chain(Chain& chain, const BasedSpace& target, const LabelPairs& shared,
                      const std::string& kind, std::optional<std::size_t> source_stage, const LabelPairs& f,
                      const AmalgamOptions& options = {});

/// Re-checks the chain invariants: prefix labels, isometric inclusions of
/// consecutive stages, suppression bound, and g.f = inclusion for every
/// logged request. Returns an empty string when all hold.
std::string check_chain(const Chain& chain, const PolytopeLimits& limits = {});

}  // namespace ubk
