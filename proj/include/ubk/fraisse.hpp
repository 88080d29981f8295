#pragma once

// Bounded enumeration of rational K-based spaces and of the extension
// requests over a stage, and the chain builder that satisfies requests in a
// seeded fair order.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ubk/chain.hpp"

namespace ubk {

struct ComplexityBound {
  std::size_t max_dim = 3;
  std::size_t max_denominator = 4;
  std::size_t max_generators = 12;  // vertices of the ball, counting +- separately
};

struct ExtensionRequest {
  std::size_t source_stage = 0;
  BasedSpace target;
  BasedMorphism embedding;  // stage -> target, certified isometric
};

/// All spaces of dimension 1..max_dim, labels "x1", "x2", ..., whose ball
/// vertices have coordinates p/q with q <= max_denominator and which
/// validate at K. One representative per canonical form, in a fixed order.
std::vector<BasedSpace> enumerate_spaces(const ComplexityBound& bound, const Rational& k_bound,
                                         const SpaceLimits& limits = {});

/// Isometric label injections of `u` into each of `spaces`, one per orbit of
/// the automorphism group of the target.
std::vector<ExtensionRequest> enumerate_extensions(const BasedSpace& u, std::size_t source_stage,
                                                   const std::vector<BasedSpace>& spaces,
                                                   const PolytopeLimits& limits = {});
std::vector<ExtensionRequest> enumerate_extensions(const BasedSpace& u, const ComplexityBound& bound,
                                                   const Rational& k_bound, const SpaceLimits& limits = {});

/// Amalgamates the request target with the top over the source stage and
/// appends the result. Returns g: target -> new top with g.f = inclusion.
GrowResult fraisse_step(Chain& chain, const ExtensionRequest& request, const AmalgamOptions& options = {});

/// steps == 0 drains the queue.
Chain build_generic_chain(const ComplexityBound& bound, const Rational& k_bound, std::size_t steps,
                          std::uint64_t seed, const SpaceLimits& limits = {});

struct UniversalityResult {
  std::optional<BasedMorphism> extension;  // A -> top
  std::string reason;                      // why no extension was found
  bool exhausted = false;                  // search finished without hitting the budget
  std::size_t nodes = 0;
};

/// Looks for an isometric B-morphism A -> top extending f (Lambda -> a stage
/// of the chain). Logged targets isomorphic to A are tried first, then a
/// depth-first search over label injections within `budget` nodes.
UniversalityResult check_universality(const Chain& chain, const BasedSpace& a,
                                      const std::vector<Label>& lambda_labels, const BasedMorphism& f,
                                      std::size_t budget = 200000, const SpaceLimits& limits = {});

}  // namespace ubk
