#pragma once

// Rational approximation and extension of almost-isometric embeddings.

#include <optional>
#include <string>
#include <vector>

#include "ubk/chain.hpp"

namespace ubk {

struct SandwichParams {
  Rational delta;
  Rational delta_prime;
  Rational epsilon;
};

/// Least k >= 0 with (floor(t 2^k) + 2) / 2^k < epsilon; returns
/// delta = (floor(t 2^k) + 1) / 2^k and delta' = delta + 2^-k. Needs 0 <= t < epsilon.
SandwichParams dyadic_params(const Rational& t, const Rational& epsilon);

/// With t = max over vertices of the two exact gauge ratios minus 1, picks
/// the least k >= 0 with (floor(t 2^k) + 2) / 2^k < epsilon and returns
/// delta = (floor(t 2^k) + 1) / 2^k, delta' = (floor(t 2^k) + 2) / 2^k.
/// Throws NotEpsilonPerturbed unless both ratios are < 1 + epsilon.
SandwichParams choose_delta(const Polytope& lambda_prime_ball, const Polytope& lambda_ball,
                            const Rational& epsilon);

/// Rational with the least denominator strictly between lo and hi (0 <= lo < hi).
Rational simplest_between(const Rational& lo, const Rational& hi);

/// conv of pr_F(B) over all coordinate subsets F, pruned.
Polytope projection_closure(const Polytope& ball, std::size_t ceiling = 16);

struct Sandwich {
  Polytope p;
  Rational scale;
};

/// P = closure(s B) with s the simplest rational in (1/(1+delta'), 1/(1+delta)).
/// Throws WidenBound when that s has denominator above denominator_bound.
Sandwich rational_sandwich(const Polytope& ball, const SandwichParams& params,
                           std::size_t denominator_bound = 1024);

struct ExtensionReport {
  bool section_equal = false;     // B'_A restricted to Lambda equals B'_Lambda
  bool basis_norms_one = false;   // gauge'(e_b) = 1 with a dual certificate
  Rational suppression = 0;       // suppression constant of A'
  Rational upper_ratio = 0;       // max gauge' over vertices of B_A
  Rational lower_ratio = 0;       // max gauge_A over vertices of B'_A
  std::string variant;
};

struct ExtensionResult {
  BasedSpace a_prime;
  Polytope lambda_prime_ball;
  Polytope p;
  Rational scale;
  SandwichParams params;
  ExtensionReport report;
};

/// B'_A = conv(B'_Lambda u {+-e_b} u P). `lambda_prime_ball` is given in the
/// coordinates of `lambda_labels`, in that order. Every obligation is checked
/// exactly; a failure throws ConstructionInvariantViolated.
ExtensionResult extension_ball(const BasedSpace& a, const std::vector<Label>& lambda_labels,
                               const Polytope& lambda_prime_ball, const SandwichParams& params,
                               std::size_t denominator_bound = 1024, const PolytopeLimits& limits = {});

/// Ball of a -> ||f(a)|| on the domain of f.
Polytope pullback_norm(const BasedMorphism& f, const PolytopeLimits& limits = {});

struct EpsilonExtension {
  BasedMorphism morphism;  // A -> new top of the chain
  DistortionInterval distortion;
  bool exact = false;      // f was an isometry, A itself was amalgamated
  std::optional<SandwichParams> params;
  std::size_t stage = 0;
};

/// f maps the Lambda-subspace of A into some stage of `chain` (labels of that
/// stage are labels of the top). Grows the chain by one stage.
EpsilonExtension extend_epsilon_isometry(const BasedSpace& a, const std::vector<Label>& lambda_labels,
                                         const BasedMorphism& f, Chain& chain, const Rational& epsilon,
                                         const PolytopeLimits& limits = {});

}  // namespace ubk
