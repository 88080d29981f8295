#pragma once

// Finite-dimensional based spaces: an ordered list of basis labels, a
// polyhedral unit ball in basis coordinates, and a claimed suppression bound.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ubk/polytope.hpp"

namespace ubk {

using Label = std::string;

struct SpaceLimits {
  std::size_t suppression_ceiling = 16;  // brute-force subset enumeration
  std::size_t canonical_ceiling = 6;     // permutation orbit enumeration
  PolytopeLimits polytope;
};

struct BasedSpace {
  std::vector<Label> labels;
  Polytope ball;
  Rational k_bound{1};

  std::size_t dim() const { return labels.size(); }
  std::optional<std::size_t> find(const Label& label) const;
  std::size_t index_of(const Label& label) const;  // throws MalformedInput
  std::vector<std::size_t> indices_of(const std::vector<Label>& subset) const;

  bool operator==(const BasedSpace& other) const = default;
};

/// Checks shapes and label distinctness; does not validate the norm.
BasedSpace make_space(std::vector<Label> labels, Polytope ball, Rational k_bound);
BasedSpace trivial_space(const Rational& k_bound = 1);
BasedSpace l1_space(std::vector<Label> labels, const Rational& k_bound = 1);

struct SubsetWitness {
  Rational norm = 0;
  std::vector<Label> subset;
  RationalVector generator;  // ball generator attaining the norm
};

struct ValidationReport {
  bool valid = true;
  bool full_dimensional = true;
  std::vector<std::pair<Label, Rational>> unnormalized;  // label, gauge(e_b) != 1
  Rational suppression = 0;
  std::optional<SubsetWitness> suppression_violation;
};

/// Never throws for well-formed spaces, except CeilingExceeded when a block
/// is too large for facet enumeration and the 1-suppression certificate is
/// not available.
ValidationReport validate(const BasedSpace& space, const SpaceLimits& limits = {});

/// ||pr_F|| as the max of gauge(pr_F g) over ball generators.
Rational projection_norm(const BasedSpace& space, const std::vector<Label>& subset);

/// Brute force over all 2^n subsets with LP gauges.
SubsetWitness suppression_constant(const BasedSpace& space, const SpaceLimits& limits = {});

/// Same value from facets: for a facet |<n, x>| <= c and generator g the best
/// subset keeps either the coordinates where n_j g_j > 0 or those where it
/// is < 0. Evaluated blockwise.
SubsetWitness suppression_constant_fast(const BasedSpace& space, const SpaceLimits& limits = {});

/// True when every single-coordinate deletion maps each generator into the
/// ball, which certifies suppression constant <= 1 without facets.
bool certify_one_suppression(const BasedSpace& space, const SpaceLimits& limits = {});

BasedSpace based_subspace(const BasedSpace& space, const std::vector<Label>& subset,
                          const SpaceLimits& limits = {});

/// Ball {x : pr_F(x) in B for all F}, built from the pulled-back facets.
BasedSpace renorm_to_one_based(const BasedSpace& space, const SpaceLimits& limits = {});

struct CanonicalForm {
  std::size_t dim = 0;
  std::vector<RationalVector> generators;  // pruned, sign-normalized, sorted
  std::vector<std::size_t> order;          // canonical coordinate i = original order[i]

  bool operator==(const CanonicalForm& o) const { return dim == o.dim && generators == o.generators; }
  bool operator<(const CanonicalForm& o) const;
};

CanonicalForm canonical_form(const BasedSpace& space, const SpaceLimits& limits = {});
/// The space with labels and ball rearranged into canonical order.
BasedSpace canonical_space(const BasedSpace& space, const SpaceLimits& limits = {});
/// Coordinate permutations sigma (i -> sigma[i]) that map the ball onto itself.
std::vector<std::vector<std::size_t>> automorphisms(const BasedSpace& space,
                                                    const SpaceLimits& limits = {});

/// pr_F in coordinates: zeroes every coordinate outside `keep`.
RationalVector project(const RationalVector& x, const std::vector<bool>& keep);

}  // namespace ubk
