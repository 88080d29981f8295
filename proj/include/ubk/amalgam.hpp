#pragma once

// Amalgamation of based spaces over a common subspace: W = (X (+)_1 Y) / Delta
// with Delta = {(z, -z)}. The ball of W is conv of both generator sets placed
// in W coordinates, where the shared coordinates coincide.

#include <string>
#include <vector>

#include "ubk/morphism.hpp"

namespace ubk {

struct AmalgamOptions {
  bool check_precondition = true;  // legs / shared subspaces are isometric
  bool verify = true;              // isometric legs, commutation, suppression
  PolytopeLimits limits;
};

struct AmalgamReport {
  bool i_prime_isometry = false;
  bool j_prime_isometry = false;
  bool commutes = false;
  Rational suppression = 0;
  Rational suppression_bound = 0;
  bool verified = false;
};

struct AmalgamResult {
  BasedSpace w;
  BasedMorphism i_prime;  // X -> W
  BasedMorphism j_prime;  // Y -> W
  AmalgamReport report;
};

/// Labels must be disjoint (LabelCollision otherwise).
BasedSpace l1_sum(const BasedSpace& x, const BasedSpace& y);

/// W has the labels of X followed by the labels of Y outside shared_y; the
/// k-th shared label of Y is identified with the k-th shared label of X. A
/// remaining Y label equal to an X label is a LabelCollision.
AmalgamResult quotient_by_diagonal(const BasedSpace& x, const BasedSpace& y,
                                   const std::vector<Label>& shared_x, const std::vector<Label>& shared_y,
                                   const AmalgamOptions& options = {});

/// Checks that i' and j' are isometries and that the suppression constant of
/// W is at most max(K_X, K_Y); throws ConstructionInvariantViolated otherwise.
void verify_amalgam(AmalgamResult& r, const BasedSpace& x, const BasedSpace& y, const PolytopeLimits& limits = {});

/// Pushout of the isometric legs j: Z -> X and i: Z -> Y. When verifying,
/// also checks i'.j == j'.i as label maps.
AmalgamResult amalgamate(const BasedSpace& z, const BasedSpace& x, const BasedSpace& y,
                         const BasedMorphism& j, const BasedMorphism& i, const AmalgamOptions& options = {});

/// min over z of gauge_X(x - z) + gauge_Y(z), with z ranging over the shared
/// coordinates, as one LP (the distance from (x, 0) to the diagonal).
Rational quotient_norm_oracle(const BasedSpace& x_space, const BasedSpace& y_space,
                              const std::vector<Label>& shared_x, const std::vector<Label>& shared_y,
                              const RationalVector& x);

}  // namespace ubk
