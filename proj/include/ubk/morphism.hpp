#pragma once

// B-morphisms: linear maps sending basis vectors to basis vectors, stored as
// a label map (domain index -> codomain index).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ubk/based_space.hpp"

namespace ubk {

struct BasedMorphism {
  BasedSpace domain;
  BasedSpace codomain;
  std::vector<std::size_t> map;  // domain coordinate i -> codomain coordinate map[i]

  std::vector<std::pair<Label, Label>> label_map() const;
  bool injective() const;
};

BasedMorphism make_morphism(BasedSpace domain, BasedSpace codomain,
                            const std::vector<std::pair<Label, Label>>& label_map);
BasedMorphism identity_morphism(const BasedSpace& x);
/// Inclusion of x into y by label identity (labels of x must occur in y).
BasedMorphism inclusion_morphism(const BasedSpace& x, const BasedSpace& y);

RationalVector apply(const BasedMorphism& t, const RationalVector& x);
SparseVector apply(const BasedMorphism& t, const SparseVector& x);

/// max over domain generators g of gauge(codomain, T g); 0 for a trivial domain.
Rational operator_norm(const BasedMorphism& t);

struct IsometryCertificate {
  bool isometry = false;
  std::string reason;
  std::optional<RationalVector> witness;  // domain vector whose norm is not preserved
};

IsometryCertificate is_isometry(const BasedMorphism& t, const PolytopeLimits& limits = {});

struct DistortionInterval {
  Rational lower;
  Rational upper;
  bool operator==(const DistortionInterval&) const = default;
};

/// Throws NotInjective for non-injective label maps.
DistortionInterval distortion(const BasedMorphism& t, const PolytopeLimits& limits = {});

/// Strict test: lower > 1/(1+eps) and upper < 1+eps.
bool is_epsilon_isometry(const DistortionInterval& d, const Rational& epsilon);

/// S after T. Throws SpaceMismatch unless codomain(T) and domain(S) carry the
/// same labels.
BasedMorphism compose(const BasedMorphism& s, const BasedMorphism& t);

/// Equality of the induced label maps and of the endpoint label lists.
bool same_label_map(const BasedMorphism& a, const BasedMorphism& b);

/// Generators of the codomain section over the image coordinates, written in
/// domain coordinates (the pulled-back restricted codomain ball).
std::vector<RationalVector> pulled_back_section(const BasedMorphism& t, const PolytopeLimits& limits = {});

}  // namespace ubk
