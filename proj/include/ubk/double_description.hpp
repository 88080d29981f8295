#pragma once

#include <vector>

#include "ubk/exactnum.hpp"

namespace ubk {

/// A symmetric slab pair |<normal, x>| <= offset.
struct Facet {
  RationalVector normal;
  Rational offset;

  bool operator==(const Facet&) const = default;
};

/// Vertices of the bounded, full-dimensional, centrally symmetric polytope
/// {x : |<a_i, x>| <= b_i for all i}, one representative per +/- pair,
/// sign-normalized and sorted lexicographically.
///
/// Double description on the homogenized cone {(x, t) : t >= 0,
/// b_i t -/+ <a_i, x> >= 0}; constraints are inserted in input order and the
/// adjacency test is combinatorial. Throws DegenerateBall if the region is
/// unbounded or lower-dimensional.
std::vector<RationalVector> symmetric_vertices(std::size_t dim, const std::vector<Facet>& slabs);

/// Facets of conv(+/- generators) through the polar: each vertex y of
/// {y : |<g, y>| <= 1} is the facet <y, x> <= 1. Normals are returned as
/// primitive integer vectors with the matching offset.
std::vector<Facet> facets_of_generators(std::size_t dim, const std::vector<RationalVector>& gens);

}  // namespace ubk
