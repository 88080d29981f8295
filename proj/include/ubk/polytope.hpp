#pragma once

// Centrally symmetric rational polytopes B = conv(+/- generators), used as
// unit balls of polyhedral norms.
//
// Storage is block-decomposed: coordinates are grouped into the connected
// components of the "appear together in some generator" relation. B is the
// l1-sum of its blocks, so the gauge is the sum of block gauges, sections
// and coordinate projections act blockwise, and the dual norm is the max over
// blocks. Blocks share an immutable body (local generators plus lazily
// computed facet and suppression caches) through shared_ptr, so relabeling,
// embedding into larger spaces, and unions that leave a block untouched never
// recompute anything.

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "ubk/double_description.hpp"
#include "ubk/exactnum.hpp"
#include "ubk/lp.hpp"

namespace ubk {

struct PolytopeLimits {
  std::size_t facet_dim_ceiling = 8;  // largest block/ball handed to double description
};

/// Sparse coordinate list (index, value), sorted by index, no zero values.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

SparseVector to_sparse(const RationalVector& v);
RationalVector to_dense(const SparseVector& v, std::size_t dim);

/// Witness of the largest coordinate-projection norm inside one body.
struct ProjectionWitness {
  Rational norm = 0;
  std::vector<std::size_t> subset;  // local coordinates of the body
  std::size_t generator = 0;        // local generator index
};

/// Immutable generator set of one block in local coordinates.
class BlockBody {
 public:
  BlockBody(std::size_t dim, std::vector<RationalVector> gens);

  std::size_t dim() const { return dim_; }
  const std::vector<RationalVector>& generators() const { return gens_; }
  bool spanning() const { return spanning_; }

  Rational gauge(const RationalVector& x) const;
  /// Gauge with the LP's dual solution: a functional y with |<y, g>| <= 1 for
  /// every generator and <y, x> = gauge(x).
  Rational gauge(const RationalVector& x, RationalVector* functional,
                 RationalVector* coefficients) const;
  Rational gauge_by_facets(const RationalVector& x) const;

  const std::vector<Facet>& facets(const PolytopeLimits& limits = {}) const;
  const ProjectionWitness& max_projection(const PolytopeLimits& limits = {}) const;

  /// Gauge over the generators supported inside supp(x); an upper bound.
  std::optional<Rational> local_gauge_bound(const RationalVector& x) const;
  /// gauge(x) <= 1, trying local_gauge_bound first above the facet ceiling.
  bool contains_fast(const RationalVector& x, const PolytopeLimits& limits = {}) const;
  /// Every single-coordinate deletion maps each generator into the body
  /// (certifies 1-suppression without facets). Cached.
  bool one_suppression(const PolytopeLimits& limits = {}) const;

 private:
  std::size_t dim_;
  std::vector<RationalVector> gens_;
  bool spanning_;
  mutable std::once_flag facets_once_;
  mutable std::vector<Facet> facets_;
  mutable std::once_flag projection_once_;
  mutable ProjectionWitness projection_;
  mutable std::once_flag one_suppression_once_;
  mutable bool one_suppression_ = false;
};

struct Block {
  std::vector<std::size_t> coords;  // global coordinate of each local coordinate
  std::shared_ptr<const BlockBody> body;
};

class Polytope {
 public:
  Polytope() = default;
  Polytope(std::size_t dim, const std::vector<RationalVector>& generators);
  static Polytope from_sparse(std::size_t dim, const std::vector<SparseVector>& generators);
  static Polytope from_blocks(std::size_t dim, std::vector<Block> blocks);

  std::size_t dim() const { return dim_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t generator_count() const;
  /// Dense generators in block order (blocks by smallest coordinate).
  std::vector<RationalVector> generators() const;
  std::vector<SparseVector> sparse_generators() const;

  bool full_dimensional() const;
  void require_full_dimensional() const;

  /// Minkowski functional by exact LP: min sum |lambda_i| with x = sum lambda_i g_i.
  Rational gauge(const RationalVector& x) const;
  Rational gauge(const SparseVector& x) const;
  /// Upper bound for gauge(x) using only the generators whose support lies
  /// inside supp(x); nullopt when those do not span supp(x).
  std::optional<Rational> local_gauge_bound(const SparseVector& x) const;
  /// contains() for sparse vectors. Blocks above the facet ceiling are first
  /// tried with local_gauge_bound before falling back to the full LP.
  bool contains_fast(const SparseVector& x, const PolytopeLimits& limits = {}) const;
  /// Same value plus the norming functional from the LP dual (global coords).
  Rational gauge_certified(const RationalVector& x, RationalVector& functional) const;
  /// max over facets of |<n_i, x>| / c_i, evaluated blockwise.
  Rational gauge_by_facets(const RationalVector& x) const;

  bool contains(const RationalVector& x) const;
  Rational dual_gauge(const RationalVector& functional) const;

  /// Full facet list of the whole ball (dim <= ceiling).
  std::vector<Facet> facets(const PolytopeLimits& limits = {}) const;

  /// Section B cap span(coords), expressed in the listed coordinate order.
  Polytope restrict_to(const std::vector<std::size_t>& coords,
                       const PolytopeLimits& limits = {}) const;

  /// conv(pr(generators)) onto the listed coordinates. Equals restrict_to()
  /// whenever pr(B) is contained in B.
  Polytope project_to(const std::vector<std::size_t>& coords) const;

  /// Index into blocks() of the block holding coordinate c, or npos.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t block_of(std::size_t c) const { return c < owner_.size() ? owner_[c] : npos; }
  std::size_t local_index(std::size_t c) const { return local_[c]; }

  /// Relabels coordinates: coordinate i goes to target[i] in a space of
  /// dimension new_dim (target must be injective).
  Polytope embed(const std::vector<std::size_t>& target, std::size_t new_dim) const;

  Polytope scaled(const Rational& s) const;
  Polytope pruned() const;

  /// Exact equality of bodies (not of generator lists).
  bool same_body(const Polytope& other) const;
  /// Some generator of this ball with gauge > 1 in `outer`, if any.
  std::optional<RationalVector> first_generator_outside(const Polytope& outer) const;

  /// max over coordinate subsets F of ||pr_F||, with the witness translated
  /// to global coordinates (subset, dense generator).
  struct ProjectionBound {
    Rational norm = 0;
    std::vector<std::size_t> subset;
    RationalVector generator;
  };
  ProjectionBound max_projection(const PolytopeLimits& limits = {}) const;

  bool operator==(const Polytope& other) const;

 private:
  void finalize();
  std::vector<SparseVector> sparse_generators_touching(const std::vector<std::size_t>& coords) const;
  std::vector<std::pair<std::size_t, RationalVector>> split_by_block(const SparseVector& x) const;

  std::size_t dim_ = 0;
  std::vector<Block> blocks_;
  std::vector<std::size_t> owner_;
  std::vector<std::size_t> local_;
};

Rational gauge(const Polytope& ball, const RationalVector& x);
bool contains(const Polytope& ball, const RationalVector& x);
Polytope linear_image(const Polytope& ball, const RationalMatrix& m);
Polytope hull_union(const Polytope& a, const Polytope& b);
Polytope v_to_h(const Polytope& ball, const PolytopeLimits& limits = {});
Polytope restrict_to_coordinate_subspace(const Polytope& ball, const std::vector<std::size_t>& coords,
                                         const PolytopeLimits& limits = {});
Polytope prune_redundant(const Polytope& ball);
Rational dual_gauge(const Polytope& ball, const RationalVector& functional);

}  // namespace ubk
