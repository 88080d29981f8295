#include "ubk/polytope.hpp"

#include <algorithm>
#include <numeric>

namespace ubk {

SparseVector to_sparse(const RationalVector& v) {
  SparseVector s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) s.emplace_back(i, v[i]);
  return s;
}

RationalVector to_dense(const SparseVector& v, std::size_t dim) {
  RationalVector d = zeros(dim);
  for (const auto& [i, x] : v) d.at(i) = x;
  return d;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Gauge LP over an explicit generator list. Returns nullopt when x is not in
// the span (infeasible LP).
std::optional<Rational> gauge_lp(std::size_t dim, const std::vector<RationalVector>& gens,
                                 const RationalVector& x, RationalVector* functional,
                                 RationalVector* coefficients) {
  if (is_zero(x)) {
    if (functional) *functional = zeros(dim);
    if (coefficients) *coefficients = zeros(gens.size());
    return Rational(0);
  }
  std::size_t k = gens.size();
  LpProblem p;
  p.objective.assign(2 * k, Rational(1));
  p.constraints = RationalMatrix(dim, 2 * k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < dim; ++i) {
      p.constraints(i, 2 * j) = gens[j][i];
      p.constraints(i, 2 * j + 1) = -gens[j][i];
    }
  p.senses.assign(dim, Sense::Equal);
  p.rhs = x;
  p.bounds.assign(2 * k, VarBound::NonNegative);
  LpOutcome o = lp_solve(p);
  if (o.status != LpStatus::Optimal) return std::nullopt;
  if (functional) *functional = o.dual;
  if (coefficients) {
    coefficients->resize(k);
    for (std::size_t j = 0; j < k; ++j) (*coefficients)[j] = o.primal[2 * j] - o.primal[2 * j + 1];
  }
  return o.value;
}

RationalVector gather(const RationalVector& x, const std::vector<std::size_t>& coords) {
  RationalVector local(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) local[i] = x[coords[i]];
  return local;
}

}  // namespace

BlockBody::BlockBody(std::size_t dim, std::vector<RationalVector> gens)
    : dim_(dim), gens_(std::move(gens)) {
  spanning_ = gens_.empty() ? dim_ == 0 : rank(RationalMatrix::from_rows(gens_)) == dim_;
}

Rational BlockBody::gauge(const RationalVector& x) const { return gauge(x, nullptr, nullptr); }

Rational BlockBody::gauge(const RationalVector& x, RationalVector* functional,
                          RationalVector* coefficients) const {
  if (!spanning_) throw Error(ErrorKind::DegenerateBall, "generators do not span the block");
  auto g = gauge_lp(dim_, gens_, x, functional, coefficients);
  if (!g) throw Error(ErrorKind::DegenerateBall, "gauge LP infeasible");
  return *g;
}

Rational BlockBody::gauge_by_facets(const RationalVector& x) const {
  Rational best = 0;
  for (const auto& f : facets()) {
    Rational r = abs(dot(f.normal, x)) / f.offset;
    if (r > best) best = r;
  }
  return best;
}

const std::vector<Facet>& BlockBody::facets(const PolytopeLimits& limits) const {
  if (dim_ > limits.facet_dim_ceiling)
    throw Error(ErrorKind::CeilingExceeded, "facet enumeration in dimension " + std::to_string(dim_));
  if (!spanning_) throw Error(ErrorKind::DegenerateBall, "generators do not span the block");
  std::call_once(facets_once_, [&] { facets_ = facets_of_generators(dim_, gens_); });
  return facets_;
}

const ProjectionWitness& BlockBody::max_projection(const PolytopeLimits& limits) const {
  const auto& fs = facets(limits);
  std::call_once(projection_once_, [&] {
    ProjectionWitness best;
    for (const auto& f : fs) {
      for (std::size_t g = 0; g < gens_.size(); ++g) {
        Rational pos = 0, neg = 0;
        for (std::size_t j = 0; j < dim_; ++j) {
          Rational t = f.normal[j] * gens_[g][j];
          if (sgn(t) > 0) pos += t;
          else if (sgn(t) < 0) neg -= t;
        }
        bool use_pos = pos >= neg;
        Rational r = (use_pos ? pos : neg) / f.offset;
        if (r > best.norm) {
          best.norm = r;
          best.generator = g;
          best.subset.clear();
          for (std::size_t j = 0; j < dim_; ++j) {
            int s = sgn(f.normal[j] * gens_[g][j]);
            if ((use_pos && s > 0) || (!use_pos && s < 0)) best.subset.push_back(j);
          }
        }
      }
    }
    projection_ = std::move(best);
  });
  return projection_;
}

std::optional<Rational> BlockBody::local_gauge_bound(const RationalVector& x) const {
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < dim_; ++i)
    if (sgn(x[i]) != 0) support.push_back(i);
  if (support.empty()) return Rational(0);
  std::vector<RationalVector> gens;
  for (const auto& g : gens_) {
    bool inside = true;
    for (std::size_t i = 0; i < dim_ && inside; ++i)
      if (sgn(g[i]) != 0 && sgn(x[i]) == 0) inside = false;
    if (!inside) continue;
    RationalVector v(support.size());
    for (std::size_t j = 0; j < support.size(); ++j) v[j] = g[support[j]];
    gens.push_back(std::move(v));
  }
  if (gens.empty() || rank(RationalMatrix::from_rows(gens)) < support.size()) return std::nullopt;
  RationalVector target(support.size());
  for (std::size_t j = 0; j < support.size(); ++j) target[j] = x[support[j]];
  return gauge_lp(support.size(), gens, target, nullptr, nullptr);
}

bool BlockBody::contains_fast(const RationalVector& x, const PolytopeLimits& limits) const {
  if (dim_ > limits.facet_dim_ceiling) {
    auto b = local_gauge_bound(x);
    if (b && *b <= 1) return true;
  }
  return gauge(x) <= 1;
}

bool BlockBody::one_suppression(const PolytopeLimits& limits) const {
  std::call_once(one_suppression_once_, [&] {
    one_suppression_ = true;
    for (const auto& g : gens_) {
      for (std::size_t j = 0; j < dim_ && one_suppression_; ++j) {
        if (sgn(g[j]) == 0) continue;
        RationalVector h = g;
        h[j] = 0;
        if (!is_zero(h) && !contains_fast(h, limits)) one_suppression_ = false;
      }
      if (!one_suppression_) break;
    }
  });
  return one_suppression_;
}

Polytope::Polytope(std::size_t dim, const std::vector<RationalVector>& generators) : dim_(dim) {
  UnionFind uf(dim);
  std::vector<SparseVector> sparse;
  sparse.reserve(generators.size());
  for (const auto& g : generators) {
    if (g.size() != dim) throw Error(ErrorKind::MalformedInput, "generator dimension mismatch");
    SparseVector s = to_sparse(g);
    if (s.empty()) continue;
    for (std::size_t k = 1; k < s.size(); ++k) uf.unite(s[0].first, s[k].first);
    sparse.push_back(std::move(s));
  }
  std::vector<std::vector<std::size_t>> coords_of(dim);
  for (std::size_t i = 0; i < dim; ++i) coords_of[uf.find(i)].push_back(i);
  std::vector<std::vector<const SparseVector*>> gens_of(dim);
  for (const auto& s : sparse) gens_of[uf.find(s.front().first)].push_back(&s);
  std::vector<std::size_t> local(dim);
  for (std::size_t root = 0; root < dim; ++root) {
    if (gens_of[root].empty()) continue;
    const auto& coords = coords_of[root];
    for (std::size_t i = 0; i < coords.size(); ++i) local[coords[i]] = i;
    std::vector<RationalVector> lg;
    lg.reserve(gens_of[root].size());
    for (const SparseVector* s : gens_of[root]) {
      RationalVector v = zeros(coords.size());
      for (const auto& [i, x] : *s) v[local[i]] = x;
      lg.push_back(std::move(v));
    }
    blocks_.push_back({coords, std::make_shared<const BlockBody>(coords.size(), std::move(lg))});
  }
  finalize();
}

Polytope Polytope::from_sparse(std::size_t dim, const std::vector<SparseVector>& generators) {
  // Group through a throwaway dense representation per component only.
  UnionFind uf(dim);
  for (const auto& s : generators) {
    for (const auto& [i, x] : s)
      if (i >= dim) throw Error(ErrorKind::MalformedInput, "sparse generator index out of range");
    for (std::size_t k = 1; k < s.size(); ++k) uf.unite(s[0].first, s[k].first);
  }
  std::vector<std::vector<std::size_t>> coords_of(dim);
  for (std::size_t i = 0; i < dim; ++i) coords_of[uf.find(i)].push_back(i);
  std::vector<std::vector<const SparseVector*>> gens_of(dim);
  for (const auto& s : generators)
    if (!s.empty()) gens_of[uf.find(s.front().first)].push_back(&s);
  std::vector<std::size_t> local(dim);
  std::vector<Block> blocks;
  for (std::size_t root = 0; root < dim; ++root) {
    if (gens_of[root].empty()) continue;
    const auto& coords = coords_of[root];
    for (std::size_t i = 0; i < coords.size(); ++i) local[coords[i]] = i;
    std::vector<RationalVector> lg;
    for (const SparseVector* s : gens_of[root]) {
      RationalVector v = zeros(coords.size());
      for (const auto& [i, x] : *s) v[local[i]] = x;
      lg.push_back(std::move(v));
    }
    blocks.push_back({coords, std::make_shared<const BlockBody>(coords.size(), std::move(lg))});
  }
  return from_blocks(dim, std::move(blocks));
}

Polytope Polytope::from_blocks(std::size_t dim, std::vector<Block> blocks) {
  Polytope p;
  p.dim_ = dim;
  std::vector<bool> seen(dim, false);
  for (const auto& b : blocks) {
    if (b.coords.size() != b.body->dim())
      throw Error(ErrorKind::MalformedInput, "block coordinate count mismatch");
    for (auto c : b.coords) {
      if (c >= dim || seen[c]) throw Error(ErrorKind::MalformedInput, "overlapping or out-of-range block");
      seen[c] = true;
    }
  }
  p.blocks_ = std::move(blocks);
  p.finalize();
  return p;
}

void Polytope::finalize() {
  std::sort(blocks_.begin(), blocks_.end(), [](const Block& a, const Block& b) {
    return *std::min_element(a.coords.begin(), a.coords.end()) <
           *std::min_element(b.coords.begin(), b.coords.end());
  });
  owner_.assign(dim_, npos);
  local_.assign(dim_, 0);
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    for (std::size_t i = 0; i < blocks_[k].coords.size(); ++i) {
      owner_[blocks_[k].coords[i]] = k;
      local_[blocks_[k].coords[i]] = i;
    }
}

std::size_t Polytope::generator_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks_) n += b.body->generators().size();
  return n;
}

std::vector<RationalVector> Polytope::generators() const {
  std::vector<RationalVector> out;
  out.reserve(generator_count());
  for (const auto& b : blocks_)
    for (const auto& g : b.body->generators()) {
      RationalVector v = zeros(dim_);
      for (std::size_t i = 0; i < b.coords.size(); ++i) v[b.coords[i]] = g[i];
      out.push_back(std::move(v));
    }
  return out;
}

std::vector<SparseVector> Polytope::sparse_generators() const {
  std::vector<SparseVector> out;
  out.reserve(generator_count());
  for (const auto& b : blocks_)
    for (const auto& g : b.body->generators()) {
      SparseVector s;
      for (std::size_t i = 0; i < b.coords.size(); ++i)
        if (sgn(g[i]) != 0) s.emplace_back(b.coords[i], g[i]);
      std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      out.push_back(std::move(s));
    }
  return out;
}

bool Polytope::full_dimensional() const {
  std::size_t covered = 0;
  for (const auto& b : blocks_) {
    if (!b.body->spanning()) return false;
    covered += b.coords.size();
  }
  return covered == dim_;
}

void Polytope::require_full_dimensional() const {
  if (!full_dimensional())
    throw Error(ErrorKind::DegenerateBall, "generators do not span R^" + std::to_string(dim_));
}

Rational Polytope::gauge(const RationalVector& x) const {
  if (x.size() != dim_) throw Error(ErrorKind::MalformedInput, "gauge: dimension mismatch");
  require_full_dimensional();
  Rational total = 0;
  for (const auto& b : blocks_) {
    RationalVector local = gather(x, b.coords);
    if (!is_zero(local)) total += b.body->gauge(local);
  }
  return total;
}

Rational Polytope::gauge(const SparseVector& x) const {
  require_full_dimensional();
  std::vector<std::size_t> touched;
  for (const auto& [coord, value] : x) {
    if (coord >= dim_) throw Error(ErrorKind::MalformedInput, "gauge: index out of range");
    if (sgn(value) != 0) touched.push_back(owner_[coord]);
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  Rational total = 0;
  for (auto k : touched) {
    const auto& b = blocks_[k];
    RationalVector local = zeros(b.coords.size());
    for (const auto& [c, v] : x)
      if (owner_[c] == k) local[local_[c]] = v;
    total += b.body->gauge(local);
  }
  return total;
}

std::optional<Rational> Polytope::local_gauge_bound(const SparseVector& x) const {
  Rational total = 0;
  for (const auto& [k, local] : split_by_block(x)) {
    auto b = blocks_[k].body->local_gauge_bound(local);
    if (!b) return std::nullopt;
    total += *b;
  }
  return total;
}

bool Polytope::contains_fast(const SparseVector& x, const PolytopeLimits& limits) const {
  require_full_dimensional();
  auto parts = split_by_block(x);
  if (parts.size() == 1) return blocks_[parts[0].first].body->contains_fast(parts[0].second, limits);
  Rational total = 0;
  for (const auto& [k, local] : parts) {
    const auto& body = *blocks_[k].body;
    std::optional<Rational> v;
    if (body.dim() > limits.facet_dim_ceiling) v = body.local_gauge_bound(local);
    total += v ? *v : body.gauge(local);
    if (total > 1) break;
  }
  if (total <= 1) return true;
  return gauge(x) <= 1;
}

std::vector<std::pair<std::size_t, RationalVector>> Polytope::split_by_block(const SparseVector& x) const {
  std::vector<std::pair<std::size_t, RationalVector>> parts;
  for (const auto& [c, v] : x) {
    if (c >= dim_) throw Error(ErrorKind::MalformedInput, "index out of range");
    if (sgn(v) == 0) continue;
    std::size_t k = owner_[c];
    if (k == npos) throw Error(ErrorKind::DegenerateBall, "coordinate outside every block");
    auto it = std::find_if(parts.begin(), parts.end(), [&](const auto& p) { return p.first == k; });
    if (it == parts.end()) {
      parts.emplace_back(k, zeros(blocks_[k].coords.size()));
      it = parts.end() - 1;
    }
    it->second[local_[c]] = v;
  }
  return parts;
}

Rational Polytope::gauge_certified(const RationalVector& x, RationalVector& functional) const {
  if (x.size() != dim_) throw Error(ErrorKind::MalformedInput, "gauge: dimension mismatch");
  require_full_dimensional();
  functional = zeros(dim_);
  Rational total = 0;
  for (const auto& b : blocks_) {
    RationalVector local = gather(x, b.coords);
    if (is_zero(local)) continue;
    RationalVector y;
    total += b.body->gauge(local, &y, nullptr);
    for (std::size_t i = 0; i < b.coords.size(); ++i) functional[b.coords[i]] = y[i];
  }
  return total;
}

Rational Polytope::gauge_by_facets(const RationalVector& x) const {
  if (x.size() != dim_) throw Error(ErrorKind::MalformedInput, "gauge: dimension mismatch");
  require_full_dimensional();
  Rational total = 0;
  for (const auto& b : blocks_) {
    RationalVector local = gather(x, b.coords);
    if (!is_zero(local)) total += b.body->gauge_by_facets(local);
  }
  return total;
}

bool Polytope::contains(const RationalVector& x) const { return gauge(x) <= 1; }

Rational Polytope::dual_gauge(const RationalVector& functional) const {
  if (functional.size() != dim_) throw Error(ErrorKind::MalformedInput, "dual gauge: dimension mismatch");
  require_full_dimensional();
  Rational best = 0;
  for (const auto& b : blocks_) {
    RationalVector local = gather(functional, b.coords);
    for (const auto& g : b.body->generators()) {
      Rational v = abs(dot(local, g));
      if (v > best) best = v;
    }
  }
  return best;
}

std::vector<Facet> Polytope::facets(const PolytopeLimits& limits) const {
  require_full_dimensional();
  if (dim_ > limits.facet_dim_ceiling)
    throw Error(ErrorKind::CeilingExceeded, "facet enumeration in dimension " + std::to_string(dim_));
  if (blocks_.size() == 1 && blocks_[0].coords.size() == dim_) {
    const auto& b = blocks_[0];
    std::vector<Facet> out;
    for (const auto& f : b.body->facets(limits)) {
      RationalVector n = zeros(dim_);
      for (std::size_t i = 0; i < dim_; ++i) n[b.coords[i]] = f.normal[i];
      out.push_back({sign_normalized(n), f.offset});
    }
    std::sort(out.begin(), out.end(),
              [](const Facet& a, const Facet& c) { return lex_compare(a.normal, c.normal) < 0; });
    return out;
  }
  return facets_of_generators(dim_, generators());
}

Polytope Polytope::restrict_to(const std::vector<std::size_t>& coords,
                               const PolytopeLimits& limits) const {
  require_full_dimensional();
  std::vector<std::size_t> pos(dim_, dim_);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] >= dim_ || pos[coords[i]] != dim_)
      throw Error(ErrorKind::MalformedInput, "restriction coordinates out of range or repeated");
    pos[coords[i]] = i;
  }
  std::vector<Block> out;
  for (const auto& b : blocks_) {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < b.coords.size(); ++i)
      if (pos[b.coords[i]] != dim_) kept.push_back(i);
    if (kept.empty()) continue;
    if (kept.size() == b.coords.size()) {
      std::vector<std::size_t> c(b.coords.size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = pos[b.coords[i]];
      out.push_back({std::move(c), b.body});
      continue;
    }
    if (b.coords.size() > limits.facet_dim_ceiling) {
      // Too large for facets: use the projection when it provably lies in B.
      std::vector<std::size_t> sub;
      for (auto i : kept) sub.push_back(b.coords[i]);
      Polytope proj = project_to(sub);
      for (const auto& g : proj.sparse_generators()) {
        SparseVector lifted;
        for (const auto& [c, v] : g) lifted.emplace_back(sub[c], v);
        std::sort(lifted.begin(), lifted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        if (!contains_fast(lifted, limits))
          throw Error(ErrorKind::CeilingExceeded,
                      "section of a block of dimension " + std::to_string(b.coords.size()));
      }
      for (const auto& sb : proj.blocks_) {
        std::vector<std::size_t> c(sb.coords.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = pos[sub[sb.coords[i]]];
        out.push_back({std::move(c), sb.body});
      }
      continue;
    }
    std::vector<Facet> slabs;
    for (const auto& f : b.body->facets(limits)) slabs.push_back({gather(f.normal, kept), f.offset});
    std::vector<RationalVector> verts = symmetric_vertices(kept.size(), slabs);
    Polytope section(kept.size(), verts);
    for (const auto& sb : section.blocks_) {
      std::vector<std::size_t> c(sb.coords.size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = pos[b.coords[kept[sb.coords[i]]]];
      out.push_back({std::move(c), sb.body});
    }
  }
  return from_blocks(coords.size(), std::move(out));
}

Polytope Polytope::embed(const std::vector<std::size_t>& target, std::size_t new_dim) const {
  if (target.size() != dim_) throw Error(ErrorKind::MalformedInput, "embedding map has wrong length");
  std::vector<Block> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) {
    std::vector<std::size_t> c(b.coords.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = target[b.coords[i]];
    out.push_back({std::move(c), b.body});
  }
  return from_blocks(new_dim, std::move(out));
}

Polytope Polytope::scaled(const Rational& s) const {
  if (sgn(s) == 0) throw Error(ErrorKind::DegenerateBall, "scaling a ball by zero");
  std::vector<Block> out;
  for (const auto& b : blocks_) {
    std::vector<RationalVector> g;
    for (const auto& v : b.body->generators()) g.push_back(scale(s, v));
    out.push_back({b.coords, std::make_shared<const BlockBody>(b.coords.size(), std::move(g))});
  }
  return from_blocks(dim_, std::move(out));
}

Polytope Polytope::pruned() const {
  std::vector<Block> out;
  for (const auto& b : blocks_) {
    const auto& gens = b.body->generators();
    std::vector<bool> alive(gens.size(), true);
    bool changed = false;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::vector<RationalVector> rest;
      for (std::size_t j = 0; j < gens.size(); ++j)
        if (j != i && alive[j]) rest.push_back(gens[j]);
      if (rest.empty() || rank(RationalMatrix::from_rows(rest)) < b.coords.size()) continue;
      auto g = gauge_lp(b.coords.size(), rest, gens[i], nullptr, nullptr);
      if (g && *g <= 1) {
        alive[i] = false;
        changed = true;
      }
    }
    if (!changed) {
      out.push_back(b);
      continue;
    }
    std::vector<RationalVector> kept;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (alive[i]) kept.push_back(gens[i]);
    out.push_back({b.coords, std::make_shared<const BlockBody>(b.coords.size(), std::move(kept))});
  }
  return from_blocks(dim_, std::move(out));
}

std::optional<RationalVector> Polytope::first_generator_outside(const Polytope& outer) const {
  if (outer.dim_ != dim_) throw Error(ErrorKind::MalformedInput, "comparing balls of different dimension");
  for (const auto& b : blocks_) {
    bool shared = std::any_of(outer.blocks_.begin(), outer.blocks_.end(), [&](const Block& o) {
      return o.body == b.body && o.coords == b.coords;
    });
    if (shared) continue;
    for (const auto& g : b.body->generators()) {
      SparseVector s;
      for (std::size_t i = 0; i < b.coords.size(); ++i)
        if (sgn(g[i]) != 0) s.emplace_back(b.coords[i], g[i]);
      if (outer.gauge(s) > 1) {
        RationalVector v = zeros(dim_);
        for (const auto& [i, x] : s) v[i] = x;
        return v;
      }
    }
  }
  return std::nullopt;
}

bool Polytope::same_body(const Polytope& other) const {
  if (dim_ != other.dim_) return false;
  return !first_generator_outside(other) && !other.first_generator_outside(*this);
}

Polytope::ProjectionBound Polytope::max_projection(const PolytopeLimits& limits) const {
  require_full_dimensional();
  ProjectionBound best;
  for (const auto& b : blocks_) {
    const auto& w = b.body->max_projection(limits);
    if (w.norm > best.norm) {
      best.norm = w.norm;
      best.subset.clear();
      for (auto j : w.subset) best.subset.push_back(b.coords[j]);
      std::sort(best.subset.begin(), best.subset.end());
      best.generator = zeros(dim_);
      const auto& g = b.body->generators()[w.generator];
      for (std::size_t i = 0; i < b.coords.size(); ++i) best.generator[b.coords[i]] = g[i];
    }
  }
  return best;
}

bool Polytope::operator==(const Polytope& other) const {
  return dim_ == other.dim_ && generators() == other.generators();
}

Polytope Polytope::project_to(const std::vector<std::size_t>& coords) const {
  std::vector<std::size_t> pos(dim_, npos);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] >= dim_ || pos[coords[i]] != npos)
      throw Error(ErrorKind::MalformedInput, "projection coordinates out of range or repeated");
    pos[coords[i]] = i;
  }
  std::vector<SparseVector> gens;
  for (const auto& g : sparse_generators_touching(coords)) {
    SparseVector p;
    for (const auto& [c, v] : g)
      if (pos[c] != npos) p.emplace_back(pos[c], v);
    if (p.empty()) continue;
    std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    gens.push_back(std::move(p));
  }
  return from_sparse(coords.size(), gens);
}

std::vector<SparseVector> Polytope::sparse_generators_touching(const std::vector<std::size_t>& coords) const {
  std::vector<std::size_t> touched;
  for (auto c : coords)
    if (c < dim_ && owner_[c] != npos) touched.push_back(owner_[c]);
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  std::vector<SparseVector> out;
  for (auto k : touched) {
    const auto& b = blocks_[k];
    for (const auto& g : b.body->generators()) {
      SparseVector s;
      for (std::size_t i = 0; i < b.coords.size(); ++i)
        if (sgn(g[i]) != 0) s.emplace_back(b.coords[i], g[i]);
      std::sort(s.begin(), s.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      out.push_back(std::move(s));
    }
  }
  return out;
}

Rational gauge(const Polytope& ball, const RationalVector& x) { return ball.gauge(x); }

bool contains(const Polytope& ball, const RationalVector& x) { return ball.contains(x); }

Polytope linear_image(const Polytope& ball, const RationalMatrix& m) {
  if (m.cols() != ball.dim()) throw Error(ErrorKind::MalformedInput, "linear image: column count mismatch");
  std::vector<RationalVector> imgs;
  for (const auto& g : ball.generators()) imgs.push_back(m.apply(g));
  return Polytope(m.rows(), imgs);
}

Polytope hull_union(const Polytope& a, const Polytope& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::MalformedInput, "hull union: dimension mismatch");
  std::vector<const Block*> items;
  for (const auto& x : a.blocks()) items.push_back(&x);
  for (const auto& x : b.blocks()) items.push_back(&x);
  UnionFind uf(items.size());
  std::vector<std::size_t> owner(a.dim(), items.size());
  for (std::size_t k = 0; k < items.size(); ++k)
    for (auto c : items[k]->coords) {
      if (owner[c] == items.size()) owner[c] = k;
      else uf.unite(owner[c], k);
    }
  std::vector<std::vector<std::size_t>> groups(items.size());
  for (std::size_t k = 0; k < items.size(); ++k) groups[uf.find(k)].push_back(k);

  std::vector<Block> out;
  for (const auto& grp : groups) {
    if (grp.empty()) continue;
    if (grp.size() == 1) {
      out.push_back(*items[grp[0]]);
      continue;
    }
    std::vector<std::size_t> coords;
    for (auto k : grp) coords.insert(coords.end(), items[k]->coords.begin(), items[k]->coords.end());
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    std::vector<RationalVector> gens;
    for (auto k : grp) {
      const Block& blk = *items[k];
      std::vector<std::size_t> local(blk.coords.size());
      for (std::size_t i = 0; i < local.size(); ++i)
        local[i] = static_cast<std::size_t>(std::lower_bound(coords.begin(), coords.end(), blk.coords[i]) -
                                            coords.begin());
      for (const auto& g : blk.body->generators()) {
        RationalVector v = zeros(coords.size());
        for (std::size_t i = 0; i < local.size(); ++i) v[local[i]] = g[i];
        gens.push_back(std::move(v));
      }
    }
    out.push_back({coords, std::make_shared<const BlockBody>(coords.size(), std::move(gens))});
  }
  return Polytope::from_blocks(a.dim(), std::move(out));
}

Polytope v_to_h(const Polytope& ball, const PolytopeLimits& limits) {
  ball.require_full_dimensional();
  if (ball.dim() > limits.facet_dim_ceiling)
    throw Error(ErrorKind::CeilingExceeded, "facet enumeration in dimension " + std::to_string(ball.dim()));
  for (const auto& b : ball.blocks()) b.body->facets(limits);
  return ball;
}

Polytope restrict_to_coordinate_subspace(const Polytope& ball, const std::vector<std::size_t>& coords,
                                         const PolytopeLimits& limits) {
  return ball.restrict_to(coords, limits);
}

Polytope prune_redundant(const Polytope& ball) { return ball.pruned(); }

Rational dual_gauge(const Polytope& ball, const RationalVector& functional) {
  return ball.dual_gauge(functional);
}

}  // namespace ubk
