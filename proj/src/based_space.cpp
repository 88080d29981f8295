#include "ubk/based_space.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

namespace ubk {

std::optional<std::size_t> BasedSpace::find(const Label& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

std::size_t BasedSpace::index_of(const Label& label) const {
  auto i = find(label);
  if (!i) throw Error(ErrorKind::MalformedInput, "unknown label '" + label + "'");
  return *i;
}

std::vector<std::size_t> BasedSpace::indices_of(const std::vector<Label>& subset) const {
  std::vector<std::size_t> out;
  out.reserve(subset.size());
  for (const auto& l : subset) out.push_back(index_of(l));
  return out;
}

BasedSpace make_space(std::vector<Label> labels, Polytope ball, Rational k_bound) {
  if (ball.dim() != labels.size())
    throw Error(ErrorKind::MalformedInput, "ball dimension does not match the label count");
  std::unordered_set<Label> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw Error(ErrorKind::MalformedInput, "duplicate label '" + l + "'");
  if (k_bound < 1) throw Error(ErrorKind::MalformedInput, "k_bound must be at least 1");
  return BasedSpace{std::move(labels), std::move(ball), std::move(k_bound)};
}

BasedSpace trivial_space(const Rational& k_bound) { return make_space({}, Polytope(), k_bound); }

BasedSpace l1_space(std::vector<Label> labels, const Rational& k_bound) {
  std::size_t n = labels.size();
  std::vector<RationalVector> g;
  for (std::size_t i = 0; i < n; ++i) g.push_back(unit_vector(n, i));
  return make_space(std::move(labels), Polytope(n, g), k_bound);
}

RationalVector project(const RationalVector& x, const std::vector<bool>& keep) {
  RationalVector y = x;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!keep[i]) y[i] = 0;
  return y;
}

namespace {

bool block_is_normalized(const Polytope& ball, const Block& b, std::size_t i, Rational& value,
                         const SpaceLimits& limits) {
  std::size_t d = b.coords.size();
  if (d > limits.polytope.facet_dim_ceiling) {
    // e*_b has dual norm max |g_b|; if that is <= 1 then gauge(e_b) >= 1.
    bool lower = std::all_of(b.body->generators().begin(), b.body->generators().end(),
                             [&](const RationalVector& g) { return abs(g[i]) <= 1; });
    if (lower && ball.contains_fast(SparseVector{{b.coords[i], Rational(1)}}, limits.polytope)) {
      value = 1;
      return true;
    }
  }
  value = b.body->gauge(unit_vector(d, i));
  return value == 1;
}

bool block_one_suppression(const Polytope&, const Block& b, const SpaceLimits& limits) {
  return b.body->one_suppression(limits.polytope);
}

}  // namespace

ValidationReport validate(const BasedSpace& space, const SpaceLimits& limits) {
  ValidationReport r;
  r.full_dimensional = space.ball.dim() == space.dim() && space.ball.full_dimensional();
  if (!r.full_dimensional) {
    r.valid = false;
    return r;
  }
  for (const auto& b : space.ball.blocks()) {
    for (std::size_t i = 0; i < b.coords.size(); ++i) {
      Rational v;
      if (!block_is_normalized(space.ball, b, i, v, limits))
        r.unnormalized.emplace_back(space.labels[b.coords[i]], v);
    }
  }
  std::sort(r.unnormalized.begin(), r.unnormalized.end(), [&](const auto& a, const auto& c) {
    return space.index_of(a.first) < space.index_of(c.first);
  });
  SubsetWitness w = suppression_constant_fast(space, limits);
  r.suppression = w.norm;
  if (w.norm > space.k_bound) r.suppression_violation = w;
  r.valid = r.unnormalized.empty() && !r.suppression_violation;
  return r;
}

Rational projection_norm(const BasedSpace& space, const std::vector<Label>& subset) {
  std::vector<bool> keep(space.dim(), false);
  for (auto i : space.indices_of(subset)) keep[i] = true;
  Rational best = 0;
  for (const auto& g : space.ball.sparse_generators()) {
    SparseVector p;
    for (const auto& [c, v] : g)
      if (keep[c]) p.emplace_back(c, v);
    if (p.empty()) continue;
    Rational v = space.ball.gauge(p);
    if (v > best) best = v;
  }
  return best;
}

SubsetWitness suppression_constant(const BasedSpace& space, const SpaceLimits& limits) {
  std::size_t n = space.dim();
  if (n > limits.suppression_ceiling)
    throw Error(ErrorKind::CeilingExceeded, "subset enumeration in dimension " + std::to_string(n));
  space.ball.require_full_dimensional();
  auto gens = space.ball.generators();
  SubsetWitness best;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<bool> keep(n);
    for (std::size_t i = 0; i < n; ++i) keep[i] = (mask >> i) & 1;
    for (const auto& g : gens) {
      RationalVector p = project(g, keep);
      if (is_zero(p)) continue;
      Rational v = space.ball.gauge(to_sparse(p));
      if (v > best.norm) {
        best.norm = v;
        best.generator = g;
        best.subset.clear();
        for (std::size_t i = 0; i < n; ++i)
          if (keep[i]) best.subset.push_back(space.labels[i]);
      }
    }
  }
  return best;
}

SubsetWitness suppression_constant_fast(const BasedSpace& space, const SpaceLimits& limits) {
  space.ball.require_full_dimensional();
  SubsetWitness best;
  for (const auto& b : space.ball.blocks()) {
    if (b.coords.size() > limits.polytope.facet_dim_ceiling) {
      if (!block_one_suppression(space.ball, b, limits))
        throw Error(ErrorKind::CeilingExceeded, "suppression of a block of dimension " +
                                                    std::to_string(b.coords.size()));
      if (best.norm < 1) {
        best.norm = 1;
        best.subset.clear();
        best.generator.clear();
      }
      continue;
    }
    const auto& w = b.body->max_projection(limits.polytope);
    if (w.norm > best.norm) {
      best.norm = w.norm;
      std::vector<std::size_t> idx;
      for (auto j : w.subset) idx.push_back(b.coords[j]);
      std::sort(idx.begin(), idx.end());
      best.subset.clear();
      for (auto i : idx) best.subset.push_back(space.labels[i]);
      best.generator = zeros(space.dim());
      const auto& g = b.body->generators()[w.generator];
      for (std::size_t i = 0; i < b.coords.size(); ++i) best.generator[b.coords[i]] = g[i];
    }
  }
  return best;
}

bool certify_one_suppression(const BasedSpace& space, const SpaceLimits& limits) {
  space.ball.require_full_dimensional();
  return std::all_of(space.ball.blocks().begin(), space.ball.blocks().end(),
                     [&](const Block& b) { return block_one_suppression(space.ball, b, limits); });
}

BasedSpace based_subspace(const BasedSpace& space, const std::vector<Label>& subset,
                          const SpaceLimits& limits) {
  auto idx = space.indices_of(subset);
  return make_space(subset, space.ball.restrict_to(idx, limits.polytope), space.k_bound);
}

BasedSpace renorm_to_one_based(const BasedSpace& space, const SpaceLimits& limits) {
  if (space.dim() > limits.suppression_ceiling)
    throw Error(ErrorKind::CeilingExceeded, "renorming in dimension " + std::to_string(space.dim()));
  space.ball.require_full_dimensional();
  std::vector<Block> blocks;
  for (const auto& b : space.ball.blocks()) {
    std::size_t d = b.coords.size();
    std::vector<Facet> slabs;
    std::set<RationalVector, bool (*)(const RationalVector&, const RationalVector&)> seen(
        [](const RationalVector& x, const RationalVector& y) { return lex_compare(x, y) < 0; });
    for (const auto& f : b.body->facets(limits.polytope)) {
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << d); ++mask) {
        RationalVector n(d);
        for (std::size_t j = 0; j < d; ++j) n[j] = ((mask >> j) & 1) ? f.normal[j] / f.offset : Rational(0);
        if (is_zero(n)) continue;
        n = sign_normalized(n);
        if (seen.insert(n).second) slabs.push_back({n, Rational(1)});
      }
    }
    auto verts = symmetric_vertices(d, slabs);
    blocks.push_back({b.coords, std::make_shared<const BlockBody>(d, std::move(verts))});
  }
  Rational k = 1;
  return make_space(space.labels, Polytope::from_blocks(space.dim(), std::move(blocks)), k);
}

bool CanonicalForm::operator<(const CanonicalForm& o) const {
  if (dim != o.dim) return dim < o.dim;
  return std::lexicographical_compare(
      generators.begin(), generators.end(), o.generators.begin(), o.generators.end(),
      [](const RationalVector& x, const RationalVector& y) { return lex_compare(x, y) < 0; });
}

namespace {

std::vector<RationalVector> permuted_sorted(const std::vector<RationalVector>& gens,
                                            const std::vector<std::size_t>& order) {
  std::vector<RationalVector> out;
  out.reserve(gens.size());
  for (const auto& g : gens) {
    RationalVector h(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) h[i] = g[order[i]];
    out.push_back(sign_normalized(h));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return lex_compare(x, y) < 0; });
  return out;
}

bool lex_less(const std::vector<RationalVector>& a, const std::vector<RationalVector>& b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [](const RationalVector& x, const RationalVector& y) { return lex_compare(x, y) < 0; });
}

}  // namespace

CanonicalForm canonical_form(const BasedSpace& space, const SpaceLimits& limits) {
  std::size_t n = space.dim();
  if (n > limits.canonical_ceiling)
    throw Error(ErrorKind::CeilingExceeded, "canonical form in dimension " + std::to_string(n));
  auto gens = space.ball.pruned().generators();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  CanonicalForm best{n, permuted_sorted(gens, order), order};
  while (std::next_permutation(order.begin(), order.end())) {
    auto cand = permuted_sorted(gens, order);
    if (lex_less(cand, best.generators)) {
      best.generators = std::move(cand);
      best.order = order;
    }
  }
  return best;
}

BasedSpace canonical_space(const BasedSpace& space, const SpaceLimits& limits) {
  CanonicalForm c = canonical_form(space, limits);
  std::vector<Label> labels;
  for (auto i : c.order) labels.push_back(space.labels[i]);
  return make_space(std::move(labels), Polytope(c.dim, c.generators), space.k_bound);
}

std::vector<std::vector<std::size_t>> automorphisms(const BasedSpace& space, const SpaceLimits& limits) {
  std::size_t n = space.dim();
  if (n > limits.canonical_ceiling)
    throw Error(ErrorKind::CeilingExceeded, "automorphisms in dimension " + std::to_string(n));
  auto gens = space.ball.pruned().generators();
  std::vector<std::size_t> id(n);
  std::iota(id.begin(), id.end(), 0);
  auto base = permuted_sorted(gens, id);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> order = id;
  do {
    // order[i] is the source of canonical slot i; sigma sends source to slot.
    if (permuted_sorted(gens, order) == base) {
      std::vector<std::size_t> sigma(n);
      for (std::size_t i = 0; i < n; ++i) sigma[order[i]] = i;
      out.push_back(std::move(sigma));
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

}  // namespace ubk
