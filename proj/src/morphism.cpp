#include "ubk/morphism.hpp"

#include <algorithm>
#include <unordered_map>

namespace ubk {

std::vector<std::pair<Label, Label>> BasedMorphism::label_map() const {
  std::vector<std::pair<Label, Label>> out;
  for (std::size_t i = 0; i < map.size(); ++i) out.emplace_back(domain.labels[i], codomain.labels[map[i]]);
  return out;
}

bool BasedMorphism::injective() const {
  std::vector<std::size_t> m = map;
  std::sort(m.begin(), m.end());
  return std::adjacent_find(m.begin(), m.end()) == m.end();
}

BasedMorphism make_morphism(BasedSpace domain, BasedSpace codomain,
                            const std::vector<std::pair<Label, Label>>& label_map) {
  std::unordered_map<Label, std::size_t> target;
  for (std::size_t i = 0; i < codomain.labels.size(); ++i) target.emplace(codomain.labels[i], i);
  std::vector<std::size_t> map(domain.dim(), Polytope::npos);
  for (const auto& [from, to] : label_map) {
    auto i = domain.find(from);
    if (!i) throw Error(ErrorKind::MalformedInput, "label map source '" + from + "' not in domain");
    auto it = target.find(to);
    if (it == target.end()) throw Error(ErrorKind::MalformedInput, "label map target '" + to + "' not in codomain");
    if (map[*i] != Polytope::npos) throw Error(ErrorKind::MalformedInput, "label '" + from + "' mapped twice");
    map[*i] = it->second;
  }
  for (std::size_t i = 0; i < map.size(); ++i)
    if (map[i] == Polytope::npos)
      throw Error(ErrorKind::MalformedInput, "label '" + domain.labels[i] + "' has no image");
  return BasedMorphism{std::move(domain), std::move(codomain), std::move(map)};
}

BasedMorphism identity_morphism(const BasedSpace& x) {
  std::vector<std::size_t> map(x.dim());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  return BasedMorphism{x, x, std::move(map)};
}

BasedMorphism inclusion_morphism(const BasedSpace& x, const BasedSpace& y) {
  std::unordered_map<Label, std::size_t> target;
  for (std::size_t i = 0; i < y.labels.size(); ++i) target.emplace(y.labels[i], i);
  std::vector<std::size_t> map;
  for (const auto& l : x.labels) {
    auto it = target.find(l);
    if (it == target.end()) throw Error(ErrorKind::SpaceMismatch, "label '" + l + "' missing from target");
    map.push_back(it->second);
  }
  return BasedMorphism{x, y, std::move(map)};
}

RationalVector apply(const BasedMorphism& t, const RationalVector& x) {
  if (x.size() != t.domain.dim()) throw Error(ErrorKind::MalformedInput, "apply: dimension mismatch");
  RationalVector y = zeros(t.codomain.dim());
  for (std::size_t i = 0; i < x.size(); ++i) y[t.map[i]] += x[i];
  return y;
}

SparseVector apply(const BasedMorphism& t, const SparseVector& x) {
  std::vector<std::pair<std::size_t, Rational>> y;
  for (const auto& [i, v] : x) {
    if (i >= t.domain.dim()) throw Error(ErrorKind::MalformedInput, "apply: index out of range");
    y.emplace_back(t.map[i], v);
  }
  std::sort(y.begin(), y.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVector out;
  for (auto& [i, v] : y) {
    if (!out.empty() && out.back().first == i) out.back().second += v;
    else out.emplace_back(i, v);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return sgn(e.second) == 0; }),
            out.end());
  return out;
}

Rational operator_norm(const BasedMorphism& t) {
  Rational best = 0;
  if (t.domain.dim() == 0) return best;
  for (const auto& g : t.domain.ball.sparse_generators()) {
    SparseVector y = apply(t, g);
    if (y.empty()) continue;
    Rational v = t.codomain.ball.gauge(y);
    if (v > best) best = v;
  }
  return best;
}

namespace {

// Codomain blocks touching the image, excluding those that are a verbatim
// copy of a domain block under the label map.
std::vector<std::size_t> blocks_to_check(const BasedMorphism& t) {
  const Polytope& cb = t.codomain.ball;
  std::vector<std::size_t> touched;
  for (auto c : t.map)
    if (cb.block_of(c) != Polytope::npos) touched.push_back(cb.block_of(c));
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

  std::unordered_map<const BlockBody*, std::vector<const Block*>> by_body;
  for (const auto& b : t.domain.ball.blocks()) by_body[b.body.get()].push_back(&b);
  std::vector<std::size_t> out;
  for (auto k : touched) {
    const Block& cbk = cb.blocks()[k];
    bool copy = false;
    auto it = by_body.find(cbk.body.get());
    if (it != by_body.end()) {
      for (const Block* db : it->second) {
        bool same = db->coords.size() == cbk.coords.size();
        for (std::size_t i = 0; same && i < db->coords.size(); ++i)
          same = t.map[db->coords[i]] == cbk.coords[i];
        if (same) copy = true;
      }
    }
    if (!copy) out.push_back(k);
  }
  return out;
}

// pr_image(h) for codomain generators h of the given blocks, in domain
// coordinates, paired with the same vector in codomain coordinates.
struct Projected {
  SparseVector domain;
  SparseVector codomain;
};

std::vector<Projected> projected_generators(const BasedMorphism& t, const std::vector<std::size_t>& blocks) {
  std::unordered_map<std::size_t, std::size_t> inverse;
  for (std::size_t i = 0; i < t.map.size(); ++i) inverse.emplace(t.map[i], i);
  std::vector<Projected> out;
  for (auto k : blocks) {
    const Block& b = t.codomain.ball.blocks()[k];
    for (const auto& g : b.body->generators()) {
      Projected p;
      for (std::size_t i = 0; i < b.coords.size(); ++i) {
        if (sgn(g[i]) == 0) continue;
        auto it = inverse.find(b.coords[i]);
        if (it == inverse.end()) continue;
        p.domain.emplace_back(it->second, g[i]);
        p.codomain.emplace_back(b.coords[i], g[i]);
      }
      if (p.domain.empty()) continue;
      auto by_index = [](const auto& a, const auto& c) { return a.first < c.first; };
      std::sort(p.domain.begin(), p.domain.end(), by_index);
      std::sort(p.codomain.begin(), p.codomain.end(), by_index);
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace

std::vector<RationalVector> pulled_back_section(const BasedMorphism& t, const PolytopeLimits& limits) {
  if (!t.injective()) throw Error(ErrorKind::NotInjective, "label map is not injective");
  std::size_t n = t.domain.dim();
  if (n == 0) return {};
  // The projection onto the image equals the section when it stays inside B.
  auto proj = projected_generators(t, blocks_to_check(t));
  bool inside = std::all_of(proj.begin(), proj.end(),
                            [&](const Projected& p) { return t.codomain.ball.contains_fast(p.codomain, limits); });
  std::vector<RationalVector> out;
  if (inside) {
    for (const auto& p : proj) out.push_back(to_dense(p.domain, n));
    // Copied blocks are verbatim domain blocks.
    std::vector<bool> covered(n, false);
    for (const auto& p : proj)
      for (const auto& [i, v] : p.domain) covered[i] = true;
    for (const auto& b : t.domain.ball.blocks()) {
      if (covered[b.coords[0]]) continue;
      for (const auto& g : b.body->generators()) {
        RationalVector v = zeros(n);
        for (std::size_t i = 0; i < b.coords.size(); ++i) v[b.coords[i]] = g[i];
        out.push_back(std::move(v));
      }
    }
    return out;
  }
  return t.codomain.ball.restrict_to(t.map, limits).generators();
}

IsometryCertificate is_isometry(const BasedMorphism& t, const PolytopeLimits& limits) {
  IsometryCertificate c;
  if (!t.injective()) {
    c.reason = "label map is not injective";
    return c;
  }
  if (t.domain.dim() == 0) {
    c.isometry = true;
    return c;
  }
  // Norm does not grow: every domain generator lands in the codomain ball.
  for (const auto& g : t.domain.ball.sparse_generators()) {
    if (!t.codomain.ball.contains_fast(apply(t, g), limits)) {
      c.reason = "image of a ball generator lies outside the codomain ball";
      c.witness = to_dense(g, t.domain.dim());
      return c;
    }
  }
  // Norm does not shrink: the codomain section over the image lies in T(B).
  // First try the projection (sufficient because the section is inside it).
  auto proj = projected_generators(t, blocks_to_check(t));
  bool fast = std::all_of(proj.begin(), proj.end(),
                          [&](const Projected& p) { return t.domain.ball.contains_fast(p.domain, limits); });
  if (!fast) {
    for (const auto& v : t.codomain.ball.restrict_to(t.map, limits).generators()) {
      if (!t.domain.ball.contains(v)) {
        c.reason = "a vertex of the restricted codomain ball pulls back outside the domain ball";
        c.witness = v;
        return c;
      }
    }
  }
  c.isometry = true;
  return c;
}

DistortionInterval distortion(const BasedMorphism& t, const PolytopeLimits& limits) {
  if (!t.injective()) throw Error(ErrorKind::NotInjective, "distortion needs an injective label map");
  if (t.domain.dim() == 0) return {Rational(1), Rational(1)};
  DistortionInterval d;
  d.upper = operator_norm(t);
  Rational worst = 0;
  for (const auto& v : pulled_back_section(t, limits)) {
    Rational g = t.domain.ball.gauge(to_sparse(v));
    if (g > worst) worst = g;
  }
  d.lower = 1 / worst;
  return d;
}

bool is_epsilon_isometry(const DistortionInterval& d, const Rational& epsilon) {
  Rational one_plus = 1 + epsilon;
  return d.lower > 1 / one_plus && d.upper < one_plus;
}

BasedMorphism compose(const BasedMorphism& s, const BasedMorphism& t) {
  if (t.codomain.labels != s.domain.labels)
    throw Error(ErrorKind::SpaceMismatch, "compose: codomain of the inner map is not the outer domain");
  std::vector<std::size_t> map(t.map.size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = s.map[t.map[i]];
  return BasedMorphism{t.domain, s.codomain, std::move(map)};
}

bool same_label_map(const BasedMorphism& a, const BasedMorphism& b) {
  return a.domain.labels == b.domain.labels && a.codomain.labels == b.codomain.labels && a.map == b.map;
}

}  // namespace ubk
