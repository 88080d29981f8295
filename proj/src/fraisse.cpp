#include "ubk/fraisse.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "ubk/rng.hpp"

namespace ubk {

namespace {

struct LexLess {
  bool operator()(const RationalVector& a, const RationalVector& b) const { return lex_compare(a, b) < 0; }
};

Integer floor_div(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

std::vector<Rational> grid(std::size_t max_den, const Rational& bound) {
  std::set<Rational> vals;
  for (std::size_t q = 1; q <= max_den; ++q) {
    Integer lim = floor_div(bound * Rational(static_cast<unsigned long>(q)));
    for (Integer p = -lim; p <= lim; ++p) vals.insert(make_rational(p, Integer(static_cast<unsigned long>(q))));
  }
  return {vals.begin(), vals.end()};
}

Rational l1(const RationalVector& v) {
  Rational s = 0;
  for (const auto& x : v) s += abs(x);
  return s;
}

struct SpaceSearch {
  std::size_t d;
  const ComplexityBound& bound;
  const Rational& k;
  const SpaceLimits& limits;
  std::vector<RationalVector> cand;
  std::set<CanonicalForm> seen;
  std::vector<BasedSpace> out;

  void visit(std::vector<std::size_t>& chosen) {
    std::vector<RationalVector> gens;
    for (auto c : chosen) gens.push_back(cand[c]);
    for (std::size_t i = 0; i < d; ++i) gens.push_back(unit_vector(d, i));
    Polytope p = Polytope(d, gens).pruned();
    std::set<RationalVector, LexLess> verts;
    for (const auto& g : p.generators()) verts.insert(sign_normalized(g));
    for (auto c : chosen)
      if (!verts.count(cand[c])) return;  // stays a non-vertex in every superset
    for (std::size_t i = 0; i < d; ++i)
      if (p.gauge(unit_vector(d, i)) != 1) return;  // balls only grow
    if (2 * verts.size() <= bound.max_generators) {
      std::vector<Label> labels;
      for (std::size_t i = 0; i < d; ++i) labels.push_back("x" + std::to_string(i + 1));
      BasedSpace s = make_space(labels, p, k);
      if (suppression_constant_fast(s, limits).norm <= k) {
        CanonicalForm cf = canonical_form(s, limits);
        if (seen.insert(cf).second) out.push_back(make_space(labels, Polytope(d, cf.generators), k));
      }
    }
    if (2 * (chosen.size() + 1) > bound.max_generators) return;
    std::size_t start = chosen.empty() ? 0 : chosen.back() + 1;
    for (std::size_t c = start; c < cand.size(); ++c) {
      chosen.push_back(c);
      visit(chosen);
      chosen.pop_back();
    }
  }
};

void all_tuples(std::size_t d, const std::vector<Rational>& vals, RationalVector& cur,
                std::vector<RationalVector>& out) {
  if (cur.size() == d) {
    out.push_back(cur);
    return;
  }
  for (const auto& v : vals) {
    cur.push_back(v);
    all_tuples(d, vals, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<BasedSpace> enumerate_spaces(const ComplexityBound& bound, const Rational& k_bound,
                                         const SpaceLimits& limits) {
  if (bound.max_dim == 0 || bound.max_denominator == 0 || bound.max_generators == 0)
    throw Error(ErrorKind::MalformedInput, "complexity bounds must be positive");
  auto vals = grid(bound.max_denominator, k_bound);
  std::vector<BasedSpace> out;
  for (std::size_t d = 1; d <= bound.max_dim; ++d) {
    SpaceSearch s{d, bound, k_bound, limits, {}, {}, {}};
    std::vector<RationalVector> tuples;
    RationalVector cur;
    all_tuples(d, vals, cur, tuples);
    for (auto& t : tuples)
      if (!is_zero(t) && sign_normalized(t) == t && l1(t) > 1) s.cand.push_back(std::move(t));
    std::vector<std::size_t> chosen;
    s.visit(chosen);
    for (auto& sp : s.out) out.push_back(std::move(sp));
  }
  return out;
}

std::vector<ExtensionRequest> enumerate_extensions(const BasedSpace& u, std::size_t source_stage,
                                                   const std::vector<BasedSpace>& spaces,
                                                   const PolytopeLimits& limits) {
  std::vector<ExtensionRequest> out;
  std::size_t k = u.dim();
  SpaceLimits sl;
  sl.polytope = limits;
  for (const auto& y : spaces) {
    std::size_t d = y.dim();
    if (d < k) continue;
    auto auts = automorphisms(y, sl);
    // injections in lexicographic order: permutations of k-subsets
    std::vector<std::size_t> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    std::set<std::vector<std::size_t>> done;
    do {
      std::vector<std::size_t> phi(idx.begin(), idx.begin() + k);
      if (!done.insert(phi).second) continue;
      bool minimal = true;
      for (const auto& s : auts) {
        std::vector<std::size_t> img(k);
        for (std::size_t i = 0; i < k; ++i) img[i] = s[phi[i]];
        if (img < phi) {
          minimal = false;
          break;
        }
      }
      if (!minimal) continue;
      BasedMorphism m{u, y, phi};
      if (is_isometry(m, limits).isometry) out.push_back({source_stage, y, std::move(m)});
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
  return out;
}

std::vector<ExtensionRequest> enumerate_extensions(const BasedSpace& u, const ComplexityBound& bound,
                                                   const Rational& k_bound, const SpaceLimits& limits) {
  return enumerate_extensions(u, 0, enumerate_spaces(bound, k_bound, limits), limits.polytope);
}

GrowResult fraisse_step(Chain& chain, const ExtensionRequest& request, const AmalgamOptions& options) {
  if (request.source_stage > chain.top_index())
    throw Error(ErrorKind::MalformedInput, "request refers to a stage beyond the top");
  const BasedSpace& stage = chain.stages[request.source_stage];
  const BasedMorphism& f = request.embedding;
  if (f.domain.labels != stage.labels) throw Error(ErrorKind::SpaceMismatch, "request does not start at its stage");
  if (f.codomain.labels != request.target.labels)
    throw Error(ErrorKind::SpaceMismatch, "request embedding does not end at its target");
  LabelPairs shared, fpairs;
  for (std::size_t i = 0; i < f.map.size(); ++i) {
    shared.emplace_back(request.target.labels[f.map[i]], stage.labels[i]);
    fpairs.emplace_back(stage.labels[i], request.target.labels[f.map[i]]);
  }
  return grow_chain(chain, request.target, shared, "request", request.source_stage, fpairs, options);
}

Chain build_generic_chain(const ComplexityBound& bound, const Rational& k_bound, std::size_t steps,
                          std::uint64_t seed, const SpaceLimits& limits) {
  Chain chain = trivial_chain(k_bound);
  auto spaces = enumerate_spaces(bound, k_bound, limits);
  Rng rng(seed);
  std::deque<ExtensionRequest> queue;
  auto enqueue = [&](std::size_t n) {
    if (chain.stages[n].dim() > bound.max_dim) return;
    auto reqs = enumerate_extensions(chain.stages[n], n, spaces, limits.polytope);
    rng.shuffle(reqs);
    for (auto& r : reqs) queue.push_back(std::move(r));
  };
  enqueue(0);
  AmalgamOptions opts;
  opts.limits = limits.polytope;
  std::size_t done = 0;
  while (!queue.empty() && (steps == 0 || done < steps)) {
    ExtensionRequest r = std::move(queue.front());
    queue.pop_front();
    GrowResult g = fraisse_step(chain, r, opts);
    ++done;
    enqueue(g.stage);
  }
  return chain;
}

namespace {

BasedSpace block_space(const BasedSpace& top, const Block& b) {
  std::vector<Label> labels;
  for (auto c : b.coords) labels.push_back(top.labels[c]);
  std::vector<std::size_t> local(b.coords.size());
  std::iota(local.begin(), local.end(), 0);
  return make_space(labels, Polytope::from_blocks(local.size(), {Block{local, b.body}}), top.k_bound);
}

struct InjectionSearch {
  const BasedSpace& a;
  const BasedSpace& top;
  const SpaceLimits& limits;
  std::size_t budget;
  std::vector<std::size_t> order;             // A indices to assign
  std::vector<std::vector<std::size_t>> pref;  // per A block: preferred top coords
  std::vector<std::size_t> map;               // A index -> top index or npos
  std::vector<bool> used;
  std::size_t nodes = 0;
  bool out_of_budget = false;

  bool partial_ok() {
    std::vector<Label> labels;
    std::vector<std::size_t> img;
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (map[i] != Polytope::npos) {
        labels.push_back(a.labels[i]);
        img.push_back(map[i]);
      }
    if (labels.empty()) return true;
    BasedSpace sub = based_subspace(a, labels, limits);
    return is_isometry(BasedMorphism{sub, top, img}, limits.polytope).isometry;
  }

  bool run(std::size_t pos) {
    if (pos == order.size()) return true;
    if (++nodes > budget) {
      out_of_budget = true;
      return false;
    }
    std::size_t i = order[pos];
    std::size_t ab = a.ball.block_of(i);
    // a block of A lands inside one block of top
    std::size_t forced = Polytope::npos;
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (map[j] != Polytope::npos && a.ball.block_of(j) == ab) forced = top.ball.block_of(map[j]);
    std::vector<std::size_t> cands;
    if (forced != Polytope::npos) cands = top.ball.blocks()[forced].coords;
    else cands = pref[ab];
    for (auto c : cands) {
      if (used[c]) continue;
      map[i] = c;
      used[c] = true;
      if (partial_ok() && run(pos + 1)) return true;
      map[i] = Polytope::npos;
      used[c] = false;
      if (out_of_budget) return false;
    }
    return false;
  }
};

}  // namespace

UniversalityResult check_universality(const Chain& chain, const BasedSpace& a,
                                      const std::vector<Label>& lambda_labels, const BasedMorphism& f,
                                      std::size_t budget, const SpaceLimits& limits) {
  const BasedSpace& top = chain.top();
  if (f.domain.labels != lambda_labels) throw Error(ErrorKind::SpaceMismatch, "f must start at the Lambda labels");
  auto lam = a.indices_of(lambda_labels);
  std::vector<std::size_t> fixed(a.dim(), Polytope::npos);
  for (std::size_t i = 0; i < lam.size(); ++i) {
    auto t = top.find(f.codomain.labels[f.map[i]]);
    if (!t) throw Error(ErrorKind::SpaceMismatch, "f lands outside the chain");
    fixed[lam[i]] = *t;
  }
  UniversalityResult res;
  auto accept = [&](const std::vector<std::size_t>& map) {
    BasedMorphism m{a, top, map};
    if (!m.injective() || !is_isometry(m, limits.polytope).isometry) return false;
    res.extension = std::move(m);
    return true;
  };

  // logged targets isomorphic to A
  if (a.dim() > 0 && a.dim() <= limits.canonical_ceiling) {
    CanonicalForm ca = canonical_form(a, limits);
    auto auts = automorphisms(a, limits);
    std::vector<std::size_t> slot(a.dim());
    for (std::size_t s = 0; s < a.dim(); ++s) slot[ca.order[s]] = s;
    for (const auto& rec : chain.log) {
      if (rec.target.dim() != a.dim()) continue;
      CanonicalForm cy = canonical_form(rec.target, limits);
      if (!(cy == ca)) continue;
      std::unordered_map<Label, Label> g(rec.g.begin(), rec.g.end());
      for (const auto& sigma : auts) {
        std::vector<std::size_t> map(a.dim());
        bool ok = true;
        for (std::size_t i = 0; i < a.dim() && ok; ++i) {
          std::size_t y = cy.order[slot[sigma[i]]];
          auto t = top.find(g.at(rec.target.labels[y]));
          map[i] = *t;
          ok = fixed[i] == Polytope::npos || fixed[i] == map[i];
        }
        ++res.nodes;
        if (ok && accept(map)) return res;
      }
    }
  }

  // depth-first search over label injections; blocks of the pruned ball are
  // the finest l1-decomposition, so each lands inside a single top block
  BasedSpace ap{a.labels, a.ball.pruned(), a.k_bound};
  InjectionSearch s{ap, top, limits, budget, {}, {}, fixed, std::vector<bool>(top.dim(), false)};
  for (auto t : fixed)
    if (t != Polytope::npos) s.used[t] = true;
  std::vector<std::size_t> touched;  // A blocks meeting Lambda first
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (fixed[i] != Polytope::npos) touched.push_back(ap.ball.block_of(i));
  for (std::size_t b = 0; b < ap.ball.blocks().size(); ++b)
    if (std::find(touched.begin(), touched.end(), b) == touched.end()) touched.push_back(b);
  std::unordered_set<std::size_t> seen_block;
  for (auto b : touched) {
    if (!seen_block.insert(b).second) continue;
    for (auto c : ap.ball.blocks()[b].coords)
      if (fixed[c] == Polytope::npos) s.order.push_back(c);
  }
  s.pref.resize(ap.ball.blocks().size());
  for (std::size_t b = 0; b < ap.ball.blocks().size(); ++b) {
    const Block& ab = ap.ball.blocks()[b];
    std::optional<CanonicalForm> ca;
    if (ab.coords.size() <= limits.canonical_ceiling) ca = canonical_form(block_space(ap, ab), limits);
    std::vector<std::pair<int, std::size_t>> ranked;
    for (std::size_t tb = 0; tb < top.ball.blocks().size(); ++tb) {
      const Block& blk = top.ball.blocks()[tb];
      if (blk.coords.size() < ab.coords.size()) continue;
      int rank = 2;
      if (ca && blk.coords.size() == ab.coords.size()) rank = canonical_form(block_space(top, blk), limits) == *ca ? 0 : 1;
      ranked.emplace_back(rank, tb);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [&](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first < y.first;
      return top.ball.blocks()[x.second].coords.size() < top.ball.blocks()[y.second].coords.size();
    });
    for (const auto& [r, tb] : ranked)
      for (auto c : top.ball.blocks()[tb].coords) s.pref[b].push_back(c);
  }
  bool found = s.run(0);
  res.nodes += s.nodes;
  if (found && accept(s.map)) return res;
  res.exhausted = !s.out_of_budget;
  res.reason = res.exhausted ? "no isometric extension into the top stage exists"
                             : "search budget of " + std::to_string(budget) + " nodes exhausted";
  return res;
}

}  // namespace ubk
