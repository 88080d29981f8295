#include "ubk/chain.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace ubk {

BasedMorphism Chain::inclusion(std::size_t from, std::size_t to) const {
  if (from > to || to >= stages.size()) throw Error(ErrorKind::MalformedInput, "bad stage indices");
  std::vector<std::size_t> map(stages[from].dim());
  std::iota(map.begin(), map.end(), 0);
  return BasedMorphism{stages[from], stages[to], std::move(map)};
}

Chain trivial_chain(const Rational& k_bound) {
  Chain c;
  c.k_bound = k_bound;
  c.stages.push_back(trivial_space(k_bound));
  return c;
}

namespace {

// Drops exact duplicates (up to sign) inside blocks that are not carried over
// unchanged from `previous`.
Polytope drop_duplicates(const Polytope& ball, const Polytope& previous) {
  std::unordered_set<const BlockBody*> old;
  for (const auto& b : previous.blocks()) old.insert(b.body.get());
  std::vector<Block> blocks;
  bool changed = false;
  for (const auto& b : ball.blocks()) {
    if (old.count(b.body.get())) {
      blocks.push_back(b);
      continue;
    }
    std::vector<RationalVector> kept;
    std::vector<RationalVector> seen;
    for (const auto& g : b.body->generators()) {
      RationalVector s = sign_normalized(g);
      if (std::find(seen.begin(), seen.end(), s) != seen.end()) continue;
      seen.push_back(s);
      kept.push_back(g);
    }
    if (kept.size() == b.body->generators().size()) {
      blocks.push_back(b);
      continue;
    }
    changed = true;
    blocks.push_back({b.coords, std::make_shared<const BlockBody>(b.coords.size(), std::move(kept))});
  }
  if (!changed) return ball;
  return Polytope::from_blocks(ball.dim(), std::move(blocks));
}

}  // namespace

GrowResult grow_chain(Chain& chain, const BasedSpace& target, const LabelPairs& shared, const std::string& kind,
                      std::optional<std::size_t> source_stage, const LabelPairs& f, const AmalgamOptions& options) {
  const BasedSpace& top = chain.top();
  std::size_t n_new = chain.stages.size();
  std::vector<Label> sx, sy;
  std::unordered_set<Label> shared_target;
  for (const auto& [y, u] : shared) {
    sy.push_back(y);
    sx.push_back(u);
    if (!shared_target.insert(y).second) throw Error(ErrorKind::NotInjective, "target label shared twice");
  }
  std::vector<Label> renamed;
  std::size_t fresh = 0;
  for (const auto& l : target.labels) {
    if (shared_target.count(l)) renamed.push_back(l);
    else renamed.push_back("stage" + std::to_string(n_new) + ":" + std::to_string(fresh++));
  }
  BasedSpace y = make_space(renamed, target.ball, chain.k_bound);

  AmalgamOptions inner = options;
  inner.verify = false;
  AmalgamResult r = quotient_by_diagonal(top, y, sx, sy, inner);
  Polytope ball = drop_duplicates(r.w.ball, top.ball);
  BasedSpace w = make_space(r.w.labels, std::move(ball), chain.k_bound);
  AmalgamResult checked{w, BasedMorphism{top, w, r.i_prime.map}, BasedMorphism{y, w, r.j_prime.map}, {}};
  if (options.verify) verify_amalgam(checked, top, y, options.limits);

  StepRecord rec;
  rec.kind = kind;
  rec.source_stage = source_stage;
  rec.target = target;
  rec.f = f;
  rec.shared = shared;
  for (std::size_t i = 0; i < target.dim(); ++i) rec.g.emplace_back(target.labels[i], w.labels[checked.j_prime.map[i]]);
  GrowResult out{BasedMorphism{target, w, checked.j_prime.map}, n_new};
  chain.stages.push_back(std::move(w));
  chain.log.push_back(std::move(rec));
  out.g.codomain = chain.stages.back();
  return out;
}

std::string check_chain(const Chain& chain, const PolytopeLimits& limits) {
  if (chain.stages.empty()) return "chain has no stages";
  if (chain.stages[0].dim() != 0) return "stage 0 is not the trivial space";
  if (chain.log.size() + 1 != chain.stages.size()) return "log length does not match the stage count";
  SpaceLimits sl;
  sl.polytope = limits;
  for (std::size_t n = 0; n + 1 < chain.stages.size(); ++n) {
    const auto& a = chain.stages[n];
    const auto& b = chain.stages[n + 1];
    if (b.labels.size() < a.labels.size() || !std::equal(a.labels.begin(), a.labels.end(), b.labels.begin()))
      return "stage " + std::to_string(n + 1) + " does not extend the labels of stage " + std::to_string(n);
    auto c = is_isometry(chain.inclusion(n, n + 1), limits);
    if (!c.isometry) return "inclusion of stage " + std::to_string(n) + " is not an isometry: " + c.reason;
    if (suppression_constant_fast(b, sl).norm > chain.k_bound)
      return "stage " + std::to_string(n + 1) + " exceeds the suppression bound";
    const auto& rec = chain.log[n];
    if (rec.kind == "request") {
      std::unordered_map<Label, Label> g(rec.g.begin(), rec.g.end());
      for (const auto& [u, yl] : rec.f) {
        auto it = g.find(yl);
        if (it == g.end() || it->second != u)
          return "step " + std::to_string(n + 1) + ": g.f is not the inclusion at '" + u + "'";
      }
    }
  }
  return "";
}

}  // namespace ubk
