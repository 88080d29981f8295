#include "ubk/backforth.hpp"

#include <algorithm>

namespace ubk {

namespace {

std::size_t stage_with_labels(const Chain& c, const std::vector<Label>& labels, const char* what) {
  for (std::size_t n = 0; n < c.stages.size(); ++n)
    if (c.stages[n].labels == labels) return n;
  throw Error(ErrorKind::SpaceMismatch, std::string(what) + " is not a stage of its chain");
}

// Least stage holding every coordinate index in `img` (indices into the top).
std::size_t least_stage(const Chain& c, const std::vector<std::size_t>& img) {
  std::size_t need = 0;
  for (auto i : img) need = std::max(need, i + 1);
  for (std::size_t n = 0; n < c.stages.size(); ++n)
    if (c.stages[n].dim() >= need) return n;
  return c.top_index();
}

// For t : S -> A (an isometry onto a coordinate subspace of stage A), the
// labels of the image in S-order and the inverse map on them.
struct Inverse {
  std::vector<Label> lambda;
  BasedMorphism h;
};

Inverse inverse_on_image(const BasedMorphism& t, const SpaceLimits& limits) {
  Inverse inv;
  std::vector<std::size_t> back(t.map.size());
  for (std::size_t i = 0; i < t.map.size(); ++i) {
    inv.lambda.push_back(t.codomain.labels[t.map[i]]);
    back[i] = i;
  }
  BasedSpace sub = based_subspace(t.codomain, inv.lambda, limits);
  inv.h = BasedMorphism{sub, t.domain, back};
  return inv;
}

struct StepOutcome {
  std::optional<BasedMorphism> map;
  std::size_t stage = 0;
  std::string reason;
};

// Extends prev^{-1} (prev : target stage -> a) to a -> target chain.
StepOutcome exact_step(Chain& target, const BasedSpace& a, const BasedMorphism& prev, std::size_t prev_stage,
                       std::size_t min_stage, const BackForthOptions& options) {
  StepOutcome out;
  if (options.grow) {
    AmalgamOptions opts;
    opts.limits = options.limits.polytope;
    GrowResult r = fraisse_step(target, ExtensionRequest{prev_stage, a, prev}, opts);
    out.map = r.g;
    out.stage = r.stage;
    return out;
  }
  Inverse inv = inverse_on_image(prev, options.limits);
  auto u = check_universality(target, a, inv.lambda, inv.h, options.search_budget, options.limits);
  if (!u.extension) {
    out.reason = u.reason;
    return out;
  }
  out.stage = std::min(std::max(least_stage(target, u.extension->map), min_stage), target.top_index());
  out.map = BasedMorphism{a, target.stages[out.stage], u.extension->map};
  return out;
}

BasedMorphism trivial_map(const BasedSpace& from, const BasedSpace& to) { return BasedMorphism{from, to, {}}; }

}  // namespace

BackForthOutcome back_and_forth_exact(Chain& x, Chain& y, std::size_t rounds, const BackForthOptions& options) {
  if (x.k_bound != y.k_bound) throw Error(ErrorKind::KMismatch, "chains have different suppression bounds");
  if (x.stages.empty() || y.stages.empty() || x.stages[0].dim() != 0 || y.stages[0].dim() != 0)
    throw Error(ErrorKind::MalformedInput, "chains must start at the trivial space");
  BackForthOutcome res;
  auto& t = res.transcript;
  t.mode = BackForthMode::Exact;
  t.n_indices.push_back(0);
  BasedMorphism g_prev = trivial_map(y.stages[0], x.stages[0]);
  std::size_t m_prev = 0;
  for (std::size_t k = 1; k <= rounds; ++k) {
    const BasedSpace xa = x.stages[t.n_indices.back()];
    StepOutcome f = exact_step(y, xa, g_prev, m_prev, m_prev + 1, options);
    if (!f.map) {
      res.stuck = StuckReport{k, "forth", xa.labels, inverse_on_image(g_prev, options.limits).lambda, f.reason};
      return res;
    }
    t.f_list.push_back(*f.map);
    t.m_indices.push_back(f.stage);
    t.f_distortion.push_back({1, 1});

    const BasedSpace ya = y.stages[f.stage];
    BasedMorphism f_k{xa, ya, f.map->map};
    StepOutcome g = exact_step(x, ya, f_k, t.n_indices.back(), t.n_indices.back() + 1, options);
    if (!g.map) {
      res.stuck = StuckReport{k, "back", ya.labels, inverse_on_image(f_k, options.limits).lambda, g.reason};
      return res;
    }
    t.g_list.push_back(*g.map);
    t.n_indices.push_back(g.stage);
    t.g_distortion.push_back({1, 1});
    g_prev = BasedMorphism{ya, x.stages[g.stage], g.map->map};
    m_prev = f.stage;
  }
  return res;
}

BackForthOutcome back_and_forth_epsilon(Chain& x, Chain& y, const BasedMorphism& f0, const Rational& epsilon,
                                        std::size_t rounds, const BackForthOptions& options) {
  if (x.k_bound != 1 || y.k_bound != 1) throw Error(ErrorKind::KMismatch, "epsilon mode needs 1-based chains");
  if (!options.grow) throw Error(ErrorKind::MalformedInput, "epsilon mode extends by growing the chains");
  std::size_t n0 = stage_with_labels(x, f0.domain.labels, "domain of f0");
  std::size_t m1 = stage_with_labels(y, f0.codomain.labels, "codomain of f0");
  DistortionInterval d0 = distortion(f0, options.limits.polytope);
  if (!is_epsilon_isometry(d0, epsilon))
    throw Error(ErrorKind::NotEpsilonPerturbed, "f0 has distortion [" + to_string(d0.lower) + ", " +
                                                    to_string(d0.upper) + "]");
  Rational t = std::max(d0.upper, d0.lower == 0 ? Rational(1) : Rational(1 / d0.lower)) - 1;
  Rational delta = dyadic_params(t, epsilon).delta;

  BackForthOutcome res;
  auto& tr = res.transcript;
  tr.mode = BackForthMode::Epsilon;
  tr.epsilon = epsilon;
  tr.delta = delta;
  tr.n_indices.push_back(n0);
  tr.m_indices.push_back(m1);
  tr.f_list.push_back(f0);
  tr.f_distortion.push_back(d0);

  auto extend = [&](const BasedMorphism& prev, Chain& target) {
    Inverse inv = inverse_on_image(prev, options.limits);
    return extend_epsilon_isometry(prev.codomain, inv.lambda, inv.h, target, delta, options.limits.polytope);
  };
  BasedMorphism f_k = f0;
  for (std::size_t k = 1; k <= rounds; ++k) {
    EpsilonExtension g = extend(f_k, x);
    tr.g_list.push_back(g.morphism);
    tr.n_indices.push_back(g.stage);
    tr.g_distortion.push_back(g.distortion);
    EpsilonExtension f = extend(g.morphism, y);
    tr.f_list.push_back(f.morphism);
    tr.m_indices.push_back(f.stage);
    tr.f_distortion.push_back(f.distortion);
    f_k = f.morphism;
  }
  return res;
}

std::string check_transcript(const BackForthTranscript& t, const Chain& x, const Chain& y, bool strict_indices,
                             const PolytopeLimits& limits) {
  std::size_t nf = t.f_list.size(), ng = t.g_list.size();
  if (!(nf == ng || nf == ng + 1)) return "f and g lists have incompatible lengths";
  if (t.n_indices.size() != ng + 1 || t.m_indices.size() != nf) return "stage index lists have wrong lengths";
  for (auto n : t.n_indices)
    if (n >= x.stages.size()) return "X stage index out of range";
  for (auto m : t.m_indices)
    if (m >= y.stages.size()) return "Y stage index out of range";
  auto order_ok = [&](const std::vector<std::size_t>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (strict_indices ? v[i] <= v[i - 1] : v[i] < v[i - 1]) return false;
    return true;
  };
  if (!order_ok(t.n_indices) || !order_ok(t.m_indices)) return "stage indices are not increasing";
  for (std::size_t k = 0; k < nf; ++k) {
    const auto& f = t.f_list[k];
    if (f.domain.labels != x.stages[t.n_indices[k]].labels || f.codomain.labels != y.stages[t.m_indices[k]].labels)
      return "f_" + std::to_string(k + 1) + " does not run between the recorded stages";
  }
  for (std::size_t k = 0; k < ng; ++k) {
    const auto& g = t.g_list[k];
    if (g.domain.labels != y.stages[t.m_indices[k]].labels || g.codomain.labels != x.stages[t.n_indices[k + 1]].labels)
      return "g_" + std::to_string(k + 1) + " does not run between the recorded stages";
  }
  for (std::size_t k = 0; k < ng; ++k) {
    const auto& f = t.f_list[k];
    const auto& g = t.g_list[k];
    for (std::size_t i = 0; i < f.map.size(); ++i)
      if (g.map[f.map[i]] != i) return "g_" + std::to_string(k + 1) + " . f_" + std::to_string(k + 1) + " is not the inclusion";
    if (k + 1 < nf) {
      const auto& f2 = t.f_list[k + 1];
      for (std::size_t j = 0; j < g.map.size(); ++j)
        if (f2.map[g.map[j]] != j) return "f_" + std::to_string(k + 2) + " . g_" + std::to_string(k + 1) + " is not the inclusion";
    }
  }
  for (std::size_t k = 0; k + 1 < nf; ++k)
    for (std::size_t i = 0; i < t.f_list[k].map.size(); ++i)
      if (t.f_list[k + 1].map[i] != t.f_list[k].map[i]) return "f_" + std::to_string(k + 2) + " does not extend f_" + std::to_string(k + 1);
  for (std::size_t k = 0; k + 1 < ng; ++k)
    for (std::size_t i = 0; i < t.g_list[k].map.size(); ++i)
      if (t.g_list[k + 1].map[i] != t.g_list[k].map[i]) return "g_" + std::to_string(k + 2) + " does not extend g_" + std::to_string(k + 1);

  auto certify = [&](const BasedMorphism& m, const std::string& name) -> std::string {
    if (t.mode == BackForthMode::Exact) {
      auto c = is_isometry(m, limits);
      return c.isometry ? "" : name + " is not an isometry: " + c.reason;
    }
    if (!t.delta) return "epsilon transcript without delta";
    auto d = distortion(m, limits);
    if (!is_epsilon_isometry(d, *t.delta))
      return name + " is not a delta-isometry";
    return "";
  };
  for (std::size_t k = 0; k < nf; ++k)
    if (auto e = certify(t.f_list[k], "f_" + std::to_string(k + 1)); !e.empty()) return e;
  for (std::size_t k = 0; k < ng; ++k)
    if (auto e = certify(t.g_list[k], "g_" + std::to_string(k + 1)); !e.empty()) return e;
  return "";
}

EmbedResult embed_any(const Chain& space_chain, Chain& universal, const Rational& epsilon, const SpaceLimits& limits) {
  if (universal.k_bound != 1) throw Error(ErrorKind::KMismatch, "the universal chain must be 1-based");
  EmbedResult res;
  res.renormed = space_chain.k_bound > 1;
  Rational t = res.renormed ? space_chain.k_bound - 1 : Rational(0);
  res.delta = dyadic_params(t, epsilon).delta;

  std::optional<BasedMorphism> prev;
  for (std::size_t k = 1; k < space_chain.stages.size(); ++k) {
    const BasedSpace& orig = space_chain.stages[k];
    BasedSpace a = res.renormed ? renorm_to_one_based(orig, limits) : orig;
    std::vector<Label> lambda = space_chain.stages[k - 1].labels;
    BasedMorphism h = prev ? *prev : BasedMorphism{trivial_space(), universal.top(), {}};

    std::optional<BasedMorphism> fk;
    // X_k may already sit in the universal chain under its own labels
    bool by_label = std::all_of(a.labels.begin(), a.labels.end(), [&](const Label& l) { return universal.top().find(l).has_value(); });
    for (std::size_t i = 0; by_label && i < h.map.size(); ++i)
      by_label = h.codomain.labels[h.map[i]] == lambda[i];
    if (by_label) {
      BasedMorphism inc = inclusion_morphism(a, universal.top());
      if (is_isometry(inc, limits.polytope).isometry) fk = inc;
    }
    if (!fk) fk = extend_epsilon_isometry(a, lambda, h, universal, res.delta, limits.polytope).morphism;
    prev = *fk;
    BasedMorphism m{orig, fk->codomain, fk->map};
    DistortionInterval d = distortion(m, limits.polytope);
    if (!is_epsilon_isometry(d, res.delta))
      throw Error(ErrorKind::ConstructionInvariantViolated,
                  "stage " + std::to_string(k) + " distortion [" + to_string(d.lower) + ", " + to_string(d.upper) +
                      "] is not within delta");
    res.maps.push_back(std::move(m));
    res.distortion.push_back(d);
  }
  return res;
}

}  // namespace ubk
