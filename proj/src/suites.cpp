#include "ubk/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>

namespace ubk {

namespace {

const std::vector<Rational> kBounds{Rational(1), Rational(3, 2), Rational(2)};

Rational random_entry(Rng& rng, std::size_t max_den, const Rational& bound) {
  std::int64_t q = rng.between(1, static_cast<std::int64_t>(max_den));
  Rational lim = bound * Rational(static_cast<long>(q));
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), lim.get_num_mpz_t(), lim.get_den_mpz_t());
  std::int64_t l = fl.get_si();
  return make_rational(rng.between(-l, l), q);
}

RationalVector random_vector(Rng& rng, std::size_t dim, std::size_t max_den, const Rational& bound) {
  RationalVector v(dim);
  for (auto& x : v) x = random_entry(rng, max_den, bound);
  return v;
}

std::vector<Label> make_labels(const std::string& prefix, std::size_t n) {
  std::vector<Label> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

std::vector<RationalVector> units(std::size_t n) {
  std::vector<RationalVector> u;
  for (std::size_t i = 0; i < n; ++i) u.push_back(unit_vector(n, i));
  return u;
}

// Y containing Z on its first coordinates, `extra` further coordinates.
BasedSpace random_extension(Rng& rng, const BasedSpace& z, std::size_t extra, const Rational& k) {
  std::size_t dz = z.dim(), dy = dz + extra;
  auto labels = make_labels("y", dy);
  std::vector<std::size_t> head(dz);
  std::iota(head.begin(), head.end(), 0);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<RationalVector> gens = units(dy);
    for (const auto& g : z.ball.embed(head, dy).generators()) gens.push_back(g);
    std::int64_t m = rng.between(0, 2);
    for (std::int64_t t = 0; t < m; ++t) {
      RationalVector v = random_vector(rng, dy, 8, k);
      if (dz > 0) {
        RationalVector vz(v.begin(), v.begin() + dz);
        if (!is_zero(vz)) {
          Rational gz = z.ball.gauge(vz);
          if (gz > 1)
            for (std::size_t i = 0; i < dz; ++i) v[i] /= gz;
        }
      }
      if (!is_zero(v)) gens.push_back(v);
    }
    BasedSpace y = make_space(labels, Polytope(dy, gens).pruned(), k);
    if (validate(y).valid) return y;
  }
  std::vector<RationalVector> gens = units(dy);
  for (const auto& g : z.ball.embed(head, dy).generators()) gens.push_back(g);
  return make_space(labels, Polytope(dy, gens), k);
}

struct Triple {
  BasedSpace z, x, y;
  BasedMorphism j, i;
};

Triple random_triple(Rng& rng) {
  Rational kx = kBounds[rng.below(kBounds.size())];
  std::size_t dx = static_cast<std::size_t>(rng.between(1, 3));
  BasedSpace x = random_space(rng, dx, 8, kx, "x");
  std::size_t dz = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(dx)));
  std::vector<std::size_t> idx(dx);
  std::iota(idx.begin(), idx.end(), 0);
  rng.shuffle(idx);
  idx.resize(dz);
  std::vector<Label> xl;
  for (auto i : idx) xl.push_back(x.labels[i]);
  BasedSpace zs = based_subspace(x, xl);
  BasedSpace z = make_space(make_labels("z", dz), zs.ball, kx);
  std::vector<std::pair<Label, Label>> jp, ip;
  for (std::size_t k = 0; k < dz; ++k) {
    jp.emplace_back(z.labels[k], xl[k]);
    ip.emplace_back(z.labels[k], "y" + std::to_string(k + 1));
  }
  Rational sz = dz > 0 ? suppression_constant_fast(z).norm : Rational(1);
  std::vector<Rational> ok;
  for (const auto& k : kBounds)
    if (k >= sz) ok.push_back(k);
  Rational ky = ok[rng.below(ok.size())];
  std::size_t extra = static_cast<std::size_t>(rng.between(dz == 0 ? 1 : 0, 3 - static_cast<std::int64_t>(dz)));
  BasedSpace y = random_extension(rng, z, extra, ky);
  return Triple{z, x, y, make_morphism(z, x, jp), make_morphism(z, y, ip)};
}

Json triple_json(const Triple& t) {
  return Json{{"z", to_json(t.z)}, {"x", to_json(t.x)}, {"y", to_json(t.y)},
              {"j", label_map_json(t.j)}, {"i", label_map_json(t.i)}};
}

using CaseFn = std::function<std::optional<std::string>(std::size_t, Json&)>;

// Runs `body` for each case; the first failure (message or exception) stops.
void run_cases(SuiteResult& r, std::size_t cases, const CaseFn& body) {
  r.cases = cases;
  for (std::size_t c = 0; c < cases; ++c) {
    Json witness;
    std::optional<std::string> fail;
    try {
      fail = body(c, witness);
    } catch (const std::exception& e) {
      fail = std::string("exception: ") + e.what();
    }
    if (fail) {
      r.pass = false;
      r.detail = "case " + std::to_string(c) + ": " + *fail;
      r.counterexample = witness;
      r.counterexample["case"] = c;
      return;
    }
  }
}

SuiteResult suite_amalgam(const SuiteConfig& cfg) {
  SuiteResult r;
  Rng rng(cfg.seed.value_or(1));
  run_cases(r, cfg.cases ? cfg.cases : 200, [&](std::size_t, Json& w) -> std::optional<std::string> {
    Triple t = random_triple(rng);
    w = triple_json(t);
    AmalgamResult a = amalgamate(t.z, t.x, t.y, t.j, t.i);
    r.checks += 4;
    if (!is_isometry(a.i_prime).isometry) return "i' is not an isometry";
    if (!is_isometry(a.j_prime).isometry) return "j' is not an isometry";
    if (compose(a.i_prime, t.j).map != compose(a.j_prime, t.i).map) return "square does not commute";
    Rational s = suppression_constant(a.w).norm;
    if (s > std::max(t.x.k_bound, t.y.k_bound)) return "suppression " + to_string(s) + " above the bound";
    return std::nullopt;
  });
  r.detail = r.pass ? std::to_string(r.cases) + " triples, legs isometric, square commutes, suppression bounded"
                    : r.detail;
  return r;
}

SuiteResult suite_quotient(const SuiteConfig& cfg) {
  SuiteResult r;
  Rng rng(cfg.seed.value_or(1)), pts(cfg.seed.value_or(1) + 1);
  run_cases(r, cfg.cases ? cfg.cases : 100, [&](std::size_t, Json& w) -> std::optional<std::string> {
    Triple t = random_triple(rng);
    w = triple_json(t);
    AmalgamResult a = amalgamate(t.z, t.x, t.y, t.j, t.i);
    std::vector<Label> sx, sy;
    for (const auto& [zl, xl] : t.j.label_map()) sx.push_back(xl);
    for (const auto& [zl, yl] : t.i.label_map()) sy.push_back(yl);
    for (int p = 0; p < 10; ++p) {
      RationalVector x = random_vector(pts, t.x.dim(), 8, 2);
      Rational lhs = a.w.ball.gauge(ubk::apply(a.i_prime, x));
      Rational rhs = quotient_norm_oracle(t.x, t.y, sx, sy, x);
      ++r.checks;
      if (lhs != rhs) {
        w["point"] = to_json(x);
        return "gauge_W " + to_string(lhs) + " differs from the LP value " + to_string(rhs);
      }
    }
    return std::nullopt;
  });
  if (r.pass) r.detail = std::to_string(r.checks) + " points agree with the quotient LP";
  return r;
}

SuiteResult suite_l1sum(const SuiteConfig& cfg) {
  SuiteResult r;
  Rng rng(cfg.seed.value_or(1));
  run_cases(r, cfg.cases ? cfg.cases : 50, [&](std::size_t, Json& w) -> std::optional<std::string> {
    BasedSpace x = random_space(rng, rng.between(1, 3), 8, kBounds[rng.below(3)], "a");
    BasedSpace y = random_space(rng, rng.between(1, 3), 8, kBounds[rng.below(3)], "b");
    w = Json{{"x", to_json(x)}, {"y", to_json(y)}};
    BasedSpace s = l1_sum(x, y);
    for (int p = 0; p < 20; ++p) {
      RationalVector a = random_vector(rng, x.dim(), 8, 3), b = random_vector(rng, y.dim(), 8, 3);
      RationalVector ab = a;
      ab.insert(ab.end(), b.begin(), b.end());
      ++r.checks;
      if (s.ball.gauge(ab) != x.ball.gauge(a) + y.ball.gauge(b)) {
        w["point"] = to_json(ab);
        return std::string("gauge of the sum is not additive");
      }
    }
    return std::nullopt;
  });
  if (r.pass) r.detail = std::to_string(r.checks) + " points over " + std::to_string(r.cases) + " pairs";
  return r;
}

Polytope skew_ball() {
  return Polytope(2, {RationalVector{Rational(5, 4), Rational(1, 2)}, unit_vector(2, 0), unit_vector(2, 1)});
}

SuiteResult suite_suppression(const SuiteConfig& cfg) {
  SuiteResult r;
  BasedSpace skew = make_space({"1", "2"}, skew_ball(),
                               Rational(5, 4));
  Rational s = suppression_constant(skew).norm;
  r.checks = 1;
  if (s != Rational(5, 4)) {
    r.pass = false;
    r.detail = "skew hexagon gives " + to_string(s);
    r.counterexample = to_json(skew);
    return r;
  }
  Rng rng(cfg.seed.value_or(1));
  run_cases(r, cfg.cases ? cfg.cases : 100, [&](std::size_t, Json& w) -> std::optional<std::string> {
    BasedSpace x = random_space(rng, rng.between(1, 4), 8, kBounds[rng.below(3)]);
    w = to_json(x);
    Rational fast = suppression_constant_fast(x).norm, brute = suppression_constant(x).norm;
    ++r.checks;
    if (fast != brute) return "fast " + to_string(fast) + " vs brute force " + to_string(brute);
    return std::nullopt;
  });
  if (r.pass) r.detail = "skew hexagon 5/4; fast = brute force on " + std::to_string(r.cases) + " spaces";
  return r;
}

// 1-based ball on the Lambda coordinates near b: shrunk and grown copies,
// closed under coordinate projections.
std::optional<Polytope> perturbed_section(Rng& rng, const Polytope& b, const Rational& eps) {
  std::size_t d = b.dim();
  for (int attempt = 0; attempt < 50; ++attempt) {
    Rational shrink = 1 / (1 + eps * make_rational(rng.between(0, 3), 8));
    Rational grow = 1 + eps * make_rational(rng.between(0, 3), 8);
    std::vector<RationalVector> pts = units(d);
    for (const auto& g : projection_closure(b.scaled(shrink)).generators()) pts.push_back(g);
    std::vector<RationalVector> big;
    for (const auto& g : b.generators()) {
      RationalVector h = scale(grow, g);
      if (std::all_of(h.begin(), h.end(), [](const Rational& x) { return abs(x) <= 1; }) && rng.below(2))
        big.push_back(h);
    }
    std::int64_t extra = rng.between(0, 2);
    for (int t = 0; t < 20 && extra > 0; ++t) {
      RationalVector q = random_vector(rng, d, 8, 1);
      if (is_zero(q)) continue;
      Rational gq = b.gauge(q);
      if (gq > 1 && gq < 1 + eps / 2) {
        big.push_back(q);
        --extra;
      }
    }
    if (!big.empty())
      for (const auto& g : projection_closure(Polytope(d, big)).generators()) pts.push_back(g);
    Polytope p = Polytope(d, pts).pruned();
    BasedSpace s = make_space(make_labels("l", d), p, 1);
    if (!validate(s).valid) continue;
    try {
      choose_delta(p, b, eps);
    } catch (const Error&) {
      continue;
    }
    return p;
  }
  return std::nullopt;
}

SuiteResult suite_extension(const SuiteConfig& cfg) {
  SuiteResult r;
  Rng rng(cfg.seed.value_or(1));
  const std::vector<Rational> eps{Rational(1, 4), Rational(1, 2), Rational(1)};
  std::size_t perturbed = 0;
  run_cases(r, cfg.cases ? cfg.cases : 100, [&](std::size_t, Json& w) -> std::optional<std::string> {
    Rational e = eps[rng.below(3)];
    BasedSpace a = random_space(rng, rng.between(1, 4), 8, 1, "a");
    // mostly |Lambda| >= 2, where the section can actually move
    std::int64_t d = static_cast<std::int64_t>(a.dim());
    std::int64_t size = d < 2 || rng.below(10) == 0 ? rng.between(0, std::min<std::int64_t>(d, 1)) : rng.between(2, d);
    std::vector<std::size_t> idx(a.dim());
    std::iota(idx.begin(), idx.end(), 0);
    rng.shuffle(idx);
    idx.resize(static_cast<std::size_t>(size));
    std::sort(idx.begin(), idx.end());
    std::vector<Label> lam;
    for (auto i : idx) lam.push_back(a.labels[i]);
    Polytope lb = idx.empty() ? Polytope() : a.ball.restrict_to(idx);
    Polytope lp = lb;
    if (!idx.empty()) {
      auto p = perturbed_section(rng, lb, e);
      if (p) lp = *p;
      if (!lp.same_body(lb)) ++perturbed;
    }
    w = Json{{"a", to_json(a)}, {"lambda", lam}, {"lambda_prime_ball", to_json(lp)}, {"epsilon", to_json(e)}};
    SandwichParams params = choose_delta(lp, lb, e);
    ExtensionResult x = extension_ball(a, lam, lp, params);
    const Polytope& nb = x.a_prime.ball;
    r.checks += 4;
    if (!idx.empty() && !nb.restrict_to(idx).same_body(lp)) return std::string("section differs from B'_Lambda");
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (nb.gauge(unit_vector(a.dim(), i)) != 1) return "basis vector " + a.labels[i] + " does not have norm 1";
    Rational s = suppression_constant(x.a_prime).norm;
    if (s != 1) return "suppression " + to_string(s);
    Rational lo = 1 / (1 + e), hi = 1 + e;
    for (const auto& v : a.ball.pruned().generators()) {
      Rational g = nb.gauge(v);
      if (!(lo < g && g < hi)) return "vertex " + to_string(v) + " of B_A has new norm " + to_string(g);
    }
    for (const auto& v : nb.pruned().generators()) {
      Rational g = a.ball.gauge(v);
      if (!(lo < g && g < hi)) return "vertex " + to_string(v) + " of B'_A has old norm " + to_string(g);
    }
    return std::nullopt;
  });
  if (r.pass) r.detail = std::to_string(r.cases) + " extensions (" + std::to_string(perturbed) +
                          " with a perturbed section), all four obligations certified";
  return r;
}

const ComplexityBound kUniversalBound{2, 3, 8};

SuiteResult suite_universality(const SuiteConfig& cfg) {
  SuiteResult r;
  std::uint64_t seed = cfg.seed.value_or(7);
  run_cases(r, 1, [&](std::size_t, Json& w) -> std::optional<std::string> {
    Chain c = build_generic_chain(kUniversalBound, 1, 0, seed);
    std::string bad = check_chain(c);
    ++r.checks;
    if (!bad.empty()) return "chain invariant: " + bad;
    auto spaces = enumerate_spaces(kUniversalBound, 1);
    BasedMorphism none = make_morphism(trivial_space(), c.top(), {});
    for (const auto& s : spaces) {
      auto u = check_universality(c, s, {}, none);
      ++r.checks;
      if (!u.extension) {
        w = to_json(s);
        return "no embedding: " + u.reason;
      }
    }
    r.detail = std::to_string(spaces.size()) + " spaces embed into stage " + std::to_string(c.top_index()) +
               " (dim " + std::to_string(c.top().dim()) + "); " + std::to_string(c.log.size()) +
               " logged steps satisfy g.f = inclusion";
    return std::nullopt;
  });
  return r;
}

struct BackForthRun {
  Chain x, y;
  BackForthOutcome out;
};

BackForthRun run_backforth(std::uint64_t seed) {
  BackForthRun b{build_generic_chain(kUniversalBound, 1, 0, seed),
                 build_generic_chain(kUniversalBound, 1, 0, seed + 6), {}};
  b.out = back_and_forth_exact(b.x, b.y, 3);
  return b;
}

SuiteResult suite_backforth(const SuiteConfig& cfg) {
  SuiteResult r;
  std::uint64_t seed = cfg.seed.value_or(7);
  run_cases(r, 1, [&](std::size_t, Json& w) -> std::optional<std::string> {
    BackForthRun b = run_backforth(seed);
    r.checks = 1;
    if (b.out.stuck) {
      w = to_json(*b.out.stuck);
      return "stuck: " + b.out.stuck->reason;
    }
    std::string bad = check_transcript(b.out.transcript, b.x, b.y);
    if (!bad.empty()) {
      w = to_json(b.out.transcript);
      return bad;
    }
    r.detail = "seeds " + std::to_string(seed) + "/" + std::to_string(seed + 6) +
               ": 3 rounds, round trips, coherence and isometry certificates hold";
    return std::nullopt;
  });
  return r;
}

SuiteResult suite_epsilon(const SuiteConfig&) {
  SuiteResult r;
  run_cases(r, 1, [&](std::size_t, Json& w) -> std::optional<std::string> {
    Rational k(5, 4);
    BasedSpace skew = make_space({"1", "2"}, skew_ball(), k);
    auto id = make_morphism(skew, l1_space({"1", "2"}), {{"1", "1"}, {"2", "2"}});
    auto d = distortion(id);
    r.checks += 3;
    if (d.lower != 1 || d.upper != Rational(7, 4))
      return "distortion [" + to_string(d.lower) + ", " + to_string(d.upper) + "], expected [1, 7/4]";
    if (!is_epsilon_isometry(d, 1)) return std::string("not accepted at epsilon 1");
    if (is_epsilon_isometry(d, Rational(3, 4))) return std::string("accepted at epsilon 3/4");

    Chain xs = trivial_chain(k);
    grow_chain(xs, skew, {}, "extension", std::nullopt, {});
    grow_chain(xs, skew, {{"1", "stage1:1"}}, "extension", std::nullopt, {});
    grow_chain(xs, skew, {{"1", "stage2:0"}}, "extension", std::nullopt, {});
    Chain u = trivial_chain(1);
    EmbedResult e = embed_any(xs, u, Rational(1, 2));
    Json dist = Json::array();
    for (const auto& di : e.distortion) dist.push_back(to_json(di));
    w = Json{{"distortions", dist}};
    for (const auto& di : e.distortion) {
      ++r.checks;
      if (!(di.lower > Rational(2, 3) && di.upper < Rational(3, 2)))
        return "stage distortion [" + to_string(di.lower) + ", " + to_string(di.upper) + "] outside (2/3, 3/2)";
    }
    std::string mx = e.distortion.empty() ? "" : to_string(e.distortion.back().upper);
    r.detail = "id: skew -> l1 has distortion [1, 7/4], strict at 3/4; 3 renormed stages embed with upper " + mx;
    return std::nullopt;
  });
  return r;
}

SuiteResult suite_renorm(const SuiteConfig& cfg) {
  SuiteResult r;
  Rng rng(cfg.seed.value_or(1));
  run_cases(r, cfg.cases ? cfg.cases : 100, [&](std::size_t, Json& w) -> std::optional<std::string> {
    Rational k = kBounds[rng.below(3)];
    BasedSpace x = random_space(rng, rng.between(1, 3), 8, k);
    w = to_json(x);
    BasedSpace y = renorm_to_one_based(x);
    r.checks += 1;
    Rational s = suppression_constant(y).norm;
    if (s != 1) return "renormed suppression " + to_string(s);
    for (int p = 0; p < 10; ++p) {
      RationalVector v = random_vector(rng, x.dim(), 8, 2);
      Rational a = x.ball.gauge(v), b = y.ball.gauge(v);
      ++r.checks;
      if (!(a <= b && b <= k * a)) {
        w["point"] = to_json(v);
        return "norms " + to_string(a) + " -> " + to_string(b);
      }
    }
    return std::nullopt;
  });
  if (r.pass) r.detail = std::to_string(r.cases) + " spaces renormed to suppression 1 within factor K";
  return r;
}

SuiteResult suite_determinism(const SuiteConfig& cfg) {
  SuiteResult r;
  std::uint64_t seed = cfg.seed.value_or(7);
  run_cases(r, 1, [&](std::size_t, Json&) -> std::optional<std::string> {
    BackForthRun a = run_backforth(seed), b = run_backforth(seed);
    auto text = [](const BackForthRun& x) {
      return std::vector<std::string>{dump(to_json(x.x)), dump(to_json(x.y)), dump(to_json(x.out.transcript))};
    };
    auto ta = text(a), tb = text(b);
    r.checks = 3;
    const char* names[] = {"X chain", "Y chain", "transcript"};
    for (int i = 0; i < 3; ++i)
      if (ta[i] != tb[i]) return std::string(names[i]) + " differs between runs";
    Chain again = build_generic_chain(kUniversalBound, 1, 0, seed);
    Chain first = build_generic_chain(kUniversalBound, 1, 0, seed);
    ++r.checks;
    if (dump(to_json(again)) != dump(to_json(first))) return std::string("universal chain differs between runs");
    r.detail = "chains and transcript byte-identical (" + std::to_string(ta[0].size() + ta[1].size() + ta[2].size()) +
               " bytes)";
    return std::nullopt;
  });
  return r;
}

const std::map<std::string, std::function<SuiteResult(const SuiteConfig&)>>& registry() {
  static const std::map<std::string, std::function<SuiteResult(const SuiteConfig&)>> m{
      {"amalgam", suite_amalgam},         {"quotient", suite_quotient},   {"l1sum", suite_l1sum},
      {"suppression", suite_suppression}, {"extension", suite_extension}, {"universality", suite_universality},
      {"backforth", suite_backforth},     {"epsilon", suite_epsilon},     {"renorm", suite_renorm},
      {"determinism", suite_determinism}};
  return m;
}

}  // namespace

BasedSpace random_space(Rng& rng, std::size_t dim, std::size_t max_den, const Rational& k, const std::string& prefix) {
  auto labels = make_labels(prefix, dim);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<RationalVector> gens = units(dim);
    std::int64_t m = rng.between(dim > 1 ? 1 : 0, 3);
    for (std::int64_t t = 0; t < m; ++t) {
      RationalVector v = random_vector(rng, dim, max_den, k);
      Rational l1 = 0;
      for (const auto& x : v) l1 += abs(x);
      if (l1 > 1) gens.push_back(v);
    }
    BasedSpace s = make_space(labels, Polytope(dim, gens).pruned(), k);
    if (validate(s).valid) return s;
  }
  return l1_space(labels, k);
}

std::vector<std::string> suite_names() {
  return {"amalgam", "quotient", "l1sum", "suppression", "extension",
          "universality", "backforth", "epsilon", "renorm", "determinism"};
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& config) {
  auto it = registry().find(name);
  if (it == registry().end()) throw Error(ErrorKind::MalformedInput, "unknown suite '" + name + "'");
  auto t0 = std::chrono::steady_clock::now();
  SuiteResult r = it->second(config);
  r.name = name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace ubk
