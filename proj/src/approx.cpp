#include "ubk/approx.hpp"

#include <algorithm>
#include <set>

namespace ubk {

namespace {

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// Least-denominator rational in (lo, hi); hi == nullopt means +infinity.
Rational simplest(const Rational& lo, const std::optional<Rational>& hi) {
  Integer fl = floor_of(lo);
  Rational next(fl + 1);
  if (!hi || next < *hi) return next;
  Rational base(fl);
  std::optional<Rational> upper;
  if (lo != base) upper = 1 / (lo - base);
  Rational y = simplest(1 / (*hi - base), upper);
  return base + 1 / y;
}

Rational max_gauge(const std::vector<RationalVector>& points, const Polytope& ball) {
  Rational best = 0;
  for (const auto& p : points) best = std::max(best, ball.gauge(p));
  return best;
}

Polytope section(const BasedSpace& a, const std::vector<std::size_t>& idx, const PolytopeLimits& limits) {
  if (idx.empty()) return Polytope();
  return a.ball.restrict_to(idx, limits);
}

}  // namespace

SandwichParams dyadic_params(const Rational& t, const Rational& epsilon) {
  if (t < 0 || !(t < epsilon)) throw Error(ErrorKind::NotEpsilonPerturbed, "need 0 <= t < epsilon");
  Integer pow = 1;
  while (true) {
    Integer m = floor_of(t * Rational(pow));
    Rational hi = make_rational(m + 2, pow);
    if (hi < epsilon) return SandwichParams{make_rational(m + 1, pow), hi, epsilon};
    pow *= 2;
  }
}

SandwichParams choose_delta(const Polytope& lambda_prime_ball, const Polytope& lambda_ball, const Rational& epsilon) {
  if (epsilon <= 0) throw Error(ErrorKind::MalformedInput, "epsilon must be positive");
  if (lambda_prime_ball.dim() != lambda_ball.dim())
    throw Error(ErrorKind::MalformedInput, "balls live in different dimensions");
  Rational r = 1;
  if (lambda_ball.dim() > 0) {
    r = std::max(max_gauge(lambda_ball.generators(), lambda_prime_ball),
                 max_gauge(lambda_prime_ball.generators(), lambda_ball));
  }
  if (r >= 1 + epsilon)
    throw Error(ErrorKind::NotEpsilonPerturbed,
                "vertex ratio " + to_string(r) + " is not below 1 + " + to_string(epsilon));
  return dyadic_params(r - 1, epsilon);
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo < 0 || !(lo < hi)) throw Error(ErrorKind::MalformedInput, "need 0 <= lo < hi");
  return simplest(lo, hi);
}

Polytope projection_closure(const Polytope& ball, std::size_t ceiling) {
  std::vector<Block> blocks;
  for (const auto& b : ball.blocks()) {
    std::size_t d = b.coords.size();
    std::set<RationalVector, bool (*)(const RationalVector&, const RationalVector&)> seen(
        [](const RationalVector& x, const RationalVector& y) { return lex_compare(x, y) < 0; });
    std::vector<RationalVector> gens;
    for (const auto& g : b.body->generators()) {
      std::vector<std::size_t> supp;
      for (std::size_t i = 0; i < d; ++i)
        if (g[i] != 0) supp.push_back(i);
      if (supp.size() > ceiling)
        throw Error(ErrorKind::CeilingExceeded, "projection closure over " + std::to_string(supp.size()) +
                                                    " coordinates");
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << supp.size()); ++mask) {
        RationalVector p = zeros(d);
        for (std::size_t k = 0; k < supp.size(); ++k)
          if ((mask >> k) & 1) p[supp[k]] = g[supp[k]];
        p = sign_normalized(p);
        if (seen.insert(p).second) gens.push_back(std::move(p));
      }
    }
    blocks.push_back({b.coords, std::make_shared<const BlockBody>(d, std::move(gens))});
  }
  return Polytope::from_blocks(ball.dim(), std::move(blocks)).pruned();
}

Sandwich rational_sandwich(const Polytope& ball, const SandwichParams& params, std::size_t denominator_bound) {
  if (!(0 < params.delta && params.delta < params.delta_prime))
    throw Error(ErrorKind::MalformedInput, "need 0 < delta < delta'");
  Rational lo = 1 / (1 + params.delta_prime);
  Rational hi = 1 / (1 + params.delta);
  Rational s = simplest_between(lo, hi);
  if (s.get_den() > denominator_bound)
    throw Error(ErrorKind::WidenBound, "simplest scale in (" + to_string(lo) + ", " + to_string(hi) +
                                           ") is " + to_string(s) + ", above the denominator bound " +
                                           std::to_string(denominator_bound));
  Polytope p = projection_closure(ball.scaled(s));
  for (const auto& v : ball.generators())
    if (!(p.gauge(v) < 1 + params.delta_prime))
      throw Error(ErrorKind::ConstructionInvariantViolated, "sandwich misses " + to_string(v) + " / (1+delta')");
  for (const auto& w : p.generators())
    if (!(ball.gauge(w) < hi))
      throw Error(ErrorKind::ConstructionInvariantViolated,
                  "sandwich generator " + to_string(w) + " not inside B/(1+delta); is the ball 1-based?");
  return Sandwich{std::move(p), s};
}

ExtensionResult extension_ball(const BasedSpace& a, const std::vector<Label>& lambda_labels,
                               const Polytope& lambda_prime_ball, const SandwichParams& params,
                               std::size_t denominator_bound, const PolytopeLimits& limits) {
  std::size_t n = a.dim();
  auto idx = a.indices_of(lambda_labels);
  if (lambda_prime_ball.dim() != idx.size())
    throw Error(ErrorKind::MalformedInput, "B'_Lambda does not match the Lambda labels");
  SpaceLimits sl;
  sl.polytope = limits;
  {
    BasedSpace one{a.labels, a.ball, Rational(1)};
    if (!validate(one, sl).valid) throw Error(ErrorKind::KMismatch, "extension needs a 1-based space");
  }
  if (!(0 < params.delta && params.delta < params.delta_prime && params.delta_prime < params.epsilon))
    throw Error(ErrorKind::MalformedInput, "need 0 < delta < delta' < epsilon");
  Polytope lambda_ball = section(a, idx, limits);
  if (!idx.empty()) {
    Rational r = std::max(max_gauge(lambda_ball.generators(), lambda_prime_ball),
                          max_gauge(lambda_prime_ball.generators(), lambda_ball));
    if (r > 1 + params.delta)
      throw Error(ErrorKind::NotEpsilonPerturbed, "B'_Lambda is not within 1 + delta of B_Lambda");
  }

  Sandwich sw = rational_sandwich(a.ball, params, denominator_bound);
  std::vector<RationalVector> units;
  for (std::size_t i = 0; i < n; ++i) units.push_back(unit_vector(n, i));
  Polytope ball = hull_union(Polytope(n, units), sw.p);
  if (!idx.empty()) ball = hull_union(ball, lambda_prime_ball.embed(idx, n));
  ball = ball.pruned();
  BasedSpace a_prime = make_space(a.labels, ball, Rational(1));

  ExtensionResult res{a_prime, lambda_prime_ball, sw.p, sw.scale, params, {}};
  ExtensionReport& rep = res.report;
  rep.variant = "conv(B'_Lambda, basis, projection-closed P)";

  // (i) pr_Lambda maps every generator into B'_Lambda, hence
  // B'_A cap Lambda is inside pr_Lambda(B'_A) which is inside B'_Lambda.
  rep.section_equal = true;
  for (const auto& g : ball.generators()) {
    RationalVector p(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) p[k] = g[idx[k]];
    if (is_zero(p)) continue;
    if (!lambda_prime_ball.contains(p)) {
      rep.section_equal = false;
      throw Error(ErrorKind::ConstructionInvariantViolated,
                  "generator " + to_string(g) + " projects outside B'_Lambda");
    }
  }

  // (ii) e_b is a generator, and e*_b has dual norm <= 1.
  rep.basis_norms_one = true;
  for (std::size_t i = 0; i < n; ++i) {
    Rational dn = ball.dual_gauge(unit_vector(n, i));
    if (dn > 1 || !ball.contains(unit_vector(n, i))) {
      rep.basis_norms_one = false;
      throw Error(ErrorKind::ConstructionInvariantViolated, "basis vector '" + a.labels[i] + "' has norm below 1");
    }
  }

  // (iii)
  rep.suppression = n == 0 ? Rational(0) : suppression_constant_fast(a_prime, sl).norm;
  if (rep.suppression > 1)
    throw Error(ErrorKind::ConstructionInvariantViolated, "suppression " + to_string(rep.suppression));

  // (iv)
  rep.upper_ratio = max_gauge(a.ball.generators(), ball);
  rep.lower_ratio = max_gauge(ball.generators(), a.ball);
  if (!(rep.upper_ratio < 1 + params.epsilon) || !(rep.lower_ratio < 1 + params.epsilon))
    throw Error(ErrorKind::ConstructionInvariantViolated,
                "vertex ratios " + to_string(rep.upper_ratio) + ", " + to_string(rep.lower_ratio) +
                    " not below 1 + epsilon");
  return res;
}

Polytope pullback_norm(const BasedMorphism& f, const PolytopeLimits& limits) {
  if (!f.injective()) throw Error(ErrorKind::NotInjective, "pullback along a non-injective map");
  if (f.map.empty()) return Polytope();
  return f.codomain.ball.restrict_to(f.map, limits);
}

EpsilonExtension extend_epsilon_isometry(const BasedSpace& a, const std::vector<Label>& lambda_labels,
                                         const BasedMorphism& f, Chain& chain, const Rational& epsilon,
                                         const PolytopeLimits& limits) {
  if (f.domain.labels != lambda_labels)
    throw Error(ErrorKind::SpaceMismatch, "f must start at the Lambda labels");
  const BasedSpace& top = chain.top();
  LabelPairs shared, fpairs;
  for (std::size_t i = 0; i < f.map.size(); ++i) {
    const Label& u = f.codomain.labels[f.map[i]];
    if (!top.find(u)) throw Error(ErrorKind::SpaceMismatch, "f lands outside the chain top ('" + u + "')");
    shared.emplace_back(lambda_labels[i], u);
    fpairs.emplace_back(lambda_labels[i], u);
  }
  auto idx = a.indices_of(lambda_labels);
  Polytope lambda_ball = section(a, idx, limits);
  Polytope lambda_prime = pullback_norm(f, limits);

  EpsilonExtension out;
  BasedSpace target = a;
  if (lambda_prime.same_body(lambda_ball)) {
    out.exact = true;
  } else {
    SandwichParams params = choose_delta(lambda_prime, lambda_ball, epsilon);
    ExtensionResult ext = extension_ball(a, lambda_labels, lambda_prime, params, 1024, limits);
    target = ext.a_prime;
    out.params = params;
  }
  AmalgamOptions opts;
  opts.limits = limits;
  GrowResult g = grow_chain(chain, target, shared, "extension", std::nullopt, fpairs, opts);
  out.stage = g.stage;
  out.morphism = BasedMorphism{a, chain.top(), g.g.map};
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (chain.top().labels[out.morphism.map[idx[i]]] != fpairs[i].second)
      throw Error(ErrorKind::ConstructionInvariantViolated, "extension disagrees with f on Lambda");
  out.distortion = distortion(out.morphism, limits);
  if (!is_epsilon_isometry(out.distortion, epsilon))
    throw Error(ErrorKind::ConstructionInvariantViolated,
                "extension distortion [" + to_string(out.distortion.lower) + ", " +
                    to_string(out.distortion.upper) + "] is not within epsilon");
  return out;
}

}  // namespace ubk
