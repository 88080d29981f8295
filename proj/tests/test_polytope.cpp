#include <gtest/gtest.h>

#include <random>

#include "ubk/polytope.hpp"

using namespace ubk;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

Polytope l1(std::size_t n) {
  std::vector<RationalVector> g;
  for (std::size_t i = 0; i < n; ++i) g.push_back(unit_vector(n, i));
  return Polytope(n, g);
}

Polytope skew() { return Polytope(2, {{q(5, 4), q(1, 2)}, {1, 0}, {0, 1}}); }

RationalVector random_point(std::mt19937_64& rng, std::size_t n) {
  RationalVector v(n);
  for (auto& x : v) x = make_rational(static_cast<long>(rng() % 17) - 8, static_cast<long>(rng() % 7) + 1);
  return v;
}

}  // namespace

TEST(Polytope, GaugeExamples) {
  EXPECT_EQ(l1(2).gauge(RationalVector{q(1, 2), q(1, 2)}), 1);
  EXPECT_EQ(skew().gauge(RationalVector{0, 0}), 0);
  EXPECT_EQ(skew().gauge(RationalVector{1, 0}), 1);
  EXPECT_EQ(skew().gauge_by_facets(RationalVector{1, 0}), 1);
  EXPECT_EQ(skew().gauge(RationalVector{q(5, 4), q(1, 2)}), 1);
}

TEST(Polytope, Contains) {
  EXPECT_TRUE(l1(2).contains(RationalVector{1, 0}));
  EXPECT_FALSE(l1(2).contains(RationalVector{1, q(1, 1000000)}));
  RationalVector p{q(9, 8), q(2, 5)};
  EXPECT_EQ(skew().contains(p), skew().gauge_by_facets(p) <= 1);
}

TEST(Polytope, DegenerateBall) {
  Polytope flat(2, {{1, 1}});
  EXPECT_FALSE(flat.full_dimensional());
  EXPECT_THROW(flat.gauge(RationalVector{1, 0}), Error);
}

TEST(Polytope, Facets) {
  EXPECT_EQ(l1(2).facets().size(), 2u);  // one entry per +/- pair
  EXPECT_EQ(skew().facets().size(), 3u);
  EXPECT_EQ(l1(3).facets().size(), 4u);
  for (const auto& f : l1(3).facets()) {
    EXPECT_EQ(f.offset, 1);
    for (const auto& x : f.normal) EXPECT_EQ(abs(x), 1);
  }
}

TEST(Polytope, FacetCeiling) {
  PolytopeLimits lim;
  lim.facet_dim_ceiling = 2;
  EXPECT_THROW(Polytope(3, {{1, 1, 0}, {0, 1, 1}, {1, 0, 0}}).facets(lim), Error);
}

TEST(Polytope, LinearImage) {
  auto id = linear_image(skew(), RationalMatrix::identity(2));
  EXPECT_EQ(id.generators(), skew().generators());
  auto proj = linear_image(l1(2), RationalMatrix::from_rows({{1, 0}}));
  EXPECT_TRUE(proj.full_dimensional());
  EXPECT_EQ(proj.gauge(RationalVector{1}), 1);
}

TEST(Polytope, HullUnion) {
  Polytope linf(2, {{1, 1}, {1, -1}});
  EXPECT_TRUE(hull_union(l1(2), linf).same_body(linf));
  EXPECT_TRUE(hull_union(skew(), skew()).same_body(skew()));
}

TEST(Polytope, Restrict) {
  EXPECT_TRUE(l1(3).restrict_to({0, 1}).same_body(l1(2)));
  auto seg = skew().restrict_to({0});
  EXPECT_TRUE(seg.same_body(l1(1)));
  EXPECT_FALSE(seg.contains(RationalVector{q(5, 4)}));
  EXPECT_TRUE(skew().restrict_to({0, 1}).same_body(skew()));
  EXPECT_EQ(skew().restrict_to({}).dim(), 0u);
}

TEST(Polytope, Prune) {
  Polytope p(2, {{1, 0}, {0, 1}, {q(1, 2), q(1, 2)}});
  EXPECT_EQ(p.pruned().generator_count(), 2u);
  EXPECT_EQ(skew().pruned().generator_count(), 3u);
}

TEST(Polytope, DualGauge) {
  EXPECT_EQ(l1(2).dual_gauge({1, 1}), 1);
  EXPECT_EQ(skew().dual_gauge({0, 0}), 0);
  EXPECT_EQ(skew().dual_gauge({1, 0}), q(5, 4));
}

TEST(Polytope, BlocksAreIndependent) {
  Polytope p(4, {{1, 0, 0, 0}, {0, 0, 1, 1}, {0, 1, 0, 0}, {0, 0, 1, -1}, {1, 1, 0, 0}});
  EXPECT_EQ(p.blocks().size(), 2u);
  RationalVector x{q(1, 3), q(-1, 2), 2, 1};
  EXPECT_EQ(p.gauge(x), p.gauge_by_facets(x));
  EXPECT_EQ(p.gauge(x), p.gauge(to_sparse(x)));
}

TEST(Polytope, RandomLaws) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    std::vector<RationalVector> gens;
    for (std::size_t i = 0; i < 3; ++i) gens.push_back(unit_vector(3, i));
    for (int k = 0; k < 3; ++k) gens.push_back(random_point(rng, 3));
    Polytope b(3, gens);
    auto x = random_point(rng, 3), y = random_point(rng, 3);
    Rational s = make_rational(static_cast<long>(rng() % 9) - 4, 3);
    EXPECT_EQ(b.gauge(scale(s, x)), abs(s) * b.gauge(x));
    EXPECT_LE(b.gauge(add(x, y)), b.gauge(x) + b.gauge(y));
    EXPECT_EQ(b.gauge(x), b.gauge_by_facets(x));
    Polytope pr = b.pruned();
    EXPECT_TRUE(pr.same_body(b));
    RationalVector fn;
    Rational g = b.gauge_certified(x, fn);
    EXPECT_EQ(dot(fn, x), g);
    EXPECT_LE(b.dual_gauge(fn), 1);
  }
}
