#include <gtest/gtest.h>

#include "ubk/fraisse.hpp"
#include "fixtures.hpp"

using namespace ubk;
using fx::q;

TEST(EnumerateSpaces, OneDimensional) {
  auto s = enumerate_spaces({1, 1, 2}, 1);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_TRUE(s[0].ball.same_body(Polytope(1, {{1}})));
  EXPECT_EQ(s[0].labels, (std::vector<Label>{"x1"}));
}

TEST(EnumerateSpaces, TwoDimensionalSmall) {
  auto s = enumerate_spaces({2, 2, 4}, 1);
  auto has = [&](const Polytope& p) {
    return std::any_of(s.begin(), s.end(), [&](const BasedSpace& x) { return x.ball.same_body(p); });
  };
  EXPECT_TRUE(has(l1_space({"a", "b"}).ball));
  EXPECT_TRUE(has(fx::diamond({"a", "b"}).ball));
  for (const auto& x : s) EXPECT_TRUE(validate(x).valid);
  std::set<CanonicalForm> forms;
  for (const auto& x : s) forms.insert(canonical_form(x));
  EXPECT_EQ(forms.size(), s.size());
  EXPECT_EQ(s.size(), 3u);  // [-1,1], l1, square
}

TEST(EnumerateSpaces, Deterministic) {
  auto a = enumerate_spaces({2, 3, 8}, 1);
  auto b = enumerate_spaces({2, 3, 8}, 1);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].ball, b[i].ball);
  for (const auto& x : a) {
    EXPECT_TRUE(validate(x).valid);
    EXPECT_LE(2 * x.ball.pruned().generator_count(), 8u);
  }
}

TEST(EnumerateExtensions, Examples) {
  ComplexityBound b{2, 2, 4};
  auto spaces = enumerate_spaces(b, 1);
  auto from_zero = enumerate_extensions(trivial_space(), 0, spaces);
  EXPECT_EQ(from_zero.size(), spaces.size());
  auto line = l1_space({"u"});
  auto from_line = enumerate_extensions(line, 1, spaces);
  // [-1,1] itself, one orbit for the symmetric l1 and square balls
  EXPECT_EQ(from_line.size(), 3u);
  for (const auto& r : from_line) EXPECT_TRUE(is_isometry(r.embedding).isometry);
  auto self = enumerate_extensions(spaces[1], 2, spaces);
  EXPECT_TRUE(std::any_of(self.begin(), self.end(), [](const ExtensionRequest& r) {
    return r.target.ball == r.embedding.domain.ball && r.embedding.map == std::vector<std::size_t>{0, 1};
  }));
}

TEST(FraisseStep, Examples) {
  Chain c = trivial_chain();
  auto y = l1_space({"x1"});
  auto g = fraisse_step(c, {0, y, make_morphism(trivial_space(), y, {})});
  EXPECT_EQ(c.stages.size(), 2u);
  EXPECT_TRUE(c.top().ball.same_body(y.ball));
  EXPECT_TRUE(is_isometry(g.g).isometry);

  auto l1 = l1_space({"x1", "x2"});
  auto f = make_morphism(c.stages[1], l1, {{"stage1:0", "x1"}});
  auto g2 = fraisse_step(c, {1, l1, f});
  EXPECT_TRUE(c.top().ball.same_body(l1.ball));
  auto gf = compose(g2.g, f);
  EXPECT_TRUE(same_label_map(gf, c.inclusion(1, 2)));

  // already present: body unchanged
  auto again = make_morphism(c.stages[2], l1, {{"stage1:0", "x1"}, {"stage2:0", "x2"}});
  fraisse_step(c, {2, l1, again});
  EXPECT_TRUE(c.top().ball.same_body(c.stages[2].ball));
  EXPECT_EQ(check_chain(c), "");
}

TEST(BuildChain, StepsAndSeeds) {
  ComplexityBound b{2, 2, 4};
  auto one = build_generic_chain(b, 1, 1, 7);
  EXPECT_EQ(one.stages.size(), 2u);
  auto c7 = build_generic_chain(b, 1, 0, 7);
  auto c13 = build_generic_chain(b, 1, 0, 13);
  EXPECT_EQ(check_chain(c7), "");
  bool differ = c7.top().labels.size() != c13.top().labels.size() || !(c7.top().ball == c13.top().ball);
  EXPECT_TRUE(differ);
  for (const auto* c : {&c7, &c13})
    for (const auto& x : enumerate_spaces(b, 1)) {
      auto r = check_universality(*c, x, {}, make_morphism(trivial_space(), c->top(), {}));
      EXPECT_TRUE(r.extension.has_value()) << r.reason;
    }
}

TEST(Universality, Examples) {
  ComplexityBound b{2, 2, 4};
  auto c = build_generic_chain(b, 1, 0, 3);
  // A = square, Lambda = first coordinate mapped to an arbitrary stage-1 label
  auto sq = fx::diamond({"p", "q"});
  auto lam = based_subspace(sq, {"p"});
  auto f = make_morphism(lam, c.stages[1], {{"p", c.stages[1].labels[0]}});
  auto r = check_universality(c, sq, {"p"}, f);
  ASSERT_TRUE(r.extension.has_value()) << r.reason;
  EXPECT_EQ(r.extension->label_map()[0].second, c.stages[1].labels[0]);
  EXPECT_TRUE(is_isometry(*r.extension).isometry);

  // outside the bound: the skew hexagon cannot sit in a short chain
  Chain shortc = trivial_chain(q(5, 4));
  fraisse_step(shortc, {0, l1_space({"a", "b"}, q(5, 4)), make_morphism(trivial_space(), l1_space({"a", "b"}), {})});
  auto miss = check_universality(shortc, fx::skew(), {}, make_morphism(trivial_space(), shortc.top(), {}));
  EXPECT_FALSE(miss.extension.has_value());
  EXPECT_TRUE(miss.exhausted);
}
